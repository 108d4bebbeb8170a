// Acceptance gate: one line per criterion, exit code = number of failures.
#include "cutseq/farey.hpp"
#include "cutseq/measures.hpp"
#include "cutseq/section.hpp"
#include "cutseq/svg.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace cutseq;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("criterion %2d  %-58s %s", idx, name.c_str(), ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::printf("  [%s]", detail.c_str());
    std::printf("\n");
    std::fflush(stdout);
    if (!ok) ++failures;
}

DigitWord random_word(std::mt19937_64& rng, int max_pre, int max_period, long max_digit) {
    std::uniform_int_distribution<int> prelen(0, max_pre), perlen(1, max_period);
    std::uniform_int_distribution<long> dig(1, max_digit);
    DigitWord w;
    int np = prelen(rng), nq = perlen(rng);
    for (int i = 0; i < np; ++i) w.pre.emplace_back(dig(rng));
    for (int i = 0; i < nq; ++i) w.period.emplace_back(dig(rng));
    return w;
}

// 1. Cutting-sequence runs equal the digit expansions of both feet.
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0x5eed0001);
    bool ok = true;
    std::string why;
    auto check = [&](const std::vector<Letter>& ls, const Real& val, const char* dir) {
        RunSequence rs = runs(ls);
        CFExpansion e = expand(val);
        BigInt total = 0;
        for (const BigInt& r : rs.runs) total += r;
        if (total != 40) {
            ok = false;
            why = std::string(dir) + ": runs do not cover the letters";
            return;
        }
        for (size_t i = 0; i < rs.runs.size(); ++i) {
            std::optional<BigInt> d = e.digit(i);
            if (!d) {
                ok = false;
                why = std::string(dir) + ": expansion ended early";
                return;
            }
            bool last = i + 1 == rs.runs.size();
            if (last ? rs.runs[i] > *d : rs.runs[i] != *d) {
                ok = false;
                why = std::string(dir) + ": run does not match digit " + std::to_string(i);
                return;
            }
        }
    };
    for (int trial = 0; trial < 500 && ok; ++trial) {
        Real fut = evaluate_word(random_word(rng, 3, 6, 9));
        Real inv = evaluate_word(random_word(rng, 3, 6, 9));
        Real pst = real_neg(real_recip(inv));
        Geodesic g = geodesic_through(BoundaryPoint(pst), BoundaryPoint(fut));
        if (!is_in_A(g)) {
            ok = false;
            why = "generated geodesic left the coding set";
            break;
        }
        std::vector<Letter> fw = cutting_sequence(g, 40);
        if (runs(fw).first != Letter::L) {
            ok = false;
            why = "forward sequence does not start with L";
            break;
        }
        check(fw, fut, "forward");
        if (ok) check(cutting_sequence_backward(g, 40), inv, "backward");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs >= 10.0) {
        ok = false;
        why = "too slow";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "500 geodesics x 40 letters, %.2f s", secs);
    report(1, "cutting-sequence runs match both feet expansions", ok, ok ? buf : why);
}

// 2 and 3 share one family of periodic symbol elements.
void criterion2_3() {
    std::mt19937_64 rng(0x5eed0203);
    std::uniform_int_distribution<int> len(1, 4), par(0, 1);
    std::uniform_int_distribution<long> dig(1, 4);
    bool ok2 = true, ok3 = true;
    std::string why2, why3;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<BigInt> w;
        int n = len(rng);
        for (int i = 0; i < n; ++i) w.emplace_back(dig(rng));
        SigmaElement s = periodic_sigma(w);
        if (par(rng)) s = make_sigma(s.future, s.past, 1);
        SectionPoint x = decode(s);
        for (int it = 0; it < 30; ++it) {
            Real before = factor_to_unit_interval(s);
            auto [nx, st] = first_return(x);
            SigmaElement s2 = shift(s);
            SectionPoint y = decode(s2);
            if (ok2 && !(nx.representative.past == y.representative.past &&
                         nx.representative.future == y.representative.future &&
                         nx.parity == y.parity)) {
                ok2 = false;
                why2 = "return and shift disagree on " + s.str();
            }
            if (ok3 && !real_eq(factor_to_unit_interval(s2), gauss_map(before))) {
                ok3 = false;
                why3 = "factor fails to intertwine on " + s.str();
            }
            x = nx;
            s = s2;
            if (!ok2 && !ok3) break;
        }
        if (!ok2 && !ok3) break;
    }
    report(2, "first return commutes with the shift (200 x 30, exact)", ok2,
           ok2 ? "6000 steps" : why2);
    report(3, "interval factor intertwines the Gauss map (exact)", ok3, ok3 ? "6000 steps" : why3);
}

// 4. Summed return times over a period equal the closed length.
void criterion4() {
    bool ok = true;
    std::string why;
    std::vector<std::vector<BigInt>> words;
    for (long a = 1; a <= 3; ++a)
        for (long b = 1; b <= 3; ++b) {
            words.push_back({BigInt(a), BigInt(b)});
            for (long c = 1; c <= 3; ++c)
                for (long d = 1; d <= 3; ++d)
                    words.push_back({BigInt(a), BigInt(b), BigInt(c), BigInt(d)});
        }
    double max_dev = 0;
    for (const auto& w : words) {
        SectionPoint x = decode(periodic_sigma(w));
        double total = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            auto [nx, st] = first_return(x);
            total += st.time;
            x = nx;
        }
        double dev = std::abs(total - closed_length_eigenvalue(w));
        max_dev = std::max(max_dev, dev);
        if (dev >= 1e-9) {
            ok = false;
            why = "word " + word_str(w);
            break;
        }
    }
    auto spot = [&](std::vector<long> wl, double want) {
        std::vector<BigInt> w;
        for (long d : wl) w.emplace_back(d);
        double got = closed_geodesic_from_period(w).length;
        if (std::abs(got - want) >= 1e-9) {
            ok = false;
            why = "spot value " + word_str(w);
        }
    };
    spot({1, 1}, 1.9248473002384139);
    spot({2, 1}, 2.6339157938496336);
    spot({2, 2}, 3.5254943480781722);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "90 words, max dev %.2e", max_dev);
    report(4, "periodic return times sum to the closed length (1e-9)", ok, ok ? buf : why);
}

// 5. Truncated Gauss transfer reproduces its invariant density.
void criterion5() {
    DensityGrid d = make_density_grid(unit_grid(999, false), gauss_density, DensityTag::gauss);
    double sup = sup_diff(transfer_gauss(d, 10000), d);
    bool ok = sup < 2e-4;
    std::string why;
    std::mt19937_64 rng(0x5eed0005);
    std::uniform_int_distribution<long> num(0, 401), dep(1, 60);
    for (int i = 0; i < 60 && ok; ++i) {
        Rat x = make_rat(num(rng), 401);
        long n = dep(rng);
        if (!(gauss_telescope_partial(x, n) == gauss_telescope_closed(x, n))) {
            ok = false;
            why = "telescope mismatch";
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "sup %.3e on 1000 points", sup);
    report(5, "Gauss transfer matches its density within 2e-4 at depth 1e4", ok, ok ? buf : why);
}

// 6. Farey transfer fixes 1/x with zero error at rational points.
void criterion6() {
    size_t violations = 0;
    for (long k = 1; k <= 1000; ++k) {
        Rat y = make_rat(k, 1000);
        if (!(farey_transfer_reciprocal(y) == Rat(1) / y)) ++violations;
    }
    report(6, "Farey transfer fixes 1/x exactly on 1000 rationals", violations == 0,
           violations == 0 ? "error exactly 0" : std::to_string(violations) + " violations");
}

// 7. Sampled leading-digit frequency against the invariant law.
void criterion7() {
    ExperimentReport r = digit_statistics(100000, 20260817);
    double obs = r.stats["digits"][0]["observed"].get<double>();
    double expd = r.stats["digits"][0]["expected"].get<double>();
    double dev = std::abs(obs - expd);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "freq %.5f vs %.5f, dev %.5f", obs, expd, dev);
    report(7, "digit-1 frequency within 0.005 of log2(4/3) (1e5 samples)", dev < 0.005, buf);
}

// 8. Good approximations are convergents.
void criterion8() {
    std::mt19937_64 rng(0x5eed0008);
    std::uniform_int_distribution<long> qd(2, 10000), mode(0, 2), off(0, 1);
    size_t hits = 0, counterexamples = 0;
    for (int i = 0; i < 1000; ++i) {
        Real x = evaluate_word(random_word(rng, 2, 4, 6));
        CFExpansion e = expand(x);
        std::vector<Convergent> cs = convergents(e, 24);
        BigInt p, q;
        long m = mode(rng);
        if (m <= 1) {
            const Convergent* pick = &cs.front();
            for (const Convergent& c : cs)
                if (c.q <= 10000) pick = &c;
            p = pick->p;
            q = pick->q;
            if (m == 1) p += off(rng) ? 1 : -1;
        } else {
            q = qd(rng);
            p = floor_of(real_mobius(q, 0, 0, 1, x)) + (off(rng) ? 1 : 0);
        }
        if (sgn(p) <= 0) continue;
        Real u = real_mobius(q, -p, 0, q, x);  // x - p/q
        Real au = real_sign(u) < 0 ? real_neg(u) : u;
        Rat bound = make_rat(1, BigInt(2) * q * q);
        if (compare(au, Real(bound)) == std::strong_ordering::less) {
            ++hits;
            Rat target = make_rat(p, q);
            bool found = false;
            for (const Convergent& c : cs)
                if (make_rat(c.p, c.q) == target) {
                    found = true;
                    break;
                }
            if (!found) ++counterexamples;
        }
    }
    bool ok = counterexamples == 0 && hits >= 50;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%zu hits, %zu counterexamples", hits, counterexamples);
    report(8, "approximations below 1/(2q^2) are convergents", ok, buf);
}

// 9. The accelerated slow map reproduces the digit sequence.
void criterion9() {
    std::mt19937_64 rng(0x5eed0009);
    std::uniform_int_distribution<long> qd(2, 99999);
    bool ok = true;
    std::string why;
    for (int i = 0; i < 1000 && ok; ++i) {
        long q = qd(rng);
        std::uniform_int_distribution<long> pd(1, q - 1);
        Rat x0 = make_rat(pd(rng), q);
        CFExpansion e = expand(Real(x0));
        Real x = Real(x0);
        size_t idx = 1;  // digit 0 of a value in (0,1) is 0
        while (real_sign(x) != 0) {
            auto [d, img] = farey_accelerate(x);
            std::optional<BigInt> want = e.digit(idx);
            if (!want || d != *want) {
                ok = false;
                why = "digit mismatch at index " + std::to_string(idx);
                break;
            }
            x = img;
            ++idx;
        }
        if (ok && e.digit(idx).has_value()) {
            ok = false;
            why = "induced chain ended before the expansion";
        }
    }
    report(9, "Farey acceleration equals the digit map on 1000 rationals", ok,
           ok ? "exact, full expansions" : why);
}

// 10. Quadratic values approach the invariant law as digits grow.
void criterion10() {
    ExperimentReport r = quadratic_equidistribution(4);
    const auto& rows = r.stats["per_bound"];
    double k2 = rows[1]["ks"].get<double>();
    double k3 = rows[2]["ks"].get<double>();
    double k4 = rows[3]["ks"].get<double>();
    bool ok = k2 > k3 && k3 > k4;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "KS %.4f > %.4f > %.4f", k2, k3, k4);
    report(10, "KS distance strictly decreases for digit bounds 2..4", ok, buf);
}

// CLI plumbing for criterion 11.
struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string base = "/tmp/cutseq_accept_" + std::to_string(++counter);
    std::string op = base + ".out", ep = base + ".err";
    std::string cmd = std::string(CUTSEQ_CLI_PATH) + " " + args + " >" + op + " 2>" + ep;
    int rc = std::system(cmd.c_str());
    RunResult r;
    if (rc != -1 && WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
    r.out = slurp(op);
    r.err = slurp(ep);
    std::remove(op.c_str());
    std::remove(ep.c_str());
    return r;
}

size_t count_of(const std::string& s, const std::string& needle) {
    size_t n = 0;
    for (size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1))
        ++n;
    return n;
}

std::vector<nlohmann::json> json_lines(const std::string& out) {
    std::vector<nlohmann::json> rec;
    std::istringstream ss(out);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) rec.push_back(nlohmann::json::parse(line, nullptr, false));
    return rec;
}

// 11. The CLI draws consistently and reproduces frozen values.
void criterion11() {
    bool ok = true;
    std::string why;

    RunResult d = run_cli("draw --depth 3");
    size_t in_doc = count_of(d.out, "class=\"edge\"");
    if (d.status != 0 || in_doc == 0 ||
        d.err.find("edges: " + std::to_string(in_doc)) == std::string::npos) {
        ok = false;
        why = "draw edge count disagrees with the document";
    }

    auto near = [](const nlohmann::json& j, const char* key, double want) {
        return j.contains(key) && j[key].is_number() &&
               std::abs(j[key].get<double>() - want) < 1e-9;
    };
    struct Probe {
        const char* cmd;
        std::function<bool(const RunResult&)> good;
    };
    std::vector<Probe> probes = {
        {"--format json section --periodic 1,1 --steps 2 --closed",
         [&](const RunResult& r) {
             auto recs = json_lines(r.out);
             bool closed = false, p0 = false, p1 = false;
             for (const auto& j : recs) {
                 if (j["record"] == "closed") closed = near(j, "length", 1.9248473002384139);
                 if (j["record"] == "step" && j["parity"] == 0) p0 = true;
                 if (j["record"] == "step" && j["parity"] == 1) p1 = true;
             }
             return closed && p0 && p1;
         }},
        {"--format json section --periodic 2,1 --steps 4",
         [&](const RunResult& r) {
             auto recs = json_lines(r.out);
             size_t good_steps = 0;
             for (const auto& j : recs)
                 if (j["record"] == "step" && near(j, "return_time", 1.3169578969248168))
                     ++good_steps;
             return good_steps == 4;
         }},
        {"--format json closed --periodic 2,2",
         [&](const RunResult& r) {
             auto recs = json_lines(r.out);
             return !recs.empty() && near(recs[0], "length", 3.5254943480781722);
         }},
        {"--format json closed --periodic 2,1",
         [&](const RunResult& r) {
             auto recs = json_lines(r.out);
             return !recs.empty() && near(recs[0], "length", 2.6339157938496336);
         }},
        {"expand --value 355/113",
         [](const RunResult& r) { return r.out.find("[3; 7, 16]") != std::string::npos; }},
        {"code --past '(1-1*sqrt(3))/1' --future '(1+1*sqrt(3))/1' --letters 40",
         [](const RunResult& r) { return r.out.find("runs: (2,1,2,1,") != std::string::npos; }},
    };
    for (const Probe& pr : probes) {
        if (!ok) break;
        RunResult a = run_cli(pr.cmd);
        RunResult b = run_cli(pr.cmd);
        if (a.status != 0 || a.out != b.out || a.status != b.status || !pr.good(a)) {
            ok = false;
            why = std::string("probe failed: ") + pr.cmd;
        }
    }
    report(11, "CLI is byte-deterministic and reproduces frozen values", ok,
           ok ? "draw + 6 probes x 2 runs" : why);
}

}  // namespace

int main() {
    std::printf("acceptance gate\n");
    criterion1();
    criterion2_3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria failed\n", failures);
    return failures;
}
