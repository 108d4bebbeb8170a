#include "cutseq/measures.hpp"

#include "cutseq/section.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

namespace cutseq {

namespace {

const double LN2 = std::log(2.0);

double gauss_cdf(double x) { return std::log2(1.0 + x); }

bool is_primitive(const std::vector<BigInt>& w) {
    size_t n = w.size();
    for (size_t d = 1; d < n; ++d) {
        if (n % d) continue;
        bool rep = true;
        for (size_t i = d; i < n && rep; ++i) rep = (w[i] == w[i % d]);
        if (rep) return false;
    }
    return true;
}

bool is_min_rotation(const std::vector<BigInt>& w) {
    std::vector<BigInt> r = w;
    for (size_t k = 1; k < w.size(); ++k) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        if (std::lexicographical_compare(r.begin(), r.end(), w.begin(), w.end())) return false;
    }
    return true;
}

// Value of the purely periodic continued fraction with the given period.
Real purely_periodic_value(const std::vector<BigInt>& w) {
    DigitWord word;
    word.pre.push_back(w.front());
    word.period.assign(w.begin() + 1, w.end());
    word.period.push_back(w.front());
    return evaluate_word(word);
}

std::string fmt_len(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::vector<Rat> unit_grid(size_t n, bool exclude_zero) {
    if (n == 0) throw domain_error("grid needs at least one subinterval");
    std::vector<Rat> pts;
    for (size_t k = exclude_zero ? 1 : 0; k <= n; ++k) pts.push_back(make_rat(BigInt(k), BigInt(n)));
    return pts;
}

DensityGrid make_density_grid(std::vector<Rat> points, std::function<double(double)> fn,
                              DensityTag tag) {
    if (!fn) throw domain_error("density grid needs an evaluator");
    for (size_t i = 0; i < points.size(); ++i) {
        if (sgn(points[i]) < 0 || points[i] > 1) throw domain_error("grid point outside [0,1]");
        if (i && points[i - 1] >= points[i]) throw domain_error("grid not strictly increasing");
    }
    DensityGrid g;
    g.points = std::move(points);
    g.tag = tag;
    g.fn = std::move(fn);
    g.values.reserve(g.points.size());
    for (const Rat& p : g.points) g.values.push_back(g.fn(p.get_d()));
    return g;
}

double gauss_density(double x) {
    if (x < 0.0 || x > 1.0) throw domain_error("gauss density is defined on [0,1]");
    return (1.0 / LN2) / (1.0 + x);
}

DensityGrid transfer_gauss(const DensityGrid& f, long branches) {
    if (branches < 1) throw domain_error("transfer needs at least one branch");
    if (!f.fn) throw domain_error("density grid needs an evaluator");
    auto lf = [g = f.fn, branches](double x) {
        double s = 0.0;
        for (long n = branches; n >= 1; --n) {
            double t = n + x;
            s += g(1.0 / t) / (t * t);
        }
        return s;
    };
    return make_density_grid(f.points, lf, f.tag);
}

DensityGrid transfer_farey(const DensityGrid& f) {
    if (!f.fn) throw domain_error("density grid needs an evaluator");
    if (!f.points.empty() && sgn(f.points.front()) == 0)
        throw domain_error("farey transfer grid must exclude 0");
    auto lf = [g = f.fn](double y) {
        double w = 1.0 + y;
        return (g(y / w) + g(1.0 / w)) / (w * w);
    };
    return make_density_grid(f.points, lf, f.tag);
}

double sup_diff(const DensityGrid& a, const DensityGrid& b) {
    if (a.points != b.points) throw domain_error("grids do not share sample points");
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

Rat gauss_telescope_partial(const Rat& x, long branches) {
    if (branches < 1) throw domain_error("telescope needs at least one term");
    Rat s(0);
    for (long n = 1; n <= branches; ++n) {
        Rat t = x + n;
        s += Rat(1) / (t * (t + 1));
    }
    return s;
}

Rat gauss_telescope_closed(const Rat& x, long branches) {
    if (branches < 1) throw domain_error("telescope needs at least one term");
    return Rat(1) / (x + 1) - Rat(1) / (x + branches + 1);
}

Rat farey_transfer_reciprocal(const Rat& y) {
    if (sgn(y) <= 0) throw domain_error("farey transfer needs y > 0");
    Rat w = y + 1;
    Rat s = w / y + w;  // 1/(y/(1+y)) + 1/(1/(1+y))
    return s / (w * w);
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

nlohmann::ordered_json ExperimentReport::json() const {
    return nlohmann::ordered_json{{"name", name}, {"params", params}, {"stats", stats}, {"pass", pass}};
}

std::string ExperimentReport::str() const {
    std::string out = "experiment: " + name + "\n";
    out += "params: " + params.dump() + "\n";
    out += "stats: " + stats.dump(2) + "\n";
    out += std::string("result: ") + (pass ? "PASS" : "FAIL") + "\n";
    return out;
}

ExperimentReport digit_statistics(size_t sample_count, std::uint64_t seed) {
    if (sample_count == 0) throw domain_error("need at least one sample");
    std::mt19937_64 rng(seed);
    constexpr int TRACKED = 8;
    std::vector<size_t> counts(TRACKED + 1, 0);  // last bucket: digits > TRACKED
    for (size_t i = 0; i < sample_count; ++i) {
        double u = ((rng() >> 11) + 0.5) * 0x1.0p-53;
        double x = std::exp2(u) - 1.0;  // inverse CDF of log2(1+x)
        double d = std::floor(1.0 / x);
        int k = (d > TRACKED) ? TRACKED + 1 : (int)d;
        ++counts[k - 1];
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    double max_dev = 0.0;
    for (int k = 1; k <= TRACKED + 1; ++k) {
        double expected = (k <= TRACKED)
                              ? std::log2(1.0 + 1.0 / ((double)k * (k + 2)))
                              : std::log2(1.0 + 1.0 / (TRACKED + 1));  // all digits > TRACKED
        double observed = (double)counts[k - 1] / (double)sample_count;
        if (k <= 3) max_dev = std::max(max_dev, std::abs(observed - expected));
        nlohmann::ordered_json row;
        row["digit"] = (k <= TRACKED) ? std::to_string(k) : (">" + std::to_string(TRACKED));
        row["observed"] = observed;
        row["expected"] = expected;
        rows.push_back(row);
    }
    ExperimentReport r;
    r.name = "digit-statistics";
    r.params = {{"samples", sample_count}, {"seed", seed}};
    r.stats = {{"digits", rows}, {"max_deviation_first_three", max_dev}, {"tolerance", 0.005}};
    r.pass = max_dev < 0.005;
    return r;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw domain_error("KS distance needs a nonempty sample");
    std::sort(sample.begin(), sample.end());
    double n = (double)sample.size();
    double ks = 0.0;
    for (size_t i = 0; i < sample.size(); ++i) {
        double f = cdf(sample[i]);
        ks = std::max(ks, std::max(f - i / n, (i + 1) / n - f));
    }
    return ks;
}

ExperimentReport quadratic_equidistribution(long digit_bound) {
    if (digit_bound < 1) throw domain_error("digit bound must be at least 1");
    constexpr size_t MAX_PERIOD = 4;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::vector<double> kss;
    for (long bound = 1; bound <= digit_bound; ++bound) {
        std::vector<double> values;
        std::vector<BigInt> w;
        auto enumerate = [&](auto&& self, size_t len) -> void {
            if (w.size() == len) {
                if (is_primitive(w)) values.push_back(to_double(real_recip(purely_periodic_value(w))));
                return;
            }
            for (long d = 1; d <= bound; ++d) {
                w.emplace_back(d);
                self(self, len);
                w.pop_back();
            }
        };
        for (size_t len = 1; len <= MAX_PERIOD; ++len) enumerate(enumerate, len);
        double ks = ks_distance(values, gauss_cdf);
        kss.push_back(ks);
        rows.push_back({{"digit_bound", bound}, {"count", values.size()}, {"ks", ks}});
    }
    ExperimentReport r;
    r.name = "quadratic-equidistribution";
    r.params = {{"digit_bound", digit_bound}, {"max_period", MAX_PERIOD}};
    r.stats = {{"per_bound", rows}};
    // trend: KS must drop from bound 2 (bound 1 when that is all we have)
    size_t ref = digit_bound > 2 ? 1 : 0;
    r.pass = digit_bound >= 2 && kss.back() < kss[ref];
    return r;
}

ExperimentReport closed_geodesic_census(double max_length) {
    if (!(max_length > 0)) throw domain_error("census needs a positive length bound");
    if (max_length > 8) throw domain_error("census length bound above 8 is not supported");
    long trace_bound = (long)(2.0 * std::cosh(max_length / 2.0)) + 1;

    struct Entry {
        std::vector<BigInt> word;  // even representative
        double length;
        double orbit_sum;
    };
    std::vector<Entry> entries;

    std::vector<BigInt> w;
    // partial product of [[d,1],[1,0]]; its top-left entry only grows under
    // appending digits and bounds the final trace from below
    auto dfs = [&](auto&& self, long a, long b, long c, long d) -> void {
        if (!w.empty() && is_primitive(w) && is_min_rotation(w)) {
            double len = closed_length_eigenvalue(w);
            if (len <= max_length) {
                std::vector<BigInt> even = w;
                if (even.size() % 2) even.insert(even.end(), w.begin(), w.end());
                ClosedGeodesic cg = closed_geodesic_from_period(w);
                entries.push_back({std::move(even), len, cg.length});
            }
        }
        for (long digit = 1;; ++digit) {
            long na = digit * a + b;
            if (na > trace_bound) break;
            w.emplace_back(digit);
            self(self, na, a, digit * c + d, c);
            w.pop_back();
        }
    };
    dfs(dfs, 1, 0, 0, 1);

    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.length != y.length) return x.length < y.length;
        return x.word < y.word;
    });

    double max_dev = 0.0;
    std::vector<double> factors;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const Entry& e : entries) {
        max_dev = std::max(max_dev, std::abs(e.length - e.orbit_sum));
        for (size_t i = 0; i < e.word.size(); ++i) {
            std::vector<BigInt> rot = e.word;
            std::rotate(rot.begin(), rot.begin() + i, rot.end());
            factors.push_back(to_double(real_recip(purely_periodic_value(rot))));
        }
        rows.push_back({{"word", word_str(e.word)}, {"length", e.length}});
    }
    ExperimentReport r;
    r.name = "closed-geodesic-census";
    r.params = {{"max_length", fmt_len(max_length)}};
    r.stats = {{"classes", rows},
               {"count", entries.size()},
               {"max_length_deviation", max_dev},
               {"factor_ks", factors.empty() ? 1.0 : ks_distance(factors, gauss_cdf)}};
    r.pass = max_dev < 1e-9;
    return r;
}

}  // namespace cutseq
