#include "CLI11.hpp"

#include "cutseq/farey.hpp"
#include "cutseq/measures.hpp"
#include "cutseq/section.hpp"
#include "cutseq/svg.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace cutseq;

namespace {

struct Options {
    std::string format = "text";
    std::uint64_t seed = 0;
    int precision = 192;
    std::string out_path;

    bool json() const { return format == "json"; }
};

std::string jesc(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if ((unsigned char)c < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
        } else {
            out += c;
        }
    }
    return out + "\"";
}

std::vector<BigInt> parse_word(const std::string& csv) {
    if (csv.empty()) throw domain_error("empty periodic word");
    std::vector<BigInt> word;
    size_t pos = 0;
    while (pos <= csv.size()) {
        size_t comma = csv.find(',', pos);
        std::string tok =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ') tok.pop_back();
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error("word digits must be decimal integers: '" + tok + "'");
        word.emplace_back(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return word;
}

// Closed-geodesic reports name the even representative of an odd word.
std::vector<BigInt> display_word(std::vector<BigInt> word) {
    if (word.size() % 2) {
        std::vector<BigInt> twice = word;
        twice.insert(twice.end(), word.begin(), word.end());
        return twice;
    }
    return word;
}

std::string letter_name(Letter l) {
    switch (l) {
        case Letter::L: return "L";
        case Letter::R: return "R";
        default: return "end";
    }
}

void run_expand(std::ostream& os, const Options& opt, const std::string& value, long digits,
                bool want_convergents, bool want_mediants) {
    Real x = parse_real(value);
    CFExpansion e = expand(x);
    std::vector<BigInt> ds;
    for (long i = 0; i < digits; ++i) {
        std::optional<BigInt> d = e.digit((size_t)i);
        if (!d) break;
        ds.push_back(*d);
    }
    bool truncated = e.digit((size_t)digits).has_value();
    bool periodic = !e.word().period.empty();
    std::vector<Convergent> cs;
    if (want_convergents) cs = convergents(e, ds.size());
    std::vector<MediantConvergent> ms;
    if (want_mediants) ms = mediant_convergents(e, ds.size());

    if (opt.json()) {
        for (size_t i = 0; i < ds.size(); ++i)
            os << "{\"record\":\"digit\",\"index\":" << i << ",\"digit\":\"" << ds[i].get_str()
               << "\"}\n";
        for (const Convergent& c : cs)
            os << "{\"record\":\"convergent\",\"index\":" << c.n << ",\"p\":\"" << c.p.get_str()
               << "\",\"q\":\"" << c.q.get_str() << "\"}\n";
        for (const MediantConvergent& m : ms)
            os << "{\"record\":\"mediant\",\"level\":" << m.level << ",\"a\":\"" << m.a.get_str()
               << "\",\"value\":" << jesc(to_string(m.value)) << "}\n";
        os << "{\"record\":\"summary\",\"cf\":" << jesc(e.str((size_t)digits))
           << ",\"periodic\":" << (periodic ? "true" : "false")
           << ",\"truncated\":" << (truncated ? "true" : "false") << "}\n";
        return;
    }
    os << "cf: [";
    for (size_t i = 0; i < ds.size(); ++i) {
        if (i == 1)
            os << "; ";
        else if (i > 1)
            os << ", ";
        os << ds[i].get_str();
    }
    if (truncated) os << ", ...";
    os << "]\n";
    if (periodic) os << "periodic: " << e.str() << "\n";
    for (const Convergent& c : cs)
        os << "convergent " << c.n << ": " << c.p.get_str() << "/" << c.q.get_str() << "\n";
    for (const MediantConvergent& m : ms)
        os << "mediant level " << m.level << " a " << m.a.get_str() << ": " << to_string(m.value)
           << "\n";
}

void run_code(std::ostream& os, const Options& opt, const std::string& past,
              const std::string& future, long nletters, bool reduce, long ktips) {
    Geodesic g = geodesic_through(parse_boundary(past), parse_boundary(future));
    Mat2 m = Mat2::identity();
    bool reduced = false;
    if (!is_in_A(g)) {
        if (!reduce)
            throw domain_error("geodesic is outside the coding set; pass --reduce to move it");
        auto moved = reduce_to_A(g);
        g = moved.first;
        m = moved.second;
        reduced = true;
    }
    std::vector<Letter> ls = cutting_sequence(g, (size_t)nletters);
    RunSequence rs = runs(ls);
    std::vector<Letter> bw = cutting_sequence_backward(g, (size_t)nletters);
    std::vector<Tip> ts;
    for (long k = ktips; k >= 1; --k) {
        try {
            ts = tips(g, (size_t)k);
            break;
        } catch (const domain_error&) {
        }
    }

    if (opt.json()) {
        if (reduced)
            os << "{\"record\":\"reduction\",\"matrix\":" << jesc(m.str())
               << ",\"past\":" << jesc(to_string(g.past)) << ",\"future\":"
               << jesc(to_string(g.future)) << "}\n";
        for (size_t i = 0; i < ls.size(); ++i)
            os << "{\"record\":\"letter\",\"index\":" << i + 1 << ",\"letter\":\""
               << letter_name(ls[i]) << "\"}\n";
        os << "{\"record\":\"runs\",\"runs\":[";
        for (size_t i = 0; i < rs.runs.size(); ++i)
            os << (i ? "," : "") << "\"" << rs.runs[i].get_str() << "\"";
        os << "],\"first\":\"" << letter_name(rs.first) << "\"}\n";
        os << "{\"record\":\"backward\",\"letters\":" << jesc(letters_str(bw)) << "}\n";
        for (size_t i = 0; i < ts.size(); ++i) {
            os << "{\"record\":\"tip\",\"index\":" << i + 1 << ",\"vertex\":"
               << jesc(to_string(ts[i].vertex));
            if (ts[i].order) os << ",\"order\":\"" << ts[i].order->get_str() << "\"";
            os << ",\"terminal\":" << (ts[i].terminal ? "true" : "false") << "}\n";
        }
        return;
    }
    if (reduced) {
        os << "move: " << m.str() << "\n";
        os << "reduced: past=" << to_string(g.past) << " future=" << to_string(g.future) << "\n";
    }
    os << "letters: " << letters_str(ls) << "\n";
    os << "runs: " << rs.str() << "\n";
    os << "backward: " << letters_str(bw) << "\n";
    if (!ts.empty()) {
        os << "tips:";
        for (const Tip& t : ts) {
            os << " " << to_string(t.vertex);
            if (t.order) os << " order " << t.order->get_str();
            if (t.terminal) os << " terminal";
            os << ";";
        }
        os << "\n";
    }
}

void run_section(std::ostream& os, const Options& opt, const std::string& word_csv, int parity,
                 std::optional<long> steps_opt, bool closed) {
    std::vector<BigInt> word = parse_word(word_csv);
    SigmaElement s = periodic_sigma(word);
    if (parity == 1) s = make_sigma(s.future, s.past, 1);
    long period = (long)(word.size() % 2 ? 2 * word.size() : word.size());
    long steps = steps_opt.value_or(period);
    if (steps < 1) throw domain_error("need at least one step");

    SectionPoint x = decode(s);
    double total = 0.0;
    if (!opt.json()) os << "start: " << s.str() << "\n";
    for (long i = 1; i <= steps; ++i) {
        Real fac = factor_to_unit_interval(s);
        double facv = to_double(fac, opt.precision);
        auto [nx, st] = first_return(x);
        total += st.time;
        const Geodesic& rep = x.representative;
        if (opt.json()) {
            os << "{\"record\":\"step\",\"index\":" << i << ",\"sigma\":" << jesc(s.str())
               << ",\"parity\":" << x.parity << ",\"past\":" << jesc(to_string(rep.past))
               << ",\"future\":" << jesc(to_string(rep.future)) << ",\"digit\":\""
               << st.digit_consumed.get_str() << "\",\"return_time\":" << fmt17(st.time)
               << ",\"factor\":" << jesc(to_string(fac)) << ",\"factor_value\":" << fmt17(facv)
               << "}\n";
        } else {
            os << "step " << i << ":\n";
            os << "  sigma: " << s.str() << "\n";
            os << "  past: " << to_string(rep.past) << "\n";
            os << "  future: " << to_string(rep.future) << "\n";
            os << "  parity: " << x.parity << "\n";
            os << "  digit: " << st.digit_consumed.get_str() << "\n";
            os << "  return_time: " << fmt17(st.time) << "\n";
            os << "  factor: " << to_string(fac) << " (" << fmt17(facv) << ")\n";
        }
        x = std::move(nx);
        s = shift(s);
    }
    double length = 0.0, eigen = 0.0;
    if (closed) {
        length = closed_geodesic_from_period(word).length;
        eigen = closed_length_eigenvalue(word);
    }
    if (opt.json()) {
        os << "{\"record\":\"summary\",\"steps\":" << steps << ",\"total_time\":" << fmt17(total)
           << "}\n";
        if (closed)
            os << "{\"record\":\"closed\",\"word\":" << jesc(word_str(display_word(word)))
               << ",\"length\":" << fmt17(length) << ",\"eigenvalue_length\":" << fmt17(eigen)
               << "}\n";
    } else {
        os << "total_time: " << fmt17(total) << "\n";
        if (closed) {
            os << "length: " << fmt17(length) << "\n";
            os << "eigenvalue_length: " << fmt17(eigen) << "\n";
        }
    }
}

void run_closed(std::ostream& os, const Options& opt, const std::string& word_csv,
                std::optional<double> max_length) {
    if (word_csv.empty() == !max_length.has_value())
        throw domain_error("pass exactly one of --periodic and --max-length");
    if (max_length) {
        ExperimentReport r = closed_geodesic_census(*max_length);
        os << (opt.json() ? r.json().dump() + "\n" : r.str());
        return;
    }
    std::vector<BigInt> word = parse_word(word_csv);
    ClosedGeodesic cg = closed_geodesic_from_period(word);
    double eigen = closed_length_eigenvalue(word);
    if (opt.json()) {
        os << "{\"record\":\"closed\",\"word\":" << jesc(word_str(display_word(word)))
           << ",\"length\":" << fmt17(cg.length) << ",\"eigenvalue_length\":" << fmt17(eigen)
           << "}\n";
        for (size_t i = 0; i < cg.orbit.size(); ++i) {
            const SectionPoint& p = cg.orbit[i];
            os << "{\"record\":\"orbit\",\"index\":" << i << ",\"parity\":" << p.parity
               << ",\"past\":" << jesc(to_string(p.representative.past))
               << ",\"future\":" << jesc(to_string(p.representative.future)) << "}\n";
        }
        return;
    }
    os << "word: " << word_str(display_word(word)) << "\n";
    os << "length: " << fmt17(cg.length) << "\n";
    os << "eigenvalue_length: " << fmt17(eigen) << "\n";
    for (size_t i = 0; i < cg.orbit.size(); ++i) {
        const SectionPoint& p = cg.orbit[i];
        os << "orbit " << i << ": parity " << p.parity << ", past "
           << to_string(p.representative.past) << ", future "
           << to_string(p.representative.future) << "\n";
    }
}

void run_measure(std::ostream& os, const Options& opt, const std::string& experiment,
                 size_t samples, long digit_bound, double max_length, long branches,
                 size_t grid_n) {
    ExperimentReport r;
    if (experiment == "digits") {
        r = digit_statistics(samples, opt.seed);
    } else if (experiment == "equidistribution") {
        r = quadratic_equidistribution(digit_bound);
    } else if (experiment == "census") {
        r = closed_geodesic_census(max_length);
    } else if (experiment == "gauss") {
        DensityGrid d =
            make_density_grid(unit_grid(grid_n, false), gauss_density, DensityTag::gauss);
        double sup = sup_diff(transfer_gauss(d, branches), d);
        double tail = gauss_density(0.0) / (double)(branches + 1);
        r.name = "gauss-transfer";
        r.params = {{"branches", branches}, {"grid_points", grid_n + 1}};
        r.stats = {{"sup_error", sup},
                   {"tail_bound", tail},
                   {"telescope_exact",
                    gauss_telescope_partial(make_rat(1, 3), branches) ==
                        gauss_telescope_closed(make_rat(1, 3), branches)}};
        // Equality holds at x = 0, so leave room for the summation rounding.
        r.pass = sup <= tail + 1e-12;
    } else if (experiment == "farey") {
        size_t violations = 0;
        for (size_t k = 1; k <= grid_n; ++k) {
            Rat y = make_rat(BigInt(k), BigInt(grid_n));
            if (!(farey_transfer_reciprocal(y) == Rat(1) / y)) ++violations;
        }
        DensityGrid f = make_density_grid(
            unit_grid(grid_n, true), [](double x) { return 1.0 / x; }, DensityTag::farey);
        double sup = sup_diff(transfer_farey(f), f);
        r.name = "farey-transfer";
        r.params = {{"grid_points", grid_n}};
        r.stats = {{"exact_violations", violations}, {"float_sup_error", sup}};
        r.pass = violations == 0 && sup <= 1e-12;
    } else {
        throw parse_error("unknown experiment: " + experiment);
    }
    os << (opt.json() ? r.json().dump() + "\n" : r.str());
}

void run_draw(std::ostream& os, int depth, const std::string& window, double ymax,
              const std::string& geodesic_csv) {
    DrawOptions d;
    d.depth = depth;
    d.ymax = ymax;
    size_t colon = window.find(':');
    if (colon == std::string::npos) throw parse_error("window must look like xmin:xmax");
    try {
        d.xmin = std::stod(window.substr(0, colon));
        d.xmax = std::stod(window.substr(colon + 1));
    } catch (const std::exception&) {
        throw parse_error("window bounds must be decimal numbers");
    }
    if (!geodesic_csv.empty()) {
        size_t comma = geodesic_csv.find(',');
        if (comma == std::string::npos)
            throw parse_error("geodesic must look like past,future in the value grammar");
        d.geodesic = geodesic_through(parse_boundary(geodesic_csv.substr(0, comma)),
                                      parse_boundary(geodesic_csv.substr(comma + 1)));
    }
    DrawResult res = render_tessellation(d);
    os << res.svg;
    std::cerr << "edges: " << res.edge_count << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geodesic cutting sequences against the Farey tessellation"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json", "svg"}))
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "random seed for sampled experiments")
        ->capture_default_str();
    app.add_option("--precision", opt.precision, "working precision in bits")
        ->check(CLI::Range(64, 4096))
        ->capture_default_str();
    app.add_option("--out", opt.out_path, "write output to a file instead of stdout");

    std::ostringstream body;

    auto* cmd_expand = app.add_subcommand("expand", "continued fraction digits of a value");
    std::string value;
    long digits = 12;
    bool want_convergents = false, want_mediants = false;
    cmd_expand->add_option("--value", value, "value in the exact grammar")->required();
    cmd_expand->add_option("--digits", digits, "digits to print")->check(CLI::PositiveNumber);
    cmd_expand->add_flag("--convergents", want_convergents, "print convergents");
    cmd_expand->add_flag("--mediants", want_mediants, "print mediant convergents");
    cmd_expand->callback(
        [&] { run_expand(body, opt, value, digits, want_convergents, want_mediants); });

    auto* cmd_code = app.add_subcommand("code", "cutting sequence of a geodesic");
    std::string past, future;
    long nletters = 12, ktips = 4;
    bool reduce = false;
    cmd_code->add_option("--past", past, "past foot")->required();
    cmd_code->add_option("--future", future, "future foot")->required();
    cmd_code->add_option("--letters", nletters, "letters to emit")->check(CLI::PositiveNumber);
    cmd_code->add_option("--tips", ktips, "tips to list")->check(CLI::NonNegativeNumber);
    cmd_code->add_flag("--reduce", reduce, "move the geodesic into the coding set first");
    cmd_code->callback([&] { run_code(body, opt, past, future, nletters, reduce, ktips); });

    auto* cmd_section = app.add_subcommand("section", "return-map trajectory of a periodic word");
    std::string word_csv;
    int parity = 0;
    bool closed = false;
    std::optional<long> steps_opt;
    long steps_raw = 0;
    cmd_section->add_option("--periodic", word_csv, "periodic digit word, e.g. 2,1")->required();
    cmd_section->add_option("--parity", parity, "starting parity")->check(CLI::Range(0, 1));
    auto* steps_o = cmd_section->add_option("--steps", steps_raw, "return steps to take");
    cmd_section->add_flag("--closed", closed, "report the closed-geodesic length");
    cmd_section->callback([&] {
        if (*steps_o) steps_opt = steps_raw;
        run_section(body, opt, word_csv, parity, steps_opt, closed);
    });

    auto* cmd_closed = app.add_subcommand("closed", "closed geodesics from periodic words");
    std::string closed_word;
    std::optional<double> max_length;
    double max_length_raw = 0;
    cmd_closed->add_option("--periodic", closed_word, "periodic digit word");
    auto* ml_o = cmd_closed->add_option("--max-length", max_length_raw,
                                        "census of all classes up to this length");
    cmd_closed->callback([&] {
        if (*ml_o) max_length = max_length_raw;
        run_closed(body, opt, closed_word, max_length);
    });

    auto* cmd_measure = app.add_subcommand("measure", "invariant measure experiments");
    std::string experiment;
    size_t samples = 100000, grid_n = 1000;
    long digit_bound = 4, branches = 10000;
    double census_length = 2.7;
    cmd_measure
        ->add_option("--experiment", experiment,
                     "one of digits, equidistribution, census, gauss, farey")
        ->required();
    cmd_measure->add_option("--samples", samples, "sample count for digits");
    cmd_measure->add_option("--digit-bound", digit_bound, "bound for equidistribution");
    cmd_measure->add_option("--max-length", census_length, "length bound for census");
    cmd_measure->add_option("--branches", branches, "truncation for the gauss transfer");
    cmd_measure->add_option("--grid", grid_n, "grid subintervals");
    cmd_measure->callback([&] {
        run_measure(body, opt, experiment, samples, digit_bound, census_length, branches, grid_n);
    });

    auto* cmd_draw = app.add_subcommand("draw", "SVG of the tessellation and a geodesic");
    int depth = 3;
    std::string window = "-2:3", geodesic_csv;
    double ymax = 2.5;
    cmd_draw->add_option("--depth", depth, "combinatorial radius around the base triangle")
        ->check(CLI::Range(0, 16));
    cmd_draw->add_option("--window", window, "x window as xmin:xmax")->capture_default_str();
    cmd_draw->add_option("--ymax", ymax, "height cutoff")->capture_default_str();
    cmd_draw->add_option("--geodesic", geodesic_csv, "feet as past,future in the value grammar");
    cmd_draw->callback([&] { run_draw(body, depth, window, ymax, geodesic_csv); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 4;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "io error: cannot open " << opt.out_path << "\n";
            return 5;
        }
        out << body.str();
        out.flush();
        if (!out.good()) {
            std::cerr << "io error: cannot write " << opt.out_path << "\n";
            return 5;
        }
    } else {
        std::cout << body.str();
    }
    return 0;
}
