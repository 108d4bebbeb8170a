#include "cutseq/section.hpp"

#include <algorithm>
#include <utility>

namespace cutseq {

namespace {

void validate_digits(const std::vector<BigInt>& ds) {
    for (const BigInt& d : ds)
        if (d < 1) throw domain_error("digits must be positive");
}

// Anchor: a word with a period always keeps a nonempty head, so the leading
// digit is addressable.
void normalize_word(DigitWord& w) {
    validate_digits(w.pre);
    validate_digits(w.period);
    if (w.pre.empty() && w.period.empty()) throw domain_error("empty digit tail");
    if (!w.period.empty()) {
        if (w.pre.empty()) {
            w.pre.push_back(w.period.front());
            std::rotate(w.period.begin(), w.period.begin() + 1, w.period.end());
        }
        w.canonicalize(1);
    }
}

BigInt pop_front(DigitWord& w) {
    BigInt d = w.pre.front();
    w.pre.erase(w.pre.begin());
    if (w.pre.empty() && !w.period.empty()) {
        w.pre.push_back(w.period.front());
        std::rotate(w.period.begin(), w.period.begin() + 1, w.period.end());
    }
    return d;
}

void append_digits(std::string& out, const std::vector<BigInt>& ds, bool reversed) {
    for (size_t i = 0; i < ds.size(); ++i) {
        if (i) out += ' ';
        out += ds[reversed ? ds.size() - 1 - i : i].get_str();
    }
}

std::vector<BigInt> even_word(const std::vector<BigInt>& word) {
    if (word.empty()) throw domain_error("empty period word");
    validate_digits(word);
    std::vector<BigInt> w = word;
    if (w.size() % 2) w.insert(w.end(), word.begin(), word.end());
    return w;
}

}  // namespace

std::string SigmaElement::str() const {
    std::string out = "[";
    if (!past.period.empty()) {
        out += '(';
        append_digits(out, past.period, true);
        out += ") ";
    }
    append_digits(out, past.pre, true);
    out += " | ";
    append_digits(out, future.pre, false);
    if (!future.period.empty()) {
        out += " (";
        append_digits(out, future.period, false);
        out += ')';
    }
    out += "] ; ";
    out += parity == 0 ? '0' : '1';
    return out;
}

SigmaElement make_sigma(DigitWord future, DigitWord past, int parity) {
    if (parity != 0 && parity != 1) throw domain_error("parity must be 0 or 1");
    normalize_word(future);
    normalize_word(past);
    return SigmaElement{std::move(future), std::move(past), parity};
}

HPoint SectionPoint::base() const { return cross_vertical(representative, Rat(0)); }

SectionPoint section_point(const Geodesic& g) {
    if (!is_in_A(g)) throw domain_error("geodesic is outside the coding set");
    int w = real_sign(g.future.real()) < 0 ? 1 : 0;
    return SectionPoint{w ? g.mirrored() : g, w};
}

SigmaElement encode(const Geodesic& g) {
    SectionPoint x = section_point(g);
    CFExpansion forward = expand(x.representative.future.real());
    CFExpansion backward = expand(real_neg(real_recip(x.representative.past.real())));
    return SigmaElement{forward.word(), backward.word(), x.parity};
}

SectionPoint decode(const SigmaElement& s) {
    if (s.future.finite() || s.past.finite())
        throw domain_error("decoding needs two-sided periodic tails");
    Real f = evaluate_word(s.future);
    Real p = real_neg(real_recip(evaluate_word(s.past)));
    return SectionPoint{geodesic_through(BoundaryPoint(p), BoundaryPoint(f)), s.parity};
}

SigmaElement shift(const SigmaElement& s) {
    DigitWord fut = s.future;
    if (fut.finite() && fut.pre.size() <= 1)
        throw domain_error("shift exits into the cusp: single future digit");
    BigInt n1 = pop_front(fut);
    DigitWord pst = s.past;
    pst.pre.insert(pst.pre.begin(), n1);
    if (!pst.period.empty()) pst.canonicalize(1);
    return SigmaElement{std::move(fut), std::move(pst), s.parity ^ 1};
}

std::pair<SectionPoint, ReturnStep> first_return(const SectionPoint& x) {
    const Geodesic& rep = x.representative;
    if (!is_in_A(rep) || real_sign(rep.future.real()) < 0)
        throw domain_error("not a canonical section point");
    Real f = rep.future.real();
    if (real_is_integer(f)) throw cusp_error("future expansion exhausted");
    BigInt n1 = floor_of(f);
    Mat2 digit_move{0, -1, 1, -n1};
    Geodesic next = mobius_on_geodesic(digit_move, rep).mirrored();
    double t = crossing_flow_time(rep, Rat(0), Rat(n1));
    Mat2 reported = x.parity == 0 ? digit_move : Mat2{0, -1, 1, n1};
    return {SectionPoint{std::move(next), x.parity ^ 1},
            ReturnStep{std::move(reported), t, std::move(n1)}};
}

Real factor_to_unit_interval(const SigmaElement& s) {
    if (s.future.pre.empty() && s.future.period.empty())
        throw domain_error("empty future tail");
    return real_recip(evaluate_word(s.future));
}

SigmaElement periodic_sigma(const std::vector<BigInt>& word) {
    std::vector<BigInt> w = even_word(word);
    DigitWord fut{{w.front()}, {w.begin() + 1, w.end()}};
    fut.period.push_back(w.front());
    std::vector<BigInt> rev(w.rbegin(), w.rend());
    DigitWord pst{{rev.front()}, {rev.begin() + 1, rev.end()}};
    pst.period.push_back(rev.front());
    return make_sigma(std::move(fut), std::move(pst), 0);
}

ClosedGeodesic closed_geodesic_from_period(const std::vector<BigInt>& word) {
    std::vector<BigInt> w = even_word(word);
    SigmaElement s = periodic_sigma(word);

    ClosedGeodesic out;
    SectionPoint x = decode(s);
    SectionPoint start = x;
    for (size_t i = 0; i < w.size(); ++i) {
        out.orbit.push_back(x);
        auto [nx, step] = first_return(x);
        out.length += step.time;
        x = std::move(nx);
    }
    if (!(x == start)) throw domain_error("orbit failed to close");
    return out;
}

double closed_length_eigenvalue(const std::vector<BigInt>& word) {
    std::vector<BigInt> w = even_word(word);
    Mat2 prod = Mat2::identity();
    for (const BigInt& d : w) prod = prod * Mat2{d, 1, 1, 0};
    BigInt tr = prod.m11 + prod.m22;
    Real lambda = make_real_value(tr, 1, 2, tr * tr - 4);
    return 2.0 * log_to_double(lambda);
}

}  // namespace cutseq
