#include "cutseq/farey.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace cutseq {

namespace {

const Real ONE{Rat(1)};

// Fixes the sign convention q >= 0, with 1/0 for infinity.
Frac normalized(BigInt p, BigInt q) {
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    return Frac{std::move(p), std::move(q)};
}

BigInt cross(const Frac& a, const Frac& b) { return a.p * b.q - a.q * b.p; }

std::strong_ordering frac_compare(const Frac& a, const Frac& b) {
    if (a.infinite() || b.infinite()) {
        if (a.infinite() && b.infinite()) return std::strong_ordering::equal;
        return a.infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    int s = sgn(cross(a, b));
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Letter swapped(Letter l) {
    if (l == Letter::L) return Letter::R;
    if (l == Letter::R) return Letter::L;
    return l;
}

void swap_letters(std::vector<Letter>& ls) {
    for (Letter& l : ls) l = swapped(l);
}

// Future foot in the normalized w = 0 form, plus whether the geodesic had to
// be mirrored to get there.
std::pair<Real, bool> normalized_future(const Geodesic& g) {
    if (!is_in_A(g)) throw domain_error("geodesic is outside the coding set");
    Real f = g.future.real();
    bool mirrored = real_sign(f) < 0;
    if (mirrored) f = real_neg(f);
    return {std::move(f), mirrored};
}

// Stern-Brocot descent toward f >= 1. Letters L and R record which side the
// pinched vertex sits on; a rational f ends at a mediant, where the last
// letter repeats once and the end mark closes the word.
std::vector<Letter> descent_letters(const Real& f, size_t n) {
    std::vector<Letter> out;
    Frac l{0, 1}, r{1, 0};
    Letter prev = Letter::L;
    while (out.size() < n) {
        Frac md{l.p + r.p, l.q + r.q};
        std::strong_ordering c = compare(f, Real(make_rat(md.p, md.q)));
        if (c == std::strong_ordering::equal) {
            out.push_back(prev);
            if (out.size() < n) out.push_back(Letter::End);
            break;
        }
        if (c == std::strong_ordering::greater) {
            out.push_back(Letter::L);
            prev = Letter::L;
            l = md;
        } else {
            out.push_back(Letter::R);
            prev = Letter::R;
            r = md;
        }
    }
    return out;
}

}  // namespace

Rat Frac::rat() const {
    if (infinite()) throw domain_error("infinite vertex has no rational value");
    return make_rat(p, q);
}

BoundaryPoint Frac::boundary() const {
    if (infinite()) return BoundaryPoint::infinity();
    return BoundaryPoint(rat());
}

std::string Frac::str() const { return p.get_str() + "/" + q.get_str(); }

Frac frac_of(const Rat& r) { return Frac{r.get_num(), r.get_den()}; }

FareyEdge farey_edge(const Frac& a, const Frac& b) {
    Frac u = normalized(a.p, a.q);
    Frac v = normalized(b.p, b.q);
    BigInt c = cross(u, v);
    if (c != 1 && c != -1) throw domain_error("endpoints are not an unimodular pair");
    if (frac_compare(u, v) == std::strong_ordering::greater) std::swap(u, v);
    return FareyEdge{std::move(u), std::move(v)};
}

Frac mediant(const FareyEdge& e) { return Frac{e.left.p + e.right.p, e.left.q + e.right.q}; }

Frac outer_vertex(const FareyEdge& e) {
    return normalized(e.left.p - e.right.p, e.left.q - e.right.q);
}

FareyTriangle farey_triangle(const Frac& u, const Frac& v, const Frac& w) {
    std::array<Frac, 3> vs{normalized(u.p, u.q), normalized(v.p, v.q), normalized(w.p, w.q)};
    std::sort(vs.begin(), vs.end(), [](const Frac& a, const Frac& b) {
        return frac_compare(a, b) == std::strong_ordering::less;
    });
    for (int i = 0; i < 3; ++i) {
        BigInt c = cross(vs[i], vs[(i + 1) % 3]);
        if (c != 1 && c != -1) throw domain_error("vertices do not span a tessellation triangle");
    }
    return FareyTriangle{vs[0], vs[1], vs[2]};
}

FareyTriangle base_triangle() { return FareyTriangle{Frac{0, 1}, Frac{1, 1}, FRAC_INF}; }

std::string letters_str(const std::vector<Letter>& ls) {
    std::string out;
    for (Letter l : ls) {
        switch (l) {
            case Letter::L: out += 'L'; break;
            case Letter::R: out += 'R'; break;
            case Letter::End: out += "⊥"; break;
        }
    }
    return out;
}

std::string RunSequence::str() const {
    std::string out = "(";
    for (size_t i = 0; i < runs.size(); ++i) {
        if (i) out += ",";
        out += runs[i].get_str();
    }
    out += ")@";
    out += first == Letter::L ? 'L' : 'R';
    return out;
}

bool is_in_A(const Geodesic& g) {
    if (g.past.is_infinity() || g.future.is_infinity())
        throw domain_error("coding set membership needs finite feet");
    Real p = g.past.real();
    Real f = g.future.real();
    int sp = real_sign(p);
    int sf = real_sign(f);
    if (sp == 0 || sf == 0 || sp == sf) return false;
    Real af = sf > 0 ? f : real_neg(f);
    Real ap = sp > 0 ? p : real_neg(p);
    return compare(af, ONE) != std::strong_ordering::less &&
           compare(ap, ONE) != std::strong_ordering::greater;
}

std::vector<Letter> cutting_sequence(const Geodesic& g, size_t n) {
    if (n == 0) throw domain_error("need at least one letter");
    auto [f, mir] = normalized_future(g);
    std::vector<Letter> out = descent_letters(f, n);
    if (mir) swap_letters(out);
    return out;
}

std::vector<Letter> cutting_sequence_backward(const Geodesic& g, size_t n) {
    if (n == 0) throw domain_error("need at least one letter");
    if (!is_in_A(g)) throw domain_error("geodesic is outside the coding set");
    // Reading the word leftward is reading the reversed geodesic rightward
    // with the sides exchanged; conjugating by S re-lands it on the section.
    Geodesic back = mobius_on_geodesic(S_MAT, g.reversed());
    std::vector<Letter> out = cutting_sequence(back, n);
    swap_letters(out);
    return out;
}

RunSequence runs(const std::vector<Letter>& letters) {
    if (letters.empty()) throw domain_error("empty letter sequence");
    size_t m = letters.size();
    if (letters.back() == Letter::End) --m;
    if (m == 0) throw domain_error("no letters before the end mark");
    RunSequence rs;
    rs.first = letters[0];
    for (size_t i = 0; i < m; ++i) {
        if (letters[i] == Letter::End) throw domain_error("end mark inside the sequence");
        if (i > 0 && letters[i] == letters[i - 1])
            rs.runs.back() += 1;
        else
            rs.runs.push_back(1);
    }
    return rs;
}

std::vector<Tip> tips(const Geodesic& g, size_t k) {
    if (k == 0) throw domain_error("need at least one tip");
    auto [f, mir] = normalized_future(g);
    std::vector<Tip> out;
    Frac l{0, 1}, r{1, 0};
    bool have_run = false;
    Letter run_letter = Letter::L;
    size_t run_index = 0;
    BigInt run_len = 0;
    Frac run_vertex = FRAC_INF;
    // The vertex pinched by run j is held fixed through the run; the first
    // run pinches infinity and carries no tip.
    auto close_run = [&]() {
        if (have_run && run_index >= 2) out.push_back(Tip{run_vertex.rat(), run_len, false});
    };
    while (out.size() < k) {
        Frac md{l.p + r.p, l.q + r.q};
        Rat mv = make_rat(md.p, md.q);
        std::strong_ordering c = compare(f, Real(mv));
        if (c == std::strong_ordering::equal) {
            // heading into the cusp pinches the run vertex once more
            if (have_run) ++run_len;
            close_run();
            if (out.size() < k) out.push_back(Tip{mv, std::nullopt, true});
            if (out.size() < k) throw domain_error("expansion exhausted before k tips");
            break;
        }
        Letter step = c == std::strong_ordering::greater ? Letter::L : Letter::R;
        if (!have_run || run_letter != step) {
            close_run();
            have_run = true;
            ++run_index;
            run_letter = step;
            run_len = 0;
            run_vertex = step == Letter::L ? r : l;
        }
        ++run_len;
        if (step == Letter::L)
            l = md;
        else
            r = md;
    }
    if (mir)
        for (Tip& t : out) t.vertex = -t.vertex;
    return out;
}

std::pair<Geodesic, Mat2> reduce_to_A(const Geodesic& g) {
    Geodesic h = g;
    Mat2 m = Mat2::identity();
    auto apply = [&](const Mat2& s) {
        h = mobius_on_geodesic(s, h);
        m = s * m;
    };
    for (int iter = 0; iter < 10000; ++iter) {
        if (!h.past.is_infinity() && !h.future.is_infinity() && is_in_A(h)) return {h, m};
        if (h.future.is_infinity()) {
            apply(S_MAT);
            continue;
        }
        Real f = h.future.real();
        if (real_is_integer(f)) {
            // The future expansion is exhausted: either one translate puts
            // the feet in the coding windows or the geodesic dies in a cusp.
            if (h.past.is_infinity()) throw cusp_error("geodesic ends in a cusp");
            Real p = h.past.real();
            for (const BigInt& j : {BigInt(-1 - floor_of(p)), BigInt(1 + floor_of(real_neg(p)))}) {
                Mat2 t = Mat2::translation(j);
                Geodesic ht = mobius_on_geodesic(t, h);
                if (is_in_A(ht)) return {ht, t * m};
            }
            throw cusp_error("geodesic ends in a cusp");
        }
        if (compare(f, ONE) == std::strong_ordering::greater) {
            apply(Mat2{0, -1, 1, -floor_of(f)});
        } else if (compare(f, Real(Rat(-1))) == std::strong_ordering::less) {
            apply(Mat2{0, -1, 1, floor_of(real_neg(f))});
        } else {
            // |f| < 1 and not an integer: shift into (1, 2) first.
            apply(Mat2::translation(1 - floor_of(f)));
        }
    }
    throw domain_error("reduction did not converge");
}

}  // namespace cutseq
