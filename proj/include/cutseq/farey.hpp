#pragma once

#include "cutseq/cf.hpp"
#include "cutseq/hyperbolic.hpp"

namespace cutseq {

// Tessellation vertex p/q in lowest terms; q == 0 encodes infinity as 1/0.
struct Frac {
    BigInt p, q;

    bool infinite() const { return q == 0; }
    Rat rat() const;
    BoundaryPoint boundary() const;
    std::string str() const;  // "p/q", infinity as "1/0"
    bool operator==(const Frac& o) const { return p == o.p && q == o.q; }
};

Frac frac_of(const Rat& r);
inline const Frac FRAC_INF{1, 0};

// Tessellation edge: endpoints form an unimodular pair, left < right with
// infinity counting as the largest boundary value.
struct FareyEdge {
    Frac left, right;
};

// Validates unimodularity and orders the endpoints.
FareyEdge farey_edge(const Frac& a, const Frac& b);

Frac mediant(const FareyEdge& e);
// Third vertex of the triangle on the other side of e from the mediant.
Frac outer_vertex(const FareyEdge& e);

struct FareyTriangle {
    Frac a, b, c;  // in boundary order
};

FareyTriangle farey_triangle(const Frac& u, const Frac& v, const Frac& w);
FareyTriangle base_triangle();  // (0, 1, infinity)

enum class Letter { L, R, End };

std::string letters_str(const std::vector<Letter>& ls);  // e.g. "LLRLLR", "LLL⊥"

struct RunSequence {
    std::vector<BigInt> runs;
    Letter first = Letter::L;
    std::string str() const;  // "(2,1,2,1)@L"
};

// Membership in the coding set: feet of opposite signs with the future foot
// at absolute value >= 1 and the past foot at absolute value in (0, 1].
bool is_in_A(const Geodesic& g);

// First n symbols of the forward cutting sequence against the tessellation;
// a rational future foot ends the sequence with the end mark.
std::vector<Letter> cutting_sequence(const Geodesic& g, size_t n);
// Same toward the past (the bi-infinite word read leftward from the section
// crossing).
std::vector<Letter> cutting_sequence_backward(const Geodesic& g, size_t n);

RunSequence runs(const std::vector<Letter>& letters);

struct Tip {
    Rat vertex;
    std::optional<BigInt> order;  // the partial quotient that follows; absent
                                  // on the terminal tip of a rational foot
    bool terminal = false;
};

// Isolated vertices pinched by the geodesic, in crossing order.
std::vector<Tip> tips(const Geodesic& g, size_t k);

// Group element m with m(g) in the coding set, and the moved geodesic.
std::pair<Geodesic, Mat2> reduce_to_A(const Geodesic& g);

}  // namespace cutseq
