#pragma once

#include "cutseq/farey.hpp"

namespace cutseq {

// Decorated two-sided digit sequence: future digits n1, n2, ... and past
// digits n0, n-1, ... (each stored in reading order), plus a parity bit.
// Periodic tails are eventually periodic words; finite tails have an empty
// period.
struct SigmaElement {
    DigitWord future;
    DigitWord past;
    int parity = 0;

    std::string str() const;  // "[(1 2) 1 | 2 (1 2)] ; 0"
    bool operator==(const SigmaElement& o) const {
        return parity == o.parity && future.pre == o.future.pre &&
               future.period == o.future.period && past.pre == o.past.pre &&
               past.period == o.past.period;
    }
};

// Validates digits, anchors periodic tails on a nonempty head and
// canonicalizes them.
SigmaElement make_sigma(DigitWord future, DigitWord past, int parity);

// Point of the cross-section: a geodesic in the coding set pinned at its
// imaginary-axis crossing. The representative is always kept in the
// positive-future form; the mirror bookkeeping lives in parity.
struct SectionPoint {
    Geodesic representative;
    int parity = 0;

    HPoint base() const;  // the crossing with x = 0
    bool operator==(const SectionPoint& o) const {
        return parity == o.parity && representative == o.representative;
    }
};

// Canonical section point under a geodesic in the coding set.
SectionPoint section_point(const Geodesic& g);

struct ReturnStep {
    Mat2 matrix;
    double time = 0;
    BigInt digit_consumed;
};

SigmaElement encode(const Geodesic& g);
// Needs two-sided infinite (eventually periodic) tails.
SectionPoint decode(const SigmaElement& s);
// Right shift with parity flip; throws when the future holds a single digit.
SigmaElement shift(const SigmaElement& s);
// One step of the return map to the section, with the group move, the flow
// time between the two crossings, and the digit it consumes.
std::pair<SectionPoint, ReturnStep> first_return(const SectionPoint& x);
// 1/[n1; n2, ...]: the factor map onto the unit interval.
Real factor_to_unit_interval(const SigmaElement& s);

struct ClosedGeodesic {
    std::vector<SectionPoint> orbit;
    double length = 0;
};

// The bi-infinite periodic element of a word (doubled when odd), parity 0.
SigmaElement periodic_sigma(const std::vector<BigInt>& word);
// Periodic word -> closed orbit of the return map and its length. Odd words
// are doubled so the parity returns to itself.
ClosedGeodesic closed_geodesic_from_period(const std::vector<BigInt>& word);
// Same length through the dominant eigenvalue of the word's matrix product.
double closed_length_eigenvalue(const std::vector<BigInt>& word);

}  // namespace cutseq
