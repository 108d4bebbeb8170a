#pragma once

#include "cutseq/exact.hpp"

namespace cutseq {

// Point of the upper half-plane. Coordinates are exact when constructed from
// exact values; a floating shadow is always available.
class HPoint {
  public:
    HPoint(Real x, Real y);
    HPoint(double x, double y);

    bool exact() const { return ex_.has_value(); }
    const Real& xe() const;
    const Real& ye() const;
    double x() const { return fx_; }
    double y() const { return fy_; }

  private:
    std::optional<Real> ex_, ey_;
    double fx_ = 0, fy_ = 0;
};

// Oriented geodesic given by its two feet on the boundary.
struct Geodesic {
    BoundaryPoint past;    // backward endpoint
    BoundaryPoint future;  // forward endpoint

    bool vertical() const { return past.is_infinity() || future.is_infinity(); }
    Geodesic reversed() const { return Geodesic{future, past}; }
    // Image under x -> -x.
    Geodesic mirrored() const;
    // Center and radius of the semicircle; both feet must be finite and lie
    // in one quadratic field.
    Real center() const;
    Real radius() const;
    std::string str() const;
    bool operator==(const Geodesic& o) const { return past == o.past && future == o.future; }
};

Geodesic geodesic_through(const BoundaryPoint& past, const BoundaryPoint& future);
Geodesic mobius_on_geodesic(const Mat2& m, const Geodesic& g);

struct UnitTangent {
    Geodesic geodesic;
    HPoint base;
};

// Validating factory: base must sit on the geodesic, exactly when the check
// is expressible in one field, else within a small floating tolerance.
UnitTangent unit_tangent(const Geodesic& g, const HPoint& base);

double hyp_distance(const HPoint& z1, const HPoint& z2);

// Floating image of a point under an integer Mobius map.
HPoint mobius_on_point(const Mat2& m, const HPoint& z);

// Move the base point signed arclength t toward the future foot.
UnitTangent flow(const UnitTangent& u, double t);

// Crossing of g with the vertical line x = x0; exact height when the feet
// share a field and the squared height is rational.
HPoint cross_vertical(const Geodesic& g, const Rat& x0);

// Signed flow time along g from the point above x1 to the point above x2.
double crossing_flow_time(const Geodesic& g, const Rat& x1, const Rat& x2);

struct FordCircle {
    Rat x;       // boundary tangency point
    Rat radius;  // also the height of the center
};

FordCircle ford_circle(const Rat& p);
// Sign of (center distance)^2 - (radius sum)^2 for the two Ford circles:
// 0 tangent, positive disjoint, negative overlapping. Exact.
int ford_tangency(const Rat& a, const Rat& b);

}  // namespace cutseq
