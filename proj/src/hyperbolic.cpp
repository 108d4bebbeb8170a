#include "cutseq/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace cutseq {

namespace {

std::optional<Real> sub_same_field(const Real& x, const Real& y) {
    return real_add_same_field(x, real_neg(y));
}

Real half_of(const Real& x) { return real_mobius(1, 0, 0, 2, x); }

// strict betweenness of x0 relative to the feet of a semicircle
bool strictly_between(const Real& p, const Real& f, const Real& x0) {
    std::strong_ordering cp = compare(x0, p);
    std::strong_ordering cf = compare(x0, f);
    if (cp == std::strong_ordering::equal || cf == std::strong_ordering::equal) return false;
    return (cp == std::strong_ordering::less) != (cf == std::strong_ordering::less);
}

}  // namespace

HPoint::HPoint(Real x, Real y) {
    if (real_sign(y) <= 0) throw domain_error("point must have positive height");
    fx_ = to_double(x);
    fy_ = to_double(y);
    ex_ = std::move(x);
    ey_ = std::move(y);
}

HPoint::HPoint(double x, double y) : fx_(x), fy_(y) {
    if (!std::isfinite(x) || !std::isfinite(y) || y <= 0)
        throw domain_error("point must have positive finite height");
}

const Real& HPoint::xe() const {
    if (!ex_) throw domain_error("point has no exact coordinates");
    return *ex_;
}

const Real& HPoint::ye() const {
    if (!ey_) throw domain_error("point has no exact coordinates");
    return *ey_;
}

Geodesic Geodesic::mirrored() const {
    auto flip = [](const BoundaryPoint& b) {
        if (b.is_infinity()) return b;
        return BoundaryPoint(real_neg(b.real()));
    };
    return Geodesic{flip(past), flip(future)};
}

Real Geodesic::center() const {
    if (vertical()) throw domain_error("vertical geodesic has no center");
    std::optional<Real> s = real_add_same_field(past.real(), future.real());
    if (!s) throw domain_error("feet lie in different fields");
    return half_of(*s);
}

Real Geodesic::radius() const {
    if (vertical()) throw domain_error("vertical geodesic has no radius");
    std::optional<Real> d = sub_same_field(future.real(), past.real());
    if (!d) throw domain_error("feet lie in different fields");
    Real r = half_of(*d);
    if (real_sign(r) < 0) r = real_neg(r);
    return r;
}

std::string Geodesic::str() const {
    return "(" + to_string(past) + " -> " + to_string(future) + ")";
}

Geodesic geodesic_through(const BoundaryPoint& past, const BoundaryPoint& future) {
    if (past == future) throw domain_error("geodesic needs two distinct feet");
    return Geodesic{past, future};
}

Geodesic mobius_on_geodesic(const Mat2& m, const Geodesic& g) {
    return Geodesic{mobius_apply(m, g.past), mobius_apply(m, g.future)};
}

UnitTangent unit_tangent(const Geodesic& g, const HPoint& base) {
    constexpr double tol = 1e-9;
    if (g.vertical()) {
        const BoundaryPoint& foot = g.past.is_infinity() ? g.future : g.past;
        if (base.exact() && !foot.is_infinity()) {
            if (!real_eq(base.xe(), foot.real())) throw domain_error("base not on the geodesic");
        } else {
            double fx = to_double(foot.real());
            if (std::abs(base.x() - fx) > tol * std::max(1.0, std::abs(fx)))
                throw domain_error("base not on the geodesic");
        }
        return UnitTangent{g, base};
    }
    if (base.exact()) {
        // (x - p)(f - x) == y^2 whenever representable in one field
        std::optional<Real> dx1 = sub_same_field(base.xe(), g.past.real());
        std::optional<Real> dx2 = sub_same_field(g.future.real(), base.xe());
        if (dx1 && dx2) {
            std::optional<Real> lhs = real_mul_same_field(*dx1, *dx2);
            std::optional<Real> rhs = real_mul_same_field(base.ye(), base.ye());
            if (lhs && rhs) {
                if (compare(*lhs, *rhs) != std::strong_ordering::equal)
                    throw domain_error("base not on the geodesic");
                return UnitTangent{g, base};
            }
        }
    }
    double p = to_double(g.past.real());
    double f = to_double(g.future.real());
    double c = 0.5 * (p + f);
    double r = 0.5 * std::abs(f - p);
    double dev = std::abs((base.x() - c) * (base.x() - c) + base.y() * base.y() - r * r);
    if (dev > tol * std::max(1.0, r * r)) throw domain_error("base not on the geodesic");
    return UnitTangent{g, base};
}

double hyp_distance(const HPoint& z1, const HPoint& z2) {
    if (z1.exact() && z2.exact()) {
        std::optional<Real> dx = sub_same_field(z1.xe(), z2.xe());
        std::optional<Real> dy = sub_same_field(z1.ye(), z2.ye());
        if (dx && dy) {
            std::optional<Real> dx2 = real_mul_same_field(*dx, *dx);
            std::optional<Real> dy2 = real_mul_same_field(*dy, *dy);
            std::optional<Real> yy = real_mul_same_field(z1.ye(), z2.ye());
            if (dx2 && dy2 && yy) {
                std::optional<Real> num = real_add_same_field(*dx2, *dy2);
                if (num) {
                    Real inv = real_recip(real_mobius(2, 0, 0, 1, *yy));
                    std::optional<Real> v = real_mul_same_field(*num, inv);
                    if (v) return acosh1p_to_double(*v);
                }
            }
        }
    }
    double dx = z1.x() - z2.x();
    double dy = z1.y() - z2.y();
    double v = (dx * dx + dy * dy) / (2.0 * z1.y() * z2.y());
    return std::acosh(1.0 + v);
}

HPoint mobius_on_point(const Mat2& m, const HPoint& z) {
    double a = m.m11.get_d(), b = m.m12.get_d(), c = m.m21.get_d(), d = m.m22.get_d();
    double det = a * d - b * c;
    double u = c * z.x() + d;
    double w = c * z.y();
    double den = u * u + w * w;
    double nx = ((a * z.x() + b) * u + a * z.y() * w) / den;
    double ny = det * z.y() / den;
    if (!std::isfinite(nx) || !std::isfinite(ny) || ny <= 0)
        throw precision_error("point left the plane under the map");
    return HPoint(nx, ny);
}

UnitTangent flow(const UnitTangent& u, double t) {
    if (t == 0) return u;
    const Geodesic& g = u.geodesic;
    double nx, ny;
    if (g.vertical()) {
        bool up = g.future.is_infinity();
        nx = u.base.x();
        ny = u.base.y() * std::exp(up ? t : -t);
    } else {
        double p = to_double(g.past.real());
        double f = to_double(g.future.real());
        double x = u.base.x(), y = u.base.y();
        double v = y * (f - p) / ((f - x) * (f - x) + y * y);
        double vp = v * std::exp(t);
        double den = 1.0 + vp * vp;
        nx = (p + f * vp * vp) / den;
        ny = vp * (f - p) / den;
    }
    if (!std::isfinite(nx) || !std::isfinite(ny) || ny <= 0) throw precision_error("flow ran out of precision");
    return UnitTangent{g, HPoint(nx, ny)};
}

HPoint cross_vertical(const Geodesic& g, const Rat& x0) {
    if (g.vertical()) throw domain_error("vertical geodesic does not cross a vertical line");
    Real p = g.past.real();
    Real f = g.future.real();
    Real rx{x0};
    if (!strictly_between(p, f, rx)) throw domain_error("no crossing at the requested line");
    // y^2 = (f - x0)(x0 - p)
    std::optional<Real> a = sub_same_field(f, rx);
    std::optional<Real> b = sub_same_field(rx, p);
    std::optional<Real> y2 = (a && b) ? real_mul_same_field(*a, *b) : std::nullopt;
    if (y2) {
        if (const Rat* r = std::get_if<Rat>(&*y2)) {
            // sqrt(n/d) = sqrt(n d)/d
            BigInt n = r->get_num(), d = r->get_den();
            Real y = make_real_value(0, 1, d, n * d);
            return HPoint(rx, y);
        }
        return HPoint(to_double(rx), std::sqrt(to_double(*y2)));
    }
    double pd = to_double(p), fd = to_double(f), xd = to_double(rx);
    return HPoint(xd, std::sqrt((fd - xd) * (xd - pd)));
}

double crossing_flow_time(const Geodesic& g, const Rat& x1, const Rat& x2) {
    if (g.vertical()) throw domain_error("vertical geodesic does not cross a vertical line");
    Real p = g.past.real();
    Real f = g.future.real();
    if (!strictly_between(p, f, Real(x1)) || !strictly_between(p, f, Real(x2)))
        throw domain_error("no crossing at the requested line");
    if (x1 == x2) return 0.0;
    BigInt d1 = x1.get_den(), d2 = x2.get_den();
    BigInt D = d1 * d2 / gcd(d1, d2);
    BigInt X1 = x1.get_num() * (D / d1);
    BigInt X2 = x2.get_num() * (D / d2);
    // t = (1/2) ln[ (x2-p)(f-x1) / ((x1-p)(f-x2)) ], split per foot so each
    // factor stays inside that foot's field
    Real r1 = real_mobius(-D, X2, -D, X1, p);
    Real r2 = real_mobius(D, -X1, D, -X2, f);
    if (real_sign(r1) <= 0 || real_sign(r2) <= 0) throw domain_error("crossings out of order");
    // Halving is exact, so the only rounding is the one inside the log sum.
    return 0.5 * log_product_to_double(r1, r2);
}

FordCircle ford_circle(const Rat& p) {
    BigInt q = p.get_den();
    return FordCircle{p, make_rat(1, 2 * q * q)};
}

int ford_tangency(const Rat& a, const Rat& b) {
    FordCircle ca = ford_circle(a), cb = ford_circle(b);
    Rat dx = ca.x - cb.x;
    Rat dy = ca.radius - cb.radius;
    Rat sum = ca.radius + cb.radius;
    Rat v = dx * dx + dy * dy - sum * sum;
    return sgn(v);
}

}  // namespace cutseq
