#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cutseq/hyperbolic.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace cutseq;

namespace {

BoundaryPoint bp(const char* s) { return parse_boundary(s); }

Geodesic fig_geodesic() {
    // feet 1 - sqrt(3) and 1 + sqrt(3)
    return geodesic_through(bp("(1-1*sqrt(3))/1"), bp("(1+1*sqrt(3))/1"));
}

Mat2 random_word(std::mt19937_64& rng, int len) {
    Mat2 m = Mat2::identity();
    for (int i = 0; i < len; ++i) {
        if (rng() % 2) {
            m = m * S_MAT;
        } else {
            long k = static_cast<long>(rng() % 5) - 2;
            m = m * Mat2::translation(k);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("geodesics from feet") {
    Geodesic v = geodesic_through(bp("0"), bp("inf"));
    CHECK(v.vertical());
    CHECK_THROWS_AS(v.center(), domain_error);

    Geodesic u = geodesic_through(bp("-1"), bp("1"));
    CHECK_FALSE(u.vertical());
    CHECK(real_eq(u.center(), Real(Rat(0))));
    CHECK(real_eq(u.radius(), Real(Rat(1))));

    Geodesic g = fig_geodesic();
    CHECK(real_eq(g.center(), Real(Rat(1))));
    CHECK(real_eq(g.radius(), make_real_value(0, 1, 1, 3)));

    CHECK_THROWS_AS(geodesic_through(bp("1/2"), bp("1/2")), domain_error);

    Geodesic mixed = geodesic_through(bp("(0+1*sqrt(2))/1"), bp("(0+1*sqrt(3))/1"));
    CHECK_THROWS_AS(mixed.center(), domain_error);

    CHECK(g.reversed().past == g.future);
    CHECK(g.mirrored().past == bp("(-1+1*sqrt(3))/1"));
    CHECK(g.mirrored().future == bp("(-1-1*sqrt(3))/1"));
    CHECK(geodesic_through(bp("1"), bp("inf")).mirrored().past == bp("-1"));
}

TEST_CASE("mobius action on geodesics") {
    Geodesic axis = geodesic_through(bp("0"), bp("inf"));
    Geodesic s = mobius_on_geodesic(S_MAT, axis);
    CHECK(s.past == bp("inf"));
    CHECK(s.future == bp("0"));

    Geodesic u = mobius_on_geodesic(T_MAT, geodesic_through(bp("-1"), bp("1")));
    CHECK(u.past == bp("0"));
    CHECK(u.future == bp("2"));

    Geodesic g = mobius_on_geodesic(Mat2{0, -1, 1, -2}, fig_geodesic());
    CHECK(g.past == bp("(-1+1*sqrt(3))/2"));
    CHECK(g.future == bp("(-1-1*sqrt(3))/2"));
}

TEST_CASE("hyperbolic distance") {
    HPoint i1(Real(Rat(0)), Real(Rat(1)));
    HPoint ie(0.0, std::exp(1.0));
    CHECK(hyp_distance(i1, ie) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(hyp_distance(i1, i1) == 0.0);

    HPoint a(Real(Rat(0)), make_real_value(0, 1, 1, 2));
    HPoint b(Real(Rat(2)), make_real_value(0, 1, 1, 2));
    double d = hyp_distance(a, b);
    CHECK(d == doctest::Approx(1.3169578969248168).epsilon(1e-15));
    CHECK(hyp_distance(b, a) == d);

    // exact and floating paths agree
    std::mt19937_64 rng(21);
    for (int k = 0; k < 200; ++k) {
        Rat x1 = make_rat(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
        Rat y1 = make_rat(static_cast<long>(rng() % 30) + 1, static_cast<long>(rng() % 7) + 1);
        Rat x2 = make_rat(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
        Rat y2 = make_rat(static_cast<long>(rng() % 30) + 1, static_cast<long>(rng() % 7) + 1);
        HPoint pe{Real(x1), Real(y1)};
        HPoint qe{Real(x2), Real(y2)};
        HPoint pf{to_double(x1), to_double(y1)};
        HPoint qf{to_double(x2), to_double(y2)};
        CHECK(hyp_distance(pe, qe) == doctest::Approx(hyp_distance(pf, qf)).epsilon(1e-12));
    }
}

TEST_CASE("distance is a mobius invariant") {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 100; ++k) {
        Mat2 m = random_word(rng, 6);
        double x1 = (static_cast<double>(rng() % 2000) - 1000.0) / 250.0;
        double y1 = (static_cast<double>(rng() % 900) + 100.0) / 300.0;
        double x2 = (static_cast<double>(rng() % 2000) - 1000.0) / 250.0;
        double y2 = (static_cast<double>(rng() % 900) + 100.0) / 300.0;
        HPoint z1(x1, y1), z2(x2, y2);
        double before = hyp_distance(z1, z2);
        double after = hyp_distance(mobius_on_point(m, z1), mobius_on_point(m, z2));
        CHECK(after == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("geodesic flow") {
    Geodesic axis = geodesic_through(bp("0"), bp("inf"));
    UnitTangent u = unit_tangent(axis, HPoint(Real(Rat(0)), Real(Rat(1))));
    UnitTangent moved = flow(u, 1.0);
    CHECK(moved.base.x() == doctest::Approx(0.0));
    CHECK(moved.base.y() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));

    UnitTangent frozen = flow(u, 0.0);
    CHECK(frozen.base.exact());

    // downward vertical
    UnitTangent dn = flow(unit_tangent(axis.reversed(), HPoint(0.0, 1.0)), 2.0);
    CHECK(dn.base.y() == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));

    Geodesic g = fig_geodesic();
    HPoint start = cross_vertical(g, Rat(0));
    UnitTangent v = unit_tangent(g, start);

    // group law
    UnitTangent one = flow(v, 1.0);
    UnitTangent half2 = flow(flow(v, 0.5), 0.5);
    CHECK(one.base.x() == doctest::Approx(half2.base.x()).epsilon(1e-12));
    CHECK(one.base.y() == doctest::Approx(half2.base.y()).epsilon(1e-12));

    // flow by the crossing time lands on the next crossing
    double t = crossing_flow_time(g, Rat(0), Rat(2));
    UnitTangent w = flow(v, t);
    CHECK(w.base.x() == doctest::Approx(2.0).epsilon(1e-12));

    // stays on the circle, and flowing back returns
    double c = 1.0, r = std::sqrt(3.0);
    for (double s : {0.25, 1.0, -0.75, 3.0}) {
        UnitTangent m = flow(v, s);
        double dev = (m.base.x() - c) * (m.base.x() - c) + m.base.y() * m.base.y() - r * r;
        CHECK(std::abs(dev) < 1e-12);
        UnitTangent back = flow(m, -s);
        CHECK(back.base.x() == doctest::Approx(start.x()).epsilon(1e-12));
        CHECK(back.base.y() == doctest::Approx(start.y()).epsilon(1e-12));
        // arclength matches the distance between base points
        CHECK(hyp_distance(HPoint(m.base.x(), m.base.y()), HPoint(start.x(), start.y())) ==
              doctest::Approx(std::abs(s)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(flow(v, 800.0), precision_error);
}

TEST_CASE("flow commutes with the group action") {
    std::mt19937_64 rng(23);
    Geodesic g = fig_geodesic();
    HPoint start = cross_vertical(g, Rat(0));
    for (int k = 0; k < 100; ++k) {
        Mat2 m = random_word(rng, 5);
        double t = (static_cast<double>(rng() % 4000) - 2000.0) / 1000.0;
        UnitTangent u = unit_tangent(g, start);
        HPoint a = flow(UnitTangent{mobius_on_geodesic(m, g), mobius_on_point(m, u.base)}, t).base;
        HPoint b = mobius_on_point(m, flow(u, t).base);
        CHECK(a.x() == doctest::Approx(b.x()).epsilon(1e-11));
        CHECK(a.y() == doctest::Approx(b.y()).epsilon(1e-11));
    }
}

TEST_CASE("crossings with vertical lines") {
    Geodesic g = fig_geodesic();
    HPoint z0 = cross_vertical(g, Rat(0));
    REQUIRE(z0.exact());
    CHECK(real_eq(z0.xe(), Real(Rat(0))));
    CHECK(real_eq(z0.ye(), make_real_value(0, 1, 1, 2)));

    HPoint z2 = cross_vertical(g, Rat(2));
    CHECK(real_eq(z2.ye(), make_real_value(0, 1, 1, 2)));

    HPoint apex = cross_vertical(geodesic_through(bp("-1"), bp("1")), Rat(0));
    REQUIRE(apex.exact());
    CHECK(real_eq(apex.ye(), Real(Rat(1))));

    CHECK_THROWS_AS(cross_vertical(g, Rat(3)), domain_error);
    CHECK_THROWS_AS(cross_vertical(g, Rat(-1)), domain_error);
    CHECK_THROWS_AS(cross_vertical(geodesic_through(bp("0"), bp("inf")), Rat(0)), domain_error);

    // rational feet: the height squares back to the chord product exactly
    std::mt19937_64 rng(24);
    for (int k = 0; k < 200; ++k) {
        long pn = static_cast<long>(rng() % 60) - 30;
        long fn = pn + 1 + static_cast<long>(rng() % 40);
        long pd = static_cast<long>(rng() % 6) + 1;
        long fd = static_cast<long>(rng() % 6) + 1;
        Rat pr = make_rat(pn, pd), fr = make_rat(fn, fd);
        if (pr == fr) continue;
        if (pr > fr) std::swap(pr, fr);
        Rat x0 = (pr + fr) / 2 + make_rat(1, 7);
        if (!(pr < x0 && x0 < fr)) continue;
        Geodesic h = geodesic_through(BoundaryPoint(Real(pr)), BoundaryPoint(Real(fr)));
        HPoint z = cross_vertical(h, x0);
        REQUIRE(z.exact());
        std::optional<Real> ysq = real_mul_same_field(z.ye(), z.ye());
        REQUIRE(ysq.has_value());
        Rat expect = (fr - x0) * (x0 - pr);
        CHECK(real_eq(*ysq, Real(expect)));
        // and the validating factory accepts it
        CHECK_NOTHROW(unit_tangent(h, z));
    }

    // same-field surd feet with irrational chord product fall back to floating
    Geodesic s = geodesic_through(bp("0"), bp("(0+1*sqrt(2))/1"));
    HPoint zs = cross_vertical(s, make_rat(1, 2));
    CHECK_FALSE(zs.exact());
    CHECK(zs.y() == doctest::Approx(std::sqrt((std::sqrt(2.0) - 0.5) * 0.5)).epsilon(1e-14));
}

TEST_CASE("tangent validation") {
    Geodesic g = fig_geodesic();
    CHECK_THROWS_AS(unit_tangent(g, HPoint(Real(Rat(0)), Real(Rat(1)))), domain_error);
    CHECK_NOTHROW(unit_tangent(g, cross_vertical(g, Rat(0))));
    CHECK_NOTHROW(unit_tangent(g, HPoint(0.0, std::sqrt(2.0))));
    CHECK_THROWS_AS(unit_tangent(g, HPoint(0.0, 1.41)), domain_error);

    Geodesic axis = geodesic_through(bp("0"), bp("inf"));
    CHECK_NOTHROW(unit_tangent(axis, HPoint(0.0, 5.0)));
    CHECK_THROWS_AS(unit_tangent(axis, HPoint(0.001, 5.0)), domain_error);
    CHECK_THROWS_AS(unit_tangent(axis, HPoint(Real(make_rat(1, 100)), Real(Rat(5)))), domain_error);
}

TEST_CASE("crossing flow times") {
    Geodesic g = fig_geodesic();
    double t02 = crossing_flow_time(g, Rat(0), Rat(2));
    CHECK(t02 == doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-15));

    // golden geodesic: time across one period equals twice the log eigenvalue
    Geodesic gold = geodesic_through(bp("(1-1*sqrt(5))/2"), bp("(1+1*sqrt(5))/2"));
    double t01 = crossing_flow_time(gold, Rat(0), Rat(1));
    CHECK(t01 == doctest::Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-15));
    CHECK(t01 == doctest::Approx(2.0 * std::log((1.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-14));

    // signed, additive along the geodesic
    CHECK(crossing_flow_time(g, Rat(2), Rat(0)) == doctest::Approx(-t02).epsilon(1e-15));
    double a = crossing_flow_time(g, Rat(0), make_rat(3, 2));
    double b = crossing_flow_time(g, make_rat(3, 2), Rat(2));
    CHECK(a + b == doctest::Approx(t02).epsilon(1e-13));

    // translation invariance
    Geodesic gt = mobius_on_geodesic(Mat2::translation(7), g);
    CHECK(crossing_flow_time(gt, Rat(7), Rat(9)) == doctest::Approx(t02).epsilon(1e-14));

    // orientation reversal flips the sign
    CHECK(crossing_flow_time(g.reversed(), Rat(0), Rat(2)) == doctest::Approx(-t02).epsilon(1e-15));

    CHECK_THROWS_AS(crossing_flow_time(g, Rat(0), Rat(5)), domain_error);
    CHECK_THROWS_AS(crossing_flow_time(geodesic_through(bp("0"), bp("inf")), Rat(0), Rat(1)),
                    domain_error);
    CHECK(crossing_flow_time(g, Rat(1), Rat(1)) == 0.0);
}

TEST_CASE("ford circles") {
    FordCircle c0 = ford_circle(Rat(0));
    CHECK(c0.x == 0);
    CHECK(c0.radius == make_rat(1, 2));

    FordCircle ch = ford_circle(make_rat(1, 2));
    CHECK(ch.radius == make_rat(1, 8));

    CHECK(ford_tangency(Rat(0), Rat(1)) == 0);
    CHECK(ford_tangency(Rat(0), make_rat(1, 2)) == 0);
    CHECK(ford_tangency(Rat(0), make_rat(2, 5)) != 0);

    // tangency happens exactly at unimodular pairs; others are disjoint
    for (long q1 = 1; q1 <= 12; ++q1)
        for (long p1 = -6; p1 <= 12; ++p1) {
            if (std::gcd(p1, q1) != 1) continue;
            for (long q2 = 1; q2 <= 12; ++q2)
                for (long p2 = -6; p2 <= 12; ++p2) {
                    if (std::gcd(p2, q2) != 1) continue;
                    Rat a = make_rat(p1, q1), b = make_rat(p2, q2);
                    if (a == b) continue;
                    long uni = p1 * q2 - p2 * q1;
                    int s = ford_tangency(a, b);
                    if (std::abs(uni) == 1) {
                        CHECK(s == 0);
                    } else {
                        CHECK(s > 0);
                    }
                }
        }
}
