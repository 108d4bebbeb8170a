#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace cutseq {

using BigInt = mpz_class;
using Rat = mpq_class;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct cusp_error : domain_error {
    using domain_error::domain_error;
};
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// den == 0 throws; result is reduced with positive denominator.
Rat make_rat(const BigInt& num, const BigInt& den);
BigInt rat_floor(const Rat& x);
bool rat_is_integer(const Rat& x);

// Sign of A + B*sqrt(d) for squarefree d > 1. Exact, zero only when A == B == 0.
int sign_two_term(const BigInt& A, const BigInt& B, const BigInt& d);
// Sign of X + Y*sqrt(d1) + Z*sqrt(d2) for distinct squarefree d1, d2 > 1 and Y, Z != 0.
// Never zero (1, sqrt(d1), sqrt(d2) are rationally independent).
int sign_three_term(const BigInt& X, const BigInt& Y, const BigInt& d1,
                    const BigInt& Z, const BigInt& d2);

// Largest square factor is extracted from d: returns (k, m) with d = k^2 * m, m squarefree.
std::pair<BigInt, BigInt> extract_square(const BigInt& d);

// Value (a + b*sqrt(d))/c, canonical: d squarefree > 1, b != 0, c > 0, gcd(a,b,c) = 1.
class QuadSurd {
  public:
    QuadSurd(BigInt a, BigInt b, BigInt c, BigInt d);
    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    const BigInt& d() const { return d_; }
    QuadSurd conjugate() const;  // (a - b*sqrt(d))/c
    Rat norm() const;            // x * conjugate(x) = (a^2 - b^2 d)/c^2
    int sign() const;
    bool operator==(const QuadSurd& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }

  private:
    BigInt a_, b_, c_, d_;
};

inline QuadSurd surd_conjugate(const QuadSurd& x) { return x.conjugate(); }

using Real = std::variant<Rat, QuadSurd>;

// Collapses degenerate inputs (b == 0, or square radicand) to a rational.
Real make_real_value(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d);

struct Infinity {
    bool operator==(const Infinity&) const { return true; }
};

class BoundaryPoint {
  public:
    BoundaryPoint(Rat r) : v_(std::move(r)) {}
    BoundaryPoint(QuadSurd s) : v_(std::move(s)) {}
    BoundaryPoint(Infinity i) : v_(i) {}
    BoundaryPoint(const Real& r);
    static BoundaryPoint infinity() { return BoundaryPoint(Infinity{}); }

    bool is_infinity() const { return std::holds_alternative<Infinity>(v_); }
    bool is_rational() const { return std::holds_alternative<Rat>(v_); }
    bool is_surd() const { return std::holds_alternative<QuadSurd>(v_); }
    const Rat& rat() const { return std::get<Rat>(v_); }
    const QuadSurd& surd() const { return std::get<QuadSurd>(v_); }
    Real real() const;  // throws domain_error on infinity

    bool operator==(const BoundaryPoint& o) const;

  private:
    std::variant<Rat, QuadSurd, Infinity> v_;
};

std::strong_ordering compare(const Real& x, const Real& y);
// Total order with Infinity above every finite value.
std::strong_ordering compare(const BoundaryPoint& x, const BoundaryPoint& y);

int real_sign(const Real& x);
bool real_eq(const Real& x, const Real& y);
Real real_neg(const Real& x);
Real real_recip(const Real& x);  // throws domain_error on 0
Real real_add_int(const Real& x, const BigInt& n);
// (m11 x + m12)/(m21 x + m22); throws domain_error on a pole (rational x only) or zero determinant.
Real real_mobius(const BigInt& m11, const BigInt& m12, const BigInt& m21, const BigInt& m22,
                 const Real& x);
BigInt floor_of(const Real& x);
bool real_is_integer(const Real& x);
// Product when both factors live in the same quadratic field (or either is rational).
std::optional<Real> real_mul_same_field(const Real& x, const Real& y);
// Sum under the same field restriction.
std::optional<Real> real_add_same_field(const Real& x, const Real& y);
Rat real_to_rat(const Real& x);  // throws domain_error if irrational

struct Mat2 {
    BigInt m11, m12, m21, m22;
    BigInt det() const { return m11 * m22 - m12 * m21; }
    Mat2 operator*(const Mat2& o) const {
        return Mat2{m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                    m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    bool operator==(const Mat2& o) const {
        return m11 == o.m11 && m12 == o.m12 && m21 == o.m21 && m22 == o.m22;
    }
    static Mat2 identity() { return Mat2{1, 0, 0, 1}; }
    // T^k
    static Mat2 translation(const BigInt& k) { return Mat2{1, k, 0, 1}; }
    std::string str() const;
};

inline const Mat2 S_MAT{0, -1, 1, 0};
inline const Mat2 T_MAT{1, 1, 0, 1};

// Total on boundary points: pole maps to Infinity, Infinity maps to m11/m21.
BoundaryPoint mobius_apply(const Mat2& m, const BoundaryPoint& p);

// Value grammar: `-?[0-9]+`, `p/q`, `(a+b*sqrt(d))/c` with optional parts, `inf`.
std::string to_string(const Rat& r);
std::string to_string(const QuadSurd& s);
std::string to_string(const Real& x);
std::string to_string(const BoundaryPoint& p);
BoundaryPoint parse_boundary(const std::string& s);
Real parse_real(const std::string& s);

// Floating conversions go through MPFR at the given working precision.
double to_double(const Real& x, int prec_bits = 192);
double to_double(const Rat& x);
// Directed rounding: [lower, upper] enclosure of x as doubles.
std::pair<double, double> to_double_interval(const Real& x, int prec_bits);
// ln(x) for x > 0, computed at prec_bits then rounded to double.
double log_to_double(const Real& x, int prec_bits = 192);
// ln(x*y) as ln(x) + ln(y) with a single final rounding; x and y may live in
// different quadratic fields, so the product itself is never formed.
double log_product_to_double(const Real& x, const Real& y, int prec_bits = 192);
// acosh(1 + v) for v >= 0, computed at prec_bits then rounded to double.
double acosh1p_to_double(const Real& v, int prec_bits = 192);
// Sign of fl(x) - fl(y) at prec_bits; 0 when |fl(x) - fl(y)| <= 2^gap_exp.
int float_compare_with_gap(const Real& x, const Real& y, int prec_bits, long gap_exp);

std::string fmt17(double v);  // shortest-ish 17 significant digit decimal

}  // namespace cutseq
