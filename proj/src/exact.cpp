#include "cutseq/exact.hpp"

#include <mpfr.h>

#include <cctype>
#include <cstdio>
#include <mutex>
#include <set>

namespace cutseq {

Rat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw domain_error("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

BigInt rat_floor(const Rat& x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

bool rat_is_integer(const Rat& x) { return x.get_den() == 1; }

int sign_two_term(const BigInt& A, const BigInt& B, const BigInt& d) {
    int sa = sgn(A), sb = sgn(B);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Mixed signs: |A| vs |B|sqrt(d) decides; equality is impossible since d is
    // squarefree > 1, so A^2 = B^2 d has no nonzero solutions.
    BigInt lhs = A * A;
    BigInt rhs = B * B * d;
    int c = cmp(lhs, rhs);
    return c > 0 ? sa : sb;
}

int sign_three_term(const BigInt& X, const BigInt& Y, const BigInt& d1, const BigInt& Z,
                    const BigInt& d2) {
    // value = t + Z*sqrt(d2) with t = X + Y*sqrt(d1); compare t against u = -Z*sqrt(d2).
    int st = sign_two_term(X, Y, d1);
    int su = -sgn(Z);
    if (st != su) return st > su ? 1 : -1;
    // Same nonzero sign: square both sides.
    // t^2 - u^2 = (X^2 + Y^2 d1 - Z^2 d2) + 2XY*sqrt(d1)
    BigInt A = X * X + Y * Y * d1 - Z * Z * d2;
    BigInt B = 2 * X * Y;
    int sq = sign_two_term(A, B, d1);
    return st > 0 ? sq : -sq;
}

namespace {

// Values seen to be squarefree already; radicands are invariant along Mobius
// orbits, so this removes nearly all extraction work from hot loops.
std::set<unsigned long>& squarefree_memo() {
    static std::set<unsigned long> memo;
    return memo;
}

}  // namespace

std::pair<BigInt, BigInt> extract_square(const BigInt& d) {
    if (d <= 0) throw domain_error("radicand must be positive");
    if (d.fits_ulong_p()) {
        unsigned long v = d.get_ui();
        if (v <= 3 || squarefree_memo().count(v)) return {BigInt(1), d};
    }
    BigInt k = 1, m = d;
    // Trial division up to cbrt(m); the remaining cofactor has at most two
    // prime factors, so a perfect-square check finishes the job exactly.
    BigInt i = 2;
    while (i * i * i <= m) {
        BigInt isq = i * i;
        while (mpz_divisible_p(m.get_mpz_t(), isq.get_mpz_t())) {
            m /= isq;
            k *= i;
        }
        i += (i == 2) ? 1 : 2;
    }
    if (mpz_perfect_square_p(m.get_mpz_t())) {
        BigInt r;
        mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
        k *= r;
        m = 1;
    }
    if (m > 1 && m.fits_ulong_p()) squarefree_memo().insert(m.get_ui());
    return {k, m};
}

QuadSurd::QuadSurd(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (c_ == 0) throw domain_error("zero denominator in surd");
    if (d_ <= 0) throw domain_error("radicand must be positive");
    std::pair<BigInt, BigInt> km = extract_square(d_);
    b_ *= km.first;
    d_ = km.second;
    if (d_ == 1) throw domain_error("square radicand; value is rational");
    if (b_ == 0) throw domain_error("zero surd part; value is rational");
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

QuadSurd QuadSurd::conjugate() const { return QuadSurd(a_, -b_, c_, d_); }

Rat QuadSurd::norm() const {
    BigInt num = a_ * a_ - b_ * b_ * d_;
    BigInt den = c_ * c_;
    return make_rat(num, den);
}

int QuadSurd::sign() const { return sign_two_term(a_, b_, d_); }

Real make_real_value(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
    if (c == 0) throw domain_error("zero denominator");
    if (d < 0) throw domain_error("negative radicand");
    if (b == 0 || d == 0) return make_rat(a, c);
    std::pair<BigInt, BigInt> km = extract_square(d);
    if (km.second == 1) {
        BigInt num = a + b * km.first;
        return make_rat(num, c);
    }
    BigInt bk = b * km.first;
    return QuadSurd(a, bk, c, km.second);
}

BoundaryPoint::BoundaryPoint(const Real& r) : v_(Rat(0)) {
    if (std::holds_alternative<Rat>(r))
        v_ = std::get<Rat>(r);
    else
        v_ = std::get<QuadSurd>(r);
}

Real BoundaryPoint::real() const {
    if (is_rational()) return rat();
    if (is_surd()) return surd();
    throw domain_error("infinite boundary point has no finite value");
}

bool BoundaryPoint::operator==(const BoundaryPoint& o) const {
    if (is_infinity() || o.is_infinity()) return is_infinity() && o.is_infinity();
    return compare(real(), o.real()) == std::strong_ordering::equal;
}

namespace {

std::strong_ordering from_sign(int s) {
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering compare(const Real& x, const Real& y) {
    const Rat* rx = std::get_if<Rat>(&x);
    const Rat* ry = std::get_if<Rat>(&y);
    if (rx && ry) return from_sign(cmp(*rx, *ry));
    if (rx && !ry) {
        // p/q - (a + b sqrt(d))/c = ((pc - aq) - bq sqrt(d)) / (qc)
        const QuadSurd& s = std::get<QuadSurd>(y);
        BigInt A = rx->get_num() * s.c() - s.a() * rx->get_den();
        BigInt B = -s.b() * rx->get_den();
        return from_sign(sign_two_term(A, B, s.d()));
    }
    if (!rx && ry) {
        std::strong_ordering o = compare(y, x);
        if (o == std::strong_ordering::less) return std::strong_ordering::greater;
        if (o == std::strong_ordering::greater) return std::strong_ordering::less;
        return std::strong_ordering::equal;
    }
    const QuadSurd& s1 = std::get<QuadSurd>(x);
    const QuadSurd& s2 = std::get<QuadSurd>(y);
    BigInt A = s1.a() * s2.c() - s2.a() * s1.c();
    if (s1.d() == s2.d()) {
        BigInt B = s1.b() * s2.c() - s2.b() * s1.c();
        return from_sign(sign_two_term(A, B, s1.d()));
    }
    // Distinct squarefree radicands: the difference is never zero.
    BigInt Y = s1.b() * s2.c();
    BigInt Z = -s2.b() * s1.c();
    return from_sign(sign_three_term(A, Y, s1.d(), Z, s2.d()));
}

std::strong_ordering compare(const BoundaryPoint& x, const BoundaryPoint& y) {
    if (x.is_infinity() && y.is_infinity()) return std::strong_ordering::equal;
    if (x.is_infinity()) return std::strong_ordering::greater;
    if (y.is_infinity()) return std::strong_ordering::less;
    return compare(x.real(), y.real());
}

int real_sign(const Real& x) {
    if (const Rat* r = std::get_if<Rat>(&x)) return sgn(*r);
    return std::get<QuadSurd>(x).sign();
}

bool real_eq(const Real& x, const Real& y) {
    return compare(x, y) == std::strong_ordering::equal;
}

Real real_neg(const Real& x) {
    if (const Rat* r = std::get_if<Rat>(&x)) return Rat(-*r);
    const QuadSurd& s = std::get<QuadSurd>(x);
    return QuadSurd(-s.a(), -s.b(), s.c(), s.d());
}

Real real_recip(const Real& x) {
    if (const Rat* r = std::get_if<Rat>(&x)) {
        if (*r == 0) throw domain_error("reciprocal of zero");
        return make_rat(r->get_den(), r->get_num());
    }
    const QuadSurd& s = std::get<QuadSurd>(x);
    // c/(a + b sqrt(d)) = (ca - cb sqrt(d)) / (a^2 - b^2 d)
    BigInt den = s.a() * s.a() - s.b() * s.b() * s.d();
    return QuadSurd(s.c() * s.a(), -s.c() * s.b(), den, s.d());
}

Real real_add_int(const Real& x, const BigInt& n) {
    if (const Rat* r = std::get_if<Rat>(&x)) return Rat(*r + n);
    const QuadSurd& s = std::get<QuadSurd>(x);
    BigInt a = s.a() + n * s.c();
    return QuadSurd(a, s.b(), s.c(), s.d());
}

Real real_mobius(const BigInt& m11, const BigInt& m12, const BigInt& m21, const BigInt& m22,
                 const Real& x) {
    BigInt det = m11 * m22 - m12 * m21;
    if (det == 0) throw domain_error("singular coefficient matrix");
    if (const Rat* r = std::get_if<Rat>(&x)) {
        BigInt num = m11 * r->get_num() + m12 * r->get_den();
        BigInt den = m21 * r->get_num() + m22 * r->get_den();
        if (den == 0) throw domain_error("pole of Mobius map");
        return make_rat(num, den);
    }
    const QuadSurd& s = std::get<QuadSurd>(x);
    // (P + Q sqrt(d)) / (R + S sqrt(d)), rationalized; the surd coefficient of
    // the result is b*c*det != 0, so irrationality is preserved.
    BigInt P = m11 * s.a() + m12 * s.c();
    BigInt Q = m11 * s.b();
    BigInt R = m21 * s.a() + m22 * s.c();
    BigInt S = m21 * s.b();
    BigInt den = R * R - S * S * s.d();
    BigInt na = P * R - Q * S * s.d();
    BigInt nb = Q * R - P * S;
    return QuadSurd(na, nb, den, s.d());
}

BigInt floor_of(const Real& x) {
    if (const Rat* r = std::get_if<Rat>(&x)) return rat_floor(*r);
    const QuadSurd& s = std::get<QuadSurd>(x);
    // floor((a + t)/c) with t = floor(b sqrt(d)); the fractional part of
    // b sqrt(d) never carries the quotient across an integer since b sqrt(d)
    // is irrational.
    BigInt b2d = s.b() * s.b() * s.d();
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), b2d.get_mpz_t());
    BigInt t = (s.b() > 0) ? r : BigInt(-r - 1);
    BigInt num = s.a() + t;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), s.c().get_mpz_t());
    return q;
}

bool real_is_integer(const Real& x) {
    const Rat* r = std::get_if<Rat>(&x);
    return r && rat_is_integer(*r);
}

std::optional<Real> real_mul_same_field(const Real& x, const Real& y) {
    const Rat* rx = std::get_if<Rat>(&x);
    const Rat* ry = std::get_if<Rat>(&y);
    if (rx && ry) return Real(Rat(*rx * *ry));
    if (rx || ry) {
        const Rat& r = rx ? *rx : *ry;
        const QuadSurd& s = std::get<QuadSurd>(rx ? y : x);
        if (r == 0) return Real(Rat(0));
        BigInt a = r.get_num() * s.a();
        BigInt b = r.get_num() * s.b();
        BigInt c = r.get_den() * s.c();
        return Real(QuadSurd(a, b, c, s.d()));
    }
    const QuadSurd& s1 = std::get<QuadSurd>(x);
    const QuadSurd& s2 = std::get<QuadSurd>(y);
    if (s1.d() != s2.d()) return std::nullopt;
    BigInt a = s1.a() * s2.a() + s1.b() * s2.b() * s1.d();
    BigInt b = s1.a() * s2.b() + s1.b() * s2.a();
    BigInt c = s1.c() * s2.c();
    if (b == 0) return Real(make_rat(a, c));
    return Real(QuadSurd(a, b, c, s1.d()));
}

std::optional<Real> real_add_same_field(const Real& x, const Real& y) {
    const Rat* rx = std::get_if<Rat>(&x);
    const Rat* ry = std::get_if<Rat>(&y);
    if (rx && ry) return Real(Rat(*rx + *ry));
    if (rx || ry) {
        const Rat& r = rx ? *rx : *ry;
        const QuadSurd& s = std::get<QuadSurd>(rx ? y : x);
        BigInt a = s.a() * r.get_den() + r.get_num() * s.c();
        BigInt b = s.b() * r.get_den();
        BigInt c = s.c() * r.get_den();
        return Real(QuadSurd(a, b, c, s.d()));
    }
    const QuadSurd& s1 = std::get<QuadSurd>(x);
    const QuadSurd& s2 = std::get<QuadSurd>(y);
    if (s1.d() != s2.d()) return std::nullopt;
    BigInt a = s1.a() * s2.c() + s2.a() * s1.c();
    BigInt b = s1.b() * s2.c() + s2.b() * s1.c();
    BigInt c = s1.c() * s2.c();
    if (b == 0) return Real(make_rat(a, c));
    return Real(QuadSurd(a, b, c, s1.d()));
}

Rat real_to_rat(const Real& x) {
    if (const Rat* r = std::get_if<Rat>(&x)) return *r;
    throw domain_error("irrational value where a rational was required");
}

std::string Mat2::str() const {
    return "[[" + m11.get_str() + "," + m12.get_str() + "],[" + m21.get_str() + "," +
           m22.get_str() + "]]";
}

BoundaryPoint mobius_apply(const Mat2& m, const BoundaryPoint& p) {
    if (m.det() == 0) throw domain_error("singular matrix");
    if (p.is_infinity()) {
        if (m.m21 == 0) return BoundaryPoint::infinity();
        return BoundaryPoint(make_rat(m.m11, m.m21));
    }
    if (p.is_rational()) {
        const Rat& r = p.rat();
        BigInt num = m.m11 * r.get_num() + m.m12 * r.get_den();
        BigInt den = m.m21 * r.get_num() + m.m22 * r.get_den();
        if (den == 0) return BoundaryPoint::infinity();
        return BoundaryPoint(make_rat(num, den));
    }
    Real y = real_mobius(m.m11, m.m12, m.m21, m.m22, p.surd());
    return BoundaryPoint(y);
}

std::string to_string(const Rat& r) { return r.get_str(); }

std::string to_string(const QuadSurd& s) {
    std::string out = "(" + s.a().get_str();
    if (s.b() >= 0) {
        out += "+" + s.b().get_str();
    } else {
        BigInt nb = -s.b();
        out += "-" + nb.get_str();
    }
    out += "*sqrt(" + s.d().get_str() + "))/" + s.c().get_str();
    return out;
}

std::string to_string(const Real& x) {
    if (const Rat* r = std::get_if<Rat>(&x)) return to_string(*r);
    return to_string(std::get<QuadSurd>(x));
}

std::string to_string(const BoundaryPoint& p) {
    if (p.is_infinity()) return "inf";
    return to_string(p.real());
}

namespace {

BigInt parse_int_strict(const std::string& s) {
    if (s.empty()) throw parse_error("empty integer");
    size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw parse_error("bad integer: " + s);
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw parse_error("bad integer: " + s);
    return BigInt(s, 10);
}

// Prefix of "...sqrt(d)...": one of "", "-", "+", "A+", "A-", "B*", "A+B*", "A-B*".
void parse_surd_prefix(const std::string& prefix, BigInt& a, BigInt& b) {
    a = 0;
    b = 1;
    if (prefix.empty()) return;
    if (prefix.back() == '*') {
        std::string pb = prefix.substr(0, prefix.size() - 1);
        size_t split = std::string::npos;
        for (size_t i = 1; i < pb.size(); ++i)
            if ((pb[i] == '+' || pb[i] == '-') && std::isdigit(static_cast<unsigned char>(pb[i - 1])))
                split = i;
        if (split == std::string::npos) {
            b = parse_int_strict(pb);
        } else {
            a = parse_int_strict(pb.substr(0, split));
            std::string bs = pb.substr(split);
            if (bs == "+" || bs == "-") throw parse_error("missing surd coefficient");
            if (bs[0] == '+') bs = bs.substr(1);
            b = parse_int_strict(bs);
        }
        return;
    }
    char last = prefix.back();
    if (last != '+' && last != '-') throw parse_error("malformed surd: " + prefix);
    b = (last == '-') ? -1 : 1;
    std::string pa = prefix.substr(0, prefix.size() - 1);
    if (!pa.empty()) a = parse_int_strict(pa);
}

}  // namespace

BoundaryPoint parse_boundary(const std::string& in) {
    std::string s;
    for (char ch : in)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw parse_error("empty value");
    if (s == "inf") return BoundaryPoint::infinity();
    if (s.find("sqrt") == std::string::npos) {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return BoundaryPoint(Rat(parse_int_strict(s)));
        BigInt num = parse_int_strict(s.substr(0, slash));
        BigInt den = parse_int_strict(s.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator");
        return BoundaryPoint(make_rat(num, den));
    }
    std::string body = s;
    BigInt c = 1;
    bool have_c = false;
    if (body[0] == '(') {
        int depth = 0;
        size_t close = std::string::npos;
        for (size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '(') depth++;
            if (body[i] == ')') {
                depth--;
                if (depth == 0) {
                    close = i;
                    break;
                }
            }
        }
        if (close == std::string::npos) throw parse_error("unbalanced parentheses");
        std::string tail = body.substr(close + 1);
        body = body.substr(1, close - 1);
        if (!tail.empty()) {
            if (tail[0] != '/') throw parse_error("malformed value: " + s);
            c = parse_int_strict(tail.substr(1));
            have_c = true;
        }
    }
    size_t k = body.find("sqrt(");
    if (k == std::string::npos) throw parse_error("malformed value: " + s);
    size_t close = body.find(')', k + 5);
    if (close == std::string::npos) throw parse_error("unbalanced sqrt");
    BigInt d = parse_int_strict(body.substr(k + 5, close - k - 5));
    std::string after = body.substr(close + 1);
    if (!after.empty()) {
        if (have_c || after[0] != '/') throw parse_error("malformed value: " + s);
        c = parse_int_strict(after.substr(1));
    }
    BigInt a, b;
    parse_surd_prefix(body.substr(0, k), a, b);
    if (c == 0) throw parse_error("zero denominator");
    Real v = make_real_value(a, b, c, d);
    return BoundaryPoint(v);
}

Real parse_real(const std::string& s) {
    BoundaryPoint p = parse_boundary(s);
    if (p.is_infinity()) throw parse_error("finite value required");
    return p.real();
}

namespace {

struct MpfrVal {
    mpfr_t v;
    explicit MpfrVal(int bits) { mpfr_init2(v, bits); }
    ~MpfrVal() { mpfr_clear(v); }
    MpfrVal(const MpfrVal&) = delete;
    MpfrVal& operator=(const MpfrVal&) = delete;
};

void mpfr_from_real_dir(mpfr_t out, const Real& x, mpfr_rnd_t rnd) {
    if (const Rat* r = std::get_if<Rat>(&x)) {
        mpfr_set_q(out, r->get_mpq_t(), rnd);
        return;
    }
    const QuadSurd& s = std::get<QuadSurd>(x);
    // Directed rounding throughout; the sqrt error direction flips with the
    // sign of b, and c > 0 keeps the division direction.
    MpfrVal t(mpfr_get_prec(out));
    mpfr_rnd_t sq = rnd;
    if (s.b() < 0) sq = (rnd == MPFR_RNDD) ? MPFR_RNDU : (rnd == MPFR_RNDU ? MPFR_RNDD : rnd);
    mpfr_set_z(t.v, s.d().get_mpz_t(), sq);
    mpfr_sqrt(t.v, t.v, sq);
    mpfr_mul_z(t.v, t.v, s.b().get_mpz_t(), rnd);
    mpfr_add_z(t.v, t.v, s.a().get_mpz_t(), rnd);
    mpfr_div_z(out, t.v, s.c().get_mpz_t(), rnd);
}

}  // namespace

double to_double(const Real& x, int prec_bits) {
    MpfrVal t(prec_bits);
    mpfr_from_real_dir(t.v, x, MPFR_RNDN);
    return mpfr_get_d(t.v, MPFR_RNDN);
}

double to_double(const Rat& x) { return to_double(Real(x), 192); }

std::pair<double, double> to_double_interval(const Real& x, int prec_bits) {
    MpfrVal lo(prec_bits), hi(prec_bits);
    mpfr_from_real_dir(lo.v, x, MPFR_RNDD);
    mpfr_from_real_dir(hi.v, x, MPFR_RNDU);
    return {mpfr_get_d(lo.v, MPFR_RNDD), mpfr_get_d(hi.v, MPFR_RNDU)};
}

double log_to_double(const Real& x, int prec_bits) {
    if (real_sign(x) <= 0) throw domain_error("log of nonpositive value");
    MpfrVal t(prec_bits);
    mpfr_from_real_dir(t.v, x, MPFR_RNDN);
    mpfr_log(t.v, t.v, MPFR_RNDN);
    return mpfr_get_d(t.v, MPFR_RNDN);
}

double log_product_to_double(const Real& x, const Real& y, int prec_bits) {
    if (real_sign(x) <= 0 || real_sign(y) <= 0) throw domain_error("log of nonpositive value");
    MpfrVal a(prec_bits), b(prec_bits);
    mpfr_from_real_dir(a.v, x, MPFR_RNDN);
    mpfr_log(a.v, a.v, MPFR_RNDN);
    mpfr_from_real_dir(b.v, y, MPFR_RNDN);
    mpfr_log(b.v, b.v, MPFR_RNDN);
    mpfr_add(a.v, a.v, b.v, MPFR_RNDN);
    return mpfr_get_d(a.v, MPFR_RNDN);
}

double acosh1p_to_double(const Real& v, int prec_bits) {
    if (real_sign(v) < 0) throw domain_error("acosh argument below 1");
    MpfrVal t(prec_bits);
    mpfr_from_real_dir(t.v, v, MPFR_RNDN);
    mpfr_add_ui(t.v, t.v, 1, MPFR_RNDN);
    mpfr_acosh(t.v, t.v, MPFR_RNDN);
    return mpfr_get_d(t.v, MPFR_RNDN);
}

int float_compare_with_gap(const Real& x, const Real& y, int prec_bits, long gap_exp) {
    MpfrVal fx(prec_bits), fy(prec_bits), diff(prec_bits), gap(prec_bits);
    mpfr_from_real_dir(fx.v, x, MPFR_RNDN);
    mpfr_from_real_dir(fy.v, y, MPFR_RNDN);
    mpfr_sub(diff.v, fx.v, fy.v, MPFR_RNDN);
    mpfr_set_ui_2exp(gap.v, 1, gap_exp, MPFR_RNDN);
    MpfrVal ad(prec_bits);
    mpfr_abs(ad.v, diff.v, MPFR_RNDN);
    if (mpfr_cmp(ad.v, gap.v) <= 0) return 0;
    return mpfr_sgn(diff.v);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

}  // namespace cutseq
