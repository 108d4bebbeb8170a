#include "cutseq/cf.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

namespace cutseq {

namespace {

// Smallest divisor-length prefix whose repetition reproduces w.
std::vector<BigInt> primitive_root(const std::vector<BigInt>& w) {
    size_t n = w.size();
    for (size_t len = 1; len <= n / 2; ++len) {
        if (n % len != 0) continue;
        bool ok = true;
        for (size_t i = len; i < n && ok; ++i)
            if (w[i] != w[i % len]) ok = false;
        if (ok) return std::vector<BigInt>(w.begin(), w.begin() + len);
    }
    return w;
}

}  // namespace

void DigitWord::canonicalize(size_t min_pre) {
    if (period.empty()) return;
    period = primitive_root(period);
    while (pre.size() > min_pre && pre.back() == period.back()) {
        pre.pop_back();
        std::rotate(period.begin(), period.end() - 1, period.end());
    }
}

std::optional<BigInt> DigitWord::digit(size_t i) const {
    if (i < pre.size()) return pre[i];
    if (period.empty()) return std::nullopt;
    return period[(i - pre.size()) % period.size()];
}

CFExpansion CFExpansion::finite(std::vector<BigInt> digits) {
    if (digits.empty()) throw domain_error("empty expansion");
    for (size_t i = 1; i < digits.size(); ++i)
        if (digits[i] < 1) throw domain_error("partial quotients must be positive");
    // canonical finite form never ends in 1 (except a lone a0)
    if (digits.size() > 1 && digits.back() == 1) {
        digits.pop_back();
        digits.back() += 1;
    }
    CFExpansion cf;
    cf.kind_ = Kind::Finite;
    cf.word_.pre = std::move(digits);
    return cf;
}

CFExpansion CFExpansion::periodic(std::vector<BigInt> pre, std::vector<BigInt> period) {
    if (pre.empty()) throw domain_error("periodic expansion needs a leading digit");
    if (period.empty()) throw domain_error("empty period");
    for (size_t i = 1; i < pre.size(); ++i)
        if (pre[i] < 1) throw domain_error("partial quotients must be positive");
    for (const BigInt& d : period)
        if (d < 1) throw domain_error("partial quotients must be positive");
    CFExpansion cf;
    cf.kind_ = Kind::Periodic;
    cf.word_.pre = std::move(pre);
    cf.word_.period = std::move(period);
    cf.word_.canonicalize(1);
    return cf;
}

CFExpansion CFExpansion::stream(std::function<std::optional<BigInt>()> next) {
    CFExpansion cf;
    cf.kind_ = Kind::Stream;
    cf.next_ = std::move(next);
    return cf;
}

CFExpansion CFExpansion::from_word(DigitWord w) {
    if (w.finite()) return finite(std::move(w.pre));
    return periodic(std::move(w.pre), std::move(w.period));
}

std::optional<BigInt> CFExpansion::digit(size_t i) const {
    if (kind_ != Kind::Stream) return word_.digit(i);
    while (cache_.size() <= i && !exhausted_) {
        std::optional<BigInt> d = next_();
        if (!d) {
            exhausted_ = true;
            break;
        }
        cache_.push_back(*d);
    }
    if (i < cache_.size()) return cache_[i];
    return std::nullopt;
}

size_t CFExpansion::finite_size() const {
    if (kind_ != Kind::Finite) throw domain_error("expansion is not finite");
    return word_.pre.size();
}

const DigitWord& CFExpansion::word() const {
    if (kind_ == Kind::Stream) throw domain_error("stream expansion has no stored word");
    return word_;
}

bool CFExpansion::is_purely_periodic() const {
    if (kind_ != Kind::Periodic) return false;
    return word_.pre.size() == 1 && word_.pre[0] == word_.period.back();
}

std::string CFExpansion::str(size_t max_digits) const {
    std::string out = "[";
    if (kind_ == Kind::Stream) {
        for (size_t i = 0; i < max_digits; ++i) {
            std::optional<BigInt> d = digit(i);
            if (!d) break;
            if (i == 1) out += "; ";
            else if (i > 1) out += ", ";
            out += d->get_str();
        }
        if (digit(max_digits)) out += ", ...";
        return out + "]";
    }
    for (size_t i = 0; i < word_.pre.size(); ++i) {
        if (i == 1) out += "; ";
        else if (i > 1) out += ", ";
        out += word_.pre[i].get_str();
    }
    if (!word_.period.empty()) {
        out += (word_.pre.size() == 1) ? "; " : ", ";
        out += "(";
        for (size_t i = 0; i < word_.period.size(); ++i) {
            if (i) out += ", ";
            out += word_.period[i].get_str();
        }
        out += ")";
    }
    return out + "]";
}

CFExpansion parse_cf(const std::string& in) {
    std::string s;
    for (char ch : in)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw parse_error("bad expansion: " + in);
    s = s.substr(1, s.size() - 2);
    std::replace(s.begin(), s.end(), ';', ',');
    std::vector<BigInt> pre, period;
    bool in_period = false, saw_period = false;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ',') { ++i; continue; }
        if (s[i] == '(') {
            if (saw_period) throw parse_error("bad expansion: " + in);
            in_period = true;
            saw_period = true;
            ++i;
            continue;
        }
        if (s[i] == ')') {
            in_period = false;
            ++i;
            continue;
        }
        size_t j = i;
        if (s[j] == '-') ++j;
        size_t first_digit = j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == first_digit) throw parse_error("bad expansion: " + in);
        BigInt d(s.substr(i, j - i), 10);
        (in_period ? period : pre).push_back(d);
        i = j;
    }
    if (in_period || pre.empty() || (saw_period && period.empty()))
        throw parse_error("bad expansion: " + in);
    if (saw_period) return CFExpansion::periodic(std::move(pre), std::move(period));
    return CFExpansion::finite(std::move(pre));
}

CFExpansion expand(const Real& x) {
    if (const Rat* r = std::get_if<Rat>(&x)) {
        std::vector<BigInt> digits;
        BigInt p = r->get_num(), q = r->get_den();
        while (true) {
            BigInt a, rem;
            mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
            digits.push_back(a);
            if (rem == 0) break;
            p = q;
            q = rem;
        }
        // Euclid with floor division always ends with a last digit >= 2
        return CFExpansion::finite(std::move(digits));
    }
    std::vector<BigInt> digits;
    BigInt a0 = floor_of(x);
    digits.push_back(a0);
    Real frac = real_add_int(x, -a0);
    Real t = real_recip(frac);
    // Orbit states are exact tails in (1, oo); the first repeated state marks
    // the period (tails determine their digit futures uniquely, so this gives
    // the minimal preperiod and a primitive period).
    std::map<std::array<BigInt, 4>, size_t> seen;
    size_t i = 1;
    while (true) {
        const QuadSurd& st = std::get<QuadSurd>(t);
        std::array<BigInt, 4> key{st.a(), st.b(), st.c(), st.d()};
        auto it = seen.find(key);
        if (it != seen.end()) {
            size_t j = it->second;
            std::vector<BigInt> pre(digits.begin(), digits.begin() + j);
            std::vector<BigInt> period(digits.begin() + j, digits.end());
            return CFExpansion::periodic(std::move(pre), std::move(period));
        }
        seen.emplace(key, i);
        BigInt ai = floor_of(t);
        digits.push_back(ai);
        Real ft = real_add_int(t, -ai);
        t = real_recip(ft);
        ++i;
    }
}

Real evaluate_word(const DigitWord& w) {
    if (w.pre.empty() && w.period.empty()) throw domain_error("empty word");
    Real tail = Rat(0);
    bool have_tail = false;
    if (!w.period.empty()) {
        // Periodic tail y = [p1; p2, ..., pm, y] is the attracting fixed point
        // of the period matrix; the plus branch is the positive root.
        Mat2 W = Mat2::identity();
        for (const BigInt& b : w.period) W = W * Mat2{b, 1, 1, 0};
        BigInt A = W.m11 - W.m22;
        BigInt disc = A * A + 4 * W.m21 * W.m12;
        tail = make_real_value(A, 1, 2 * W.m21, disc);
        have_tail = true;
    }
    if (w.pre.empty()) return tail;
    if (!have_tail) {
        // finite: fold from the back
        size_t n = w.pre.size();
        Real v = Rat(w.pre[n - 1]);
        for (size_t i = n - 1; i-- > 0;) {
            v = real_recip(v);
            v = real_add_int(v, w.pre[i]);
        }
        return v;
    }
    Mat2 V = Mat2::identity();
    for (const BigInt& a : w.pre) V = V * Mat2{a, 1, 1, 0};
    return real_mobius(V.m11, V.m12, V.m21, V.m22, tail);
}

Real evaluate(const CFExpansion& cf) {
    if (cf.kind() == CFExpansion::Kind::Stream)
        throw domain_error("stream expansions cannot be evaluated exactly");
    return evaluate_word(cf.word());
}

Real gauss_map(const Real& x) {
    int s = real_sign(x);
    if (s == 0) return Rat(0);
    if (s < 0 || compare(x, Real(Rat(1))) != std::strong_ordering::less)
        throw domain_error("gauss_map domain is [0, 1)");
    Real r = real_recip(x);
    BigInt a = floor_of(r);
    return real_add_int(r, -a);
}

Real farey_map(const Real& x) {
    if (real_sign(x) < 0 || compare(x, Real(Rat(1))) == std::strong_ordering::greater)
        throw domain_error("farey_map domain is [0, 1]");
    std::strong_ordering h = compare(x, Real(make_rat(1, 2)));
    if (h != std::strong_ordering::greater) return real_mobius(1, 0, -1, 1, x);  // x/(1-x)
    return real_mobius(-1, 1, 1, 0, x);                                          // (1-x)/x
}

std::pair<BigInt, Real> farey_accelerate(const Real& x) {
    if (real_sign(x) <= 0 || compare(x, Real(Rat(1))) != std::strong_ordering::less)
        throw domain_error("farey_accelerate domain is (0, 1)");
    Real v = x;
    BigInt count = 0;
    Rat half = make_rat(1, 2);
    while (compare(v, Real(half)) == std::strong_ordering::less) {
        v = real_mobius(1, 0, -1, 1, v);
        ++count;
    }
    Real y = real_mobius(-1, 1, 1, 0, v);
    if (real_eq(y, Real(Rat(1)))) {
        // landed exactly on 1/2: the expansion closes here
        return {count + 2, Real(Rat(0))};
    }
    return {count + 1, y};
}

std::vector<Convergent> convergents(const CFExpansion& cf, size_t n) {
    std::vector<Convergent> out;
    BigInt p1 = 1, p2 = 0, q1 = 0, q2 = 1;  // p_{-1}, p_{-2}, q_{-1}, q_{-2}
    for (size_t i = 0; i < n; ++i) {
        std::optional<BigInt> a = cf.digit(i);
        if (!a) throw domain_error("expansion exhausted before requested convergent");
        BigInt p = *a * p1 + p2;
        BigInt q = *a * q1 + q2;
        out.push_back(Convergent{p, q, static_cast<long>(i)});
        p2 = p1; p1 = p;
        q2 = q1; q1 = q;
    }
    return out;
}

std::vector<MediantConvergent> mediant_convergents(const CFExpansion& cf, size_t n) {
    std::vector<MediantConvergent> out;
    BigInt p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (size_t i = 0; i < n; ++i) {
        std::optional<BigInt> a = cf.digit(i);
        if (!a) throw domain_error("expansion exhausted before requested level");
        if (i >= 1) {
            for (BigInt j = 1; j < *a; ++j) {
                BigInt mp = j * p1 + p2;
                BigInt mq = j * q1 + q2;
                out.push_back(MediantConvergent{static_cast<long>(i), j, make_rat(mp, mq)});
            }
        }
        BigInt p = *a * p1 + p2;
        BigInt q = *a * q1 + q2;
        p2 = p1; p1 = p;
        q2 = q1; q1 = q;
    }
    return out;
}

bool is_best_approx_first_kind(const Real& x, const Rat& p) {
    if (p.get_den() < 1) throw domain_error("denominator must be positive");
    const BigInt& q = p.get_den();
    // |x - r1| < |x - r2|  iff  (r2 - r1)(2x - r1 - r2) > 0
    auto closer_or_tied = [&x](const Rat& cand, const Rat& target) {
        // true when |x - cand| <= |x - target|
        Rat diff = target - cand;
        int s1 = sgn(diff);
        if (s1 == 0) return true;
        Rat sum = cand + target;
        // sign of 2x - sum
        Real two_x = real_mobius(2 * sum.get_den(), -sum.get_num(), 0, sum.get_den(), x);
        int s2 = real_sign(two_x);
        return s1 * s2 <= 0;
    };
    for (BigInt den = 1; den < q; ++den) {
        Real xd = real_mobius(den, 0, 0, 1, x);
        BigInt c = floor_of(xd);
        Rat cand1 = make_rat(c, den);
        BigInt c1 = c + 1;
        Rat cand2 = make_rat(c1, den);
        if (closer_or_tied(cand1, p) || closer_or_tied(cand2, p)) return false;
    }
    return true;
}

std::string word_str(const std::vector<BigInt>& w) {
    std::string out = "(";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += w[i].get_str();
    }
    return out + ")";
}

}  // namespace cutseq
