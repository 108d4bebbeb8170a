#pragma once

#include "cutseq/exact.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace cutseq {

// Digit sequence laid out as a preperiod followed by a repeating period.
// Empty period means the sequence is finite.
struct DigitWord {
    std::vector<BigInt> pre;
    std::vector<BigInt> period;

    bool finite() const { return period.empty(); }
    // Primitive period, preperiod shortened by rotation; indices below
    // min_pre are never absorbed into the period.
    void canonicalize(size_t min_pre = 0);
    // Digit at position i (0-based); nullopt past the end of a finite word.
    std::optional<BigInt> digit(size_t i) const;
    bool operator==(const DigitWord& o) const { return pre == o.pre && period == o.period; }
};

class CFExpansion {
  public:
    enum class Kind { Finite, Periodic, Stream };

    // digits[0] is a0; trailing 1 is folded into the canonical form.
    static CFExpansion finite(std::vector<BigInt> digits);
    // pre must be nonempty (it carries a0); period nonempty.
    static CFExpansion periodic(std::vector<BigInt> pre, std::vector<BigInt> period);
    static CFExpansion stream(std::function<std::optional<BigInt>()> next);
    static CFExpansion from_word(DigitWord w);  // finite or periodic by shape

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::Finite; }
    // Digit a_i, pulling and caching stream digits as needed.
    std::optional<BigInt> digit(size_t i) const;
    size_t finite_size() const;  // Finite only
    const DigitWord& word() const;  // Finite/Periodic only
    const std::vector<BigInt>& pre() const { return word().pre; }
    const std::vector<BigInt>& period() const { return word().period; }
    // True when the digit stream equals some word repeated from the start.
    bool is_purely_periodic() const;
    // "[3; 7, 16]", "[1; 2, (2, 1)]"; streams render up to max_digits then "...".
    std::string str(size_t max_digits = 12) const;

  private:
    Kind kind_ = Kind::Finite;
    DigitWord word_;
    std::function<std::optional<BigInt>()> next_;
    mutable std::vector<BigInt> cache_;
    mutable bool exhausted_ = false;
};

CFExpansion parse_cf(const std::string& s);

struct Convergent {
    BigInt p, q;
    long n;  // convergent index, 0-based
};

struct MediantConvergent {
    long level;  // digit index whose partial quotient is being split
    BigInt a;    // 1 <= a < a_level
    Rat value;
};

CFExpansion expand(const Real& x);
// Finite and periodic expansions only; streams cannot be evaluated exactly.
Real evaluate(const CFExpansion& cf);
// Value of a digit word read as [w0; w1, w2, ...].
Real evaluate_word(const DigitWord& w);

Real gauss_map(const Real& x);  // domain [0, 1)
Real farey_map(const Real& x);  // domain [0, 1]
// Left-branch count until the right branch applies once: returns the Gauss
// digit and the Gauss image. Landing exactly on 1/2 closes the expansion
// with digit count+2 and image 0.
std::pair<BigInt, Real> farey_accelerate(const Real& x);  // domain (0, 1)

std::vector<Convergent> convergents(const CFExpansion& cf, size_t n);
std::vector<MediantConvergent> mediant_convergents(const CFExpansion& cf, size_t n);
bool is_best_approx_first_kind(const Real& x, const Rat& p);

std::string word_str(const std::vector<BigInt>& w);  // "(2,1)"

}  // namespace cutseq
