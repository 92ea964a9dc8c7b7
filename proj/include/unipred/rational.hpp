#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace unipred {

// Exact arbitrary-precision rational, always kept canonical (lowest terms,
// positive denominator).
using Rational = mpq_class;

// Accepts "num/den" or a bare integer. Throws ParseError.
Rational parse_rational(std::string_view text);
// "num/den" in lowest terms; integers get "/1".
std::string to_string(const Rational& q);
// Decimal rendering with `significant` significant digits. Display only.
std::string to_decimal(const Rational& q, int significant = 12);
// log2 of a positive rational as a double; -inf for zero. Display only.
double log2_of(const Rational& q);
// Exact 2^e for any integer e.
Rational pow2(long e);

// A rational in [0, 1]. The range is checked on every construction.
class Prob {
 public:
  Prob() = default;
  explicit Prob(Rational value);
  Prob(unsigned long num, unsigned long den);

  static Prob zero() { return Prob(); }
  static Prob one() { return Prob(1, 1); }
  static Prob half() { return Prob(1, 2); }
  // 2^-e
  static Prob dyadic(unsigned long e);
  static Prob parse(std::string_view text);

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  Prob complement() const { return Prob(Rational(1) - value_); }

  std::string str() const { return to_string(value_); }
  std::string decimal(int significant = 12) const { return to_decimal(value_, significant); }

  friend Prob operator*(const Prob& a, const Prob& b) { return Prob(Rational(a.value_ * b.value_), Unchecked{}); }
  Prob& operator*=(const Prob& o) {
    value_ *= o.value_;
    return *this;
  }

  friend bool operator==(const Prob& a, const Prob& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Prob& a, const Prob& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Unchecked {};
  Prob(Rational value, Unchecked) : value_(std::move(value)) {}
  Rational value_{0};
};

}  // namespace unipred
