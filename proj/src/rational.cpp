#include "unipred/rational.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "unipred/error.hpp"

namespace unipred {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = !s.empty() && s.front() == '-';
  std::string_view digits = negative ? s.substr(1) : s;
  if (!all_digits(digits)) throw ParseError("malformed rational '" + std::string(whole) + "'");
  mpz_class z(std::string(digits), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  mpz_class num = parse_integer(text.substr(0, slash), text);
  mpz_class den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const Rational& q, int significant) {
  if (sgn(q) == 0) return "0";
  // Enough binary precision for the requested digits whatever the magnitude.
  mpf_class f(0, static_cast<mp_bitcnt_t>(significant * 4 + 64));
  f = q;
  int n = gmp_snprintf(nullptr, 0, "%.*Fg", significant, f.get_mpf_t());
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant, f.get_mpf_t());
  return std::string(buf.data());
}

double log2_of(const Rational& q) {
  if (sgn(q) == 0) return -std::numeric_limits<double>::infinity();
  long num_exp = 0;
  long den_exp = 0;
  mpz_class num = abs(q.get_num());
  double num_mant = mpz_get_d_2exp(&num_exp, num.get_mpz_t());
  double den_mant = mpz_get_d_2exp(&den_exp, q.get_den().get_mpz_t());
  return std::log2(num_mant) + static_cast<double>(num_exp) - std::log2(den_mant) -
         static_cast<double>(den_exp);
}

Rational pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(p);
  Rational q(mpz_class(1), p);
  return q;
}

Prob::Prob(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (sgn(value_) < 0 || value_ > 1) {
    throw Error(ErrorCode::Range, "probability out of [0,1]: " + to_string(value_));
  }
}

Prob::Prob(unsigned long num, unsigned long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  value_ = Rational(num, den);
  value_.canonicalize();
  if (value_ > 1) throw Error(ErrorCode::Range, "probability out of [0,1]: " + to_string(value_));
}

Prob Prob::dyadic(unsigned long e) { return Prob(pow2(-static_cast<long>(e)), Unchecked{}); }

Prob Prob::parse(std::string_view text) {
  Rational q = parse_rational(text);
  if (sgn(q) < 0 || q > 1) throw ParseError("probability out of [0,1]: '" + std::string(text) + "'");
  return Prob(std::move(q), Unchecked{});
}

}  // namespace unipred
