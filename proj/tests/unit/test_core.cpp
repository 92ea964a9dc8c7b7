#include <atomic>
#include <set>

#include "doctest.h"
#include "unipred/bitstring.hpp"
#include "unipred/error.hpp"
#include "unipred/measure.hpp"
#include "unipred/parallel.hpp"
#include "unipred/rational.hpp"

using namespace unipred;

TEST_SUITE("core") {
  TEST_CASE("bit strings parse, print and order shortlex") {
    const BitString x = BitString::parse("0110");
    CHECK(x.size() == 4);
    CHECK(x[1] == Bit::One);
    CHECK(x.str() == "0110");
    CHECK(BitString().token() == "^");
    CHECK(BitString::from_token("^").empty());
    CHECK(BitString::from_uint(5, 4).str() == "0101");
    CHECK(BitString::repeat(Bit::One, 3).str() == "111");
    CHECK(x.complement().str() == "1001");
    CHECK(BitString::parse("01").is_prefix_of(x));
    CHECK_FALSE(BitString::parse("00").is_prefix_of(x));
    CHECK(BitString::parse("1") < BitString::parse("00"));
    CHECK(BitString::parse("00") < BitString::parse("01"));
    CHECK(x.count_ones() == 2);

    try {
      (void)BitString::parse("01x1");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      REQUIRE(e.offset().has_value());
      CHECK(*e.offset() == 2);
    }
  }

  TEST_CASE("enumeration helpers visit every string once, shortlex") {
    std::vector<std::string> seen;
    for_each_string_shorter_than(3, [&](const BitString& s) { seen.push_back(s.token()); });
    CHECK(seen == std::vector<std::string>{"^", "0", "1", "00", "01", "10", "11"});
  }

  TEST_CASE("probabilities are range-checked exact rationals") {
    CHECK(Prob(3, 4).str() == "3/4");
    CHECK(Prob::parse("6/8") == Prob(3, 4));
    CHECK(Prob::one().str() == "1/1");
    CHECK(Prob::dyadic(10) == Prob(1, 1024));
    CHECK(Prob(1, 3).complement() == Prob(2, 3));
    CHECK(Prob(1, 3) < Prob(1, 2));
    CHECK_THROWS_AS(Prob(Rational(5, 4)), Error);
    CHECK_THROWS_AS(Prob(Rational(-1, 4)), Error);
    CHECK_THROWS_AS(Prob::parse("1/0x"), Error);
    CHECK(Prob(1, 3).decimal() == "0.333333333333");
    CHECK(to_decimal(Rational(1, 8)) == "0.125");
    CHECK(log2_of(Rational(1, 8)) == doctest::Approx(-3));
    CHECK(pow2(-3) == Rational(1, 8));
    CHECK(pow2(4) == Rational(16));
  }

  TEST_CASE("uniform measure passes the exact measure check") {
    const Measure u = uniform_measure();
    CHECK(u(BitString::parse("0101")) == Prob::dyadic(4));
    const CheckReport r = check_measure(u, 10);
    CHECK(r.ok());
    CHECK(r.strings_checked == 1023);
  }

  TEST_CASE("check_measure reports the offending string") {
    // Twice the mass on "0" as on "1", but at "01" the split is not additive.
    const Measure bad = Measure::from_function("bad", [](const BitString& x) {
      if (x.str() == "01") return Prob(1, 8);
      return Prob::dyadic(x.size());
    });
    const CheckReport r = check_measure(bad, 3);
    REQUIRE_FALSE(r.ok());
    CHECK(r.has(Violation::Kind::Additivity));
    CHECK(r.violations.front().at.str() == "0");
  }

  TEST_CASE("semi-measure check accepts deficits and rejects excess") {
    const SemiMeasure half = SemiMeasure::from_function("half", [](const BitString& x) {
      return Prob(Rational(pow2(-static_cast<long>(2 * x.size()))));
    });
    CHECK(check_semimeasure(half, 8).ok());
    CHECK_FALSE(check_measure(half, 8).ok());
    CHECK(half.deficit(BitString()) == Rational(1, 2));
    const SemiMeasure heavy = SemiMeasure::from_function("heavy", [](const BitString& x) {
      return x.empty() ? Prob::half() : Prob::one();
    });
    CHECK(check_semimeasure(heavy, 2).has(Violation::Kind::Additivity));
  }

  TEST_CASE("conditionals are undefined exactly on measure-zero prefixes") {
    const Measure zeros = Measure::from_function("zeros", [](const BitString& x) {
      return x.count_ones() == 0 ? Prob::one() : Prob::zero();
    });
    CHECK(conditional(zeros, BitString(), Bit::Zero) == Prob::one());
    CHECK(conditional(zeros, BitString(), Bit::One) == Prob::zero());
    CHECK_FALSE(conditional(zeros, BitString::parse("1"), Bit::Zero).has_value());
    const Predictor p = predictor_from(zeros);
    CHECK(check_predictor(p, 6).ok());
  }

  TEST_CASE("default cursors replay the measure") {
    const Measure u = uniform_measure();
    auto cur = u.cursor();
    for (int t = 0; t < 5; ++t) {
      CHECK(cur->predict(Bit::One) == Prob::half());
      cur->advance(Bit::One);
    }
    CHECK(cur->history().str() == "11111");
  }

  TEST_CASE("memoized measure agrees with the original") {
    std::atomic<int> calls{0};
    const Measure base = Measure::from_function("count", [&](const BitString& x) {
      ++calls;
      return Prob::dyadic(x.size());
    });
    const Measure m = memoized(base);
    const BitString x = BitString::parse("0110");
    CHECK(m(x) == base(x));
    const int before = calls.load();
    CHECK(m(x) == Prob::dyadic(4));
    CHECK(calls.load() == before);
  }

  TEST_CASE("lower approximation monotonicity check") {
    const LowerApproximation good("good", [](const BitString&, std::uint64_t s) {
      return Prob(Rational(1) - pow2(-static_cast<long>(s)));
    });
    CHECK(check_lower_approximation(good, 3, 10).ok());
    const LowerApproximation bad("bad", [](const BitString&, std::uint64_t s) {
      return s % 2 ? Prob::zero() : Prob::half();
    });
    CHECK_FALSE(check_lower_approximation(bad, 2, 4).ok());
  }

  TEST_CASE("parallel_for covers every index and rethrows") {
    std::vector<int> hit(1000, 0);
    parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
    CHECK(std::count(hit.begin(), hit.end(), 1) == 1000);
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                   if (i == 7) throw Error(ErrorCode::Invariant, "boom");
                                 }),
                    Error);
  }
}
