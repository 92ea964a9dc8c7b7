#include "doctest.h"
#include "unipred/error.hpp"
#include "unipred/harness.hpp"
#include "unipred/mixture.hpp"
#include "unipred/rng.hpp"

using namespace unipred;
using namespace unipred::hypotheses;
using namespace unipred::mixture;

namespace {

HypothesisPool two_point() {
  return HypothesisPool({Point{BitString(), BitString::parse("0")}, Point{BitString(), BitString::parse("1")}},
                        WeightVector({Prob::half(), Prob::half()}));
}

// Direct sum over members, independent of the library's mixture model.
Rational direct_sum(const HypothesisPool& pool, const BitString& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) s += pool.weight(i).value() * pool.measure(i)(x).value();
  return s;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Invariant;
}

}  // namespace

TEST_SUITE("mixture") {
  TEST_CASE("two-point pool values and predictions") {
    const HypothesisPool pool = two_point();
    CHECK(mixture_value(pool, BitString::parse("1")) == Prob::half());
    CHECK(mixture_value(pool, BitString()) == Prob::one());
    CHECK(mixture_predict(pool, BitString(), Bit::Zero) == Prob::half());
    CHECK(mixture_predict(pool, BitString(), Bit::One) == Prob::half());
    CHECK(mixture_predict(pool, BitString::parse("1"), Bit::One) == Prob::one());
    CHECK_FALSE(mixture_predict(pool, BitString::parse("01"), Bit::One).has_value());

    const HypothesisPool single({Uniform{}}, WeightVector({Prob::one()}));
    CHECK(mixture_value(single, BitString::parse("01101")) == Prob::dyadic(5));
  }

  TEST_CASE("update_weights examples") {
    AggregatorState s = AggregatorState::initial(two_point());
    CHECK(aggregate_predict(s, Bit::One) == Prob::half());
    s = update_weights(s, Bit::One);
    CHECK(s.weights() == std::vector<Prob>{Prob::zero(), Prob::one()});
    CHECK(s.time() == 1);
    CHECK(aggregate_predict(s, Bit::One) == Prob::one());

    // Both members predict 1/2: no change.
    const HypothesisPool flat({Uniform{}, Bernoulli{Prob::half()}}, WeightVector({Prob::half(), Prob::half()}));
    const AggregatorState f = update_weights(AggregatorState::initial(flat), Bit::Zero);
    CHECK(f.weights() == std::vector<Prob>{Prob::half(), Prob::half()});

    // p_1 = 1/2 and p_2 = 1/4 on the observed 0: Z = 5/16.
    const HypothesisPool skew({Uniform{}, Bernoulli{Prob(3, 4)}}, WeightVector({Prob(1, 4), Prob(3, 4)}));
    const AggregatorState a = AggregatorState::initial(skew);
    CHECK(aggregate_predict(a, Bit::Zero) == Prob(5, 16));
    const AggregatorState b = update_weights(a, Bit::Zero);
    CHECK(b.weights() == std::vector<Prob>{Prob(2, 5), Prob(3, 5)});
    CHECK(a.time() == 0);  // states are values
  }

  TEST_CASE("initial weights are normalized") {
    const AggregatorState s = AggregatorState::initial(default_pool(3));
    CHECK(s.weights() == std::vector<Prob>{Prob(4, 7), Prob(2, 7), Prob(1, 7)});
    CHECK(aggregate_predict(AggregatorState::initial(default_pool(1)), Bit::One) == Prob::half());
  }

  TEST_CASE("zero normalizer is an error naming the history") {
    const AggregatorState s = update_weights(AggregatorState::initial(two_point()), Bit::Zero);
    CHECK(code_of([&] { (void)update_weights(s, Bit::One); }) == ErrorCode::ZeroNormalizer);
    try {
      (void)update_weights(s, Bit::One);
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("after history 0") != std::string::npos);
    }
  }

  TEST_CASE("aggregator equals the mixture conditional along sampled sequences") {
    const HypothesisPool pool = default_pool(8);
    const Measure xi = mixture_measure(pool);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const BitString x = harness::sample_sequence(xi, 64, seed);
      AggregatorState s = AggregatorState::initial(pool);
      for (std::size_t t = 0; t < x.size(); ++t) {
        for (Bit b : kBits) {
          MaybeProb m = mixture_predict(pool, s.history(), b);
          REQUIRE(m.has_value());
          CHECK(aggregate_predict(s, b) == *m);
        }
        s = update_weights(s, x[t]);
        Rational total = 0;
        for (const auto& w : s.weights()) total += w.value();
        CHECK(total == 1);
      }
    }
  }

  TEST_CASE("mixture predictor cursor matches the ratio form") {
    const HypothesisPool pool = default_pool(8);
    const Predictor p = mixture_predictor(pool);
    const BitString x = BitString::parse("0001011101001111000");
    auto cur = p.cursor();
    for (std::size_t t = 0; t < x.size(); ++t) {
      for (Bit b : kBits) CHECK(cur->predict(b) == mixture_predict(pool, x.prefix(t), b));
      cur->advance(x[t]);
    }
  }

  TEST_CASE("domination against direct summation") {
    const HypothesisPool pool = default_pool(8);
    SplitMix64 rng(7);
    for (int k = 0; k < 200; ++k) {
      const std::size_t len = rng.next() % 65;
      BitString x;
      for (std::size_t t = 0; t < len; ++t) x.push_back(bit_of(rng.next() & 1));
      REQUIRE(mixture_value(pool, x).value() == direct_sum(pool, x));
      for (std::size_t i = 0; i < pool.size(); ++i) CHECK(check_domination(pool, i, x));
    }
    for (std::size_t i = 0; i < pool.size(); ++i) CHECK(check_domination(pool, i, BitString()));
    CHECK(check_domination(two_point(), 1, BitString::parse("1111")));
  }

  TEST_CASE("mixture measure is additive with mass equal to the weight sum") {
    const HypothesisPool pool = default_pool(6);
    const Measure xi = mixture_measure(pool);
    CHECK(xi(BitString()).value() == Rational(63, 64));
    CHECK_FALSE(check_measure(xi, 10).has(Violation::Kind::Additivity));
    CHECK(check_measure(mixture_measure(two_point()), 10).ok());
  }
}
