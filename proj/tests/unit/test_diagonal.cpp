#include "doctest.h"
#include "unipred/diagonal.hpp"
#include "unipred/hypotheses.hpp"
#include "unipred/mixture.hpp"
#include "unipred/scoring.hpp"

using namespace unipred;
using namespace unipred::diagonal;
using namespace unipred::hypotheses;

namespace {

Predictor from_spec(const HypothesisSpec& s) { return predictor_from(instantiate(s)); }

Predictor constant(const Prob& p1) {
  return Predictor("constant", [p1](const BitString&, Bit b) -> MaybeProb {
    return b == Bit::One ? p1 : p1.complement();
  });
}

}  // namespace

TEST_SUITE("diagonal") {
  TEST_CASE("Putnam against the uniform predictor ties every step") {
    const AdversaryTrace t = putnam_sequence(from_spec(Uniform{}), 4, Bit::Zero);
    CHECK(t.completed());
    CHECK(t.sequence.str() == "0000");
    CHECK(t.probabilities == std::vector<Prob>(4, Prob::half()));
    CHECK(putnam_sequence(from_spec(Uniform{}), 3, Bit::One).sequence.str() == "111");
    const scoring::Loss l = scoring::cumulative_loss(from_spec(Uniform{}), t.sequence);
    CHECK(l.probability() == Prob::dyadic(4));
  }

  TEST_CASE("Putnam against Bernoulli(3/4) emits zeros") {
    const AdversaryTrace t = putnam_sequence(from_spec(Bernoulli{Prob(3, 4)}), 5);
    CHECK(t.sequence.str() == "00000");
    CHECK(t.probabilities == std::vector<Prob>(5, Prob(1, 4)));
    CHECK(scoring::cumulative_loss(from_spec(Bernoulli{Prob(3, 4)}), t.sequence).at_least_bits(10));
  }

  TEST_CASE("Putnam drives the two-point mixture into a coma") {
    const HypothesisPool pool({Point{BitString(), BitString::parse("0")}, Point{BitString(), BitString::parse("1")}},
                              WeightVector({Prob::half(), Prob::half()}));
    const AdversaryTrace t = putnam_sequence(mixture::mixture_predictor(pool), 10, Bit::Zero);
    CHECK(t.status == TraceStatus::PredictorUndefined);
    CHECK(t.status_at == 2);
    CHECK(t.sequence.str() == "01");
    CHECK(t.probabilities == std::vector<Prob>{Prob::half(), Prob::zero()});
  }

  TEST_CASE("Putnam soundness over the default pool members") {
    const HypothesisPool pool = default_pool(8);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const Predictor p = predictor_from(pool.measure(i));
      const AdversaryTrace t = putnam_sequence(p, 40);
      CAPTURE(pool.describe(i));
      if (std::holds_alternative<Point>(pool.spec(i))) {
        // A point measure predicts its next bit with certainty, so the
        // adversary leaves its support at once.
        CHECK(t.status == TraceStatus::PredictorUndefined);
        CHECK(t.status_at == 1);
        continue;
      }
      REQUIRE(t.completed());
      for (const auto& q : t.probabilities) CHECK(q <= Prob::half());
      CHECK(scoring::cumulative_loss(p, t.sequence).at_least_bits(40));
      // Determinism.
      CHECK(putnam_sequence(p, 40).sequence == t.sequence);
    }
  }

  TEST_CASE("anti-limit against exact approximants") {
    const AdversaryTrace b = anti_limit_sequence(exact_approximation(from_spec(Bernoulli{Prob(3, 4)})), 16, 6);
    CHECK(b.completed());
    CHECK(b.sequence.str() == "000000");
    REQUIRE(b.blocks.size() == 6);
    for (const auto& blk : b.blocks) CHECK(blk.run == 0);
    CHECK(b.probabilities == std::vector<Prob>(6, Prob(3, 4)));

    const AdversaryTrace c = anti_limit_sequence(exact_approximation(constant(Prob::half())), 16, 6);
    CHECK(c.status == TraceStatus::BudgetExhausted);
    CHECK(c.status_at == 0);
    CHECK(c.sequence.empty());
  }

  TEST_CASE("anti-limit dovetails to a late witness") {
    // Reveals 3/5 for the string 111 only from stage 7 on; everything else reads 0.
    const LowerApproximation staged("staged", [](const BitString& x, std::uint64_t s) {
      return (x.str() == "111" && s >= 7) ? Prob(3, 5) : Prob::zero();
    });
    const AdversaryTrace t = anti_limit_sequence(staged, 10, 1);
    CHECK(t.completed());
    CHECK(t.sequence.str() == "1110");
    REQUIRE(t.blocks.size() == 1);
    CHECK(t.blocks[0].run == 3);
    CHECK(t.blocks[0].stage == 7);
    CHECK(t.blocks[0].end == 4);
    // One short of the needed budget.
    CHECK(anti_limit_sequence(staged, 9, 1).status == TraceStatus::BudgetExhausted);
  }

  TEST_CASE("anti-limit soundness against the Markov member") {
    const Predictor m = from_spec(Markov{1, {{Prob(1, 3), Prob(2, 3)}, {Prob(1, 5), Prob(4, 5)}}});
    const AdversaryTrace t = anti_limit_sequence(exact_approximation(m), 32, 8);
    REQUIRE(t.completed());
    std::size_t start = 0;
    for (const auto& blk : t.blocks) {
      const BitString before_zero = t.sequence.prefix(blk.end - 1);
      CHECK(*m(before_zero, Bit::One) > Prob::half());
      CHECK(t.sequence[blk.end - 1] == Bit::Zero);
      CHECK(blk.end - 1 - start == blk.run);
      start = blk.end;
    }
  }
}
