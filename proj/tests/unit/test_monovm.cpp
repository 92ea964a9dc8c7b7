#include <map>

#include "doctest.h"
#include "unipred/error.hpp"
#include "unipred/monovm.hpp"

using namespace unipred;
using namespace unipred::mono;

namespace {

BitString prog(std::initializer_list<Op> ops) { return encode(std::vector<Op>(ops)) + encode({Op::Run}); }

// Minimal descriptions straight from the definition: programs whose output
// extends y while no proper prefix's output does.
struct NaiveOracle {
  ResourceBound bound;
  std::vector<std::pair<BitString, BitString>> runs;  // program, output; shortlex

  explicit NaiveOracle(ResourceBound b) : bound(b) {
    for_each_string_shorter_than(bound.max_program_len + 1, [&](const BitString& p) {
      runs.emplace_back(p, run_machine(p, bound.max_steps).output);
    });
  }

  std::vector<BitString> minimal(const BitString& y) const {
    std::map<BitString, bool> describes;
    for (const auto& [p, out] : runs) describes[p] = y.is_prefix_of(out);
    std::vector<BitString> result;
    for (const auto& [p, out] : runs) {
      if (!describes[p]) continue;
      bool minimal = true;
      for (std::size_t k = 0; k < p.size() && minimal; ++k) minimal = !describes[p.prefix(k)];
      if (minimal) result.push_back(p);
    }
    return result;
  }
};

}  // namespace

TEST_SUITE("monovm") {
  TEST_CASE("decoding stops at RUN") {
    const Decoded d = decode(BitString::parse("010011111000"));
    CHECK(d.ops == std::vector<Op>{Op::Flip, Op::Out});
    CHECK(d.terminated);
    CHECK(d.bits_consumed == 9);
    const Decoded open = decode(BitString::parse("01001"));
    CHECK_FALSE(open.terminated);
    CHECK(open.ops == std::vector<Op>{Op::Flip});
    CHECK(open.bits_consumed == 5);
    CHECK(op_from_bits(Bit::One, Bit::Zero, Bit::One) == Op::Jnz);
    CHECK(disassemble(BitString::parse("010011111")) == "FLIP OUT RUN");
  }

  TEST_CASE("hand traces") {
    RunResult r = run_machine(prog({Op::Out}), 10);
    CHECK(r.output.str() == "0");
    CHECK(r.status == RunStatus::Halted);
    CHECK(r.steps == 1);
    CHECK(r.input_bits_consumed == 6);

    r = run_machine(prog({Op::Flip, Op::Right, Op::Out, Op::Left, Op::Out}), 10);
    CHECK(r.output.str() == "01");

    // A loop printing 1 forever: FLIP [OUT].
    r = run_machine(prog({Op::Flip, Op::Jz, Op::Out, Op::Jnz}), 10);
    CHECK(r.output.str() == "1111");
    CHECK(r.status == RunStatus::OutOfSteps);
    CHECK(r.steps == 10);

    // JZ on a 0 cell skips past its JNZ.
    r = run_machine(prog({Op::Jz, Op::Out, Op::Jnz, Op::Out}), 10);
    CHECK(r.output.str() == "0");
    CHECK(r.status == RunStatus::Halted);
    CHECK(r.steps == 2);

    // HALT is a step.
    r = run_machine(prog({Op::Out, Op::Halt, Op::Out}), 10);
    CHECK(r.output.str() == "0");
    CHECK(r.steps == 2);

    // Unmatched bracket: the machine hangs.
    r = run_machine(prog({Op::Out, Op::Jz}), 25);
    CHECK(r.output.empty());
    CHECK(r.status == RunStatus::OutOfSteps);
    CHECK(r.steps == 25);

    // Still reading.
    r = run_machine(BitString::parse("011011"), 10);
    CHECK(r.output.empty());
    CHECK(r.status == RunStatus::InputExhausted);
    CHECK(r.input_bits_consumed == 6);

    // Trailing bits after RUN are never read.
    r = run_machine(prog({Op::Flip, Op::Out}) + BitString::parse("01"), 10);
    CHECK(r.input_bits_consumed == 9);

    r = execute({Op::Flip, Op::Jz, Op::Out, Op::Jnz}, 1000, 2);
    CHECK(r.output.str() == "11");
    CHECK(r.steps < 1000);
  }

  TEST_CASE("literal program examples") {
    RunResult r = run_machine(BitString::parse("011111"), 10);
    CHECK(r.output.str() == "0");
    CHECK(r.status == RunStatus::Halted);
    r = run_machine(BitString::parse("010011111"), 10);
    CHECK(r.output.str() == "1");
    CHECK(r.status == RunStatus::Halted);
    const BitString emitter = BitString::parse("010100011101111");
    for (std::uint64_t s : {5, 50, 500}) {
      r = run_machine(emitter, s);
      CHECK(r.status == RunStatus::OutOfSteps);
      CHECK(r.output == BitString::repeat(Bit::One, r.output.size()));
    }
    CHECK(r.output.size() == 249);

    const auto d0 = minimal_descriptions(BitString::parse("0"), ResourceBound{6, 10});
    CHECK(std::find(d0.members.begin(), d0.members.end(), BitString::parse("011111")) != d0.members.end());
    const auto d11 = minimal_descriptions(BitString::parse("11"), ResourceBound{15, 10});
    CHECK(std::find(d11.members.begin(), d11.members.end(), emitter) != d11.members.end());
    CHECK(algprob(BitString::parse("0"), ResourceBound{6, 10}) >= Prob::dyadic(6));
    CHECK(km(BitString::parse("0"), ResourceBound{6, 10}) <= std::size_t{6});
  }

  TEST_CASE("trace rows show the tape around the head") {
    const Trace t = trace(BitString::parse("010011111"), 10);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].op == Op::Flip);
    CHECK(t.rows[1].pc == 1);
    CHECK(t.rows[1].tape == "[1]");
    CHECK(t.rows[1].output.str() == "1");
    CHECK(t.result.status == RunStatus::Halted);
  }

  TEST_CASE("output is monotone in the step bound") {
    for_each_string_shorter_than(13, [](const BitString& p) {
      BitString prev;
      for (std::uint64_t s : {0, 1, 3, 10, 40}) {
        const BitString out = run_machine(p, s).output;
        CHECK(prev.is_prefix_of(out));
        prev = out;
      }
    });
  }

  TEST_CASE("engine matches the definitional oracle") {
    for (ResourceBound b : {ResourceBound{9, 20}, ResourceBound{12, 6}, ResourceBound{12, 60}}) {
      const NaiveOracle oracle(b);
      const AlgProbEngine engine(b, 2);
      for_each_string_shorter_than(5, [&](const BitString& y) {
        CAPTURE(y.token());
        const std::vector<BitString> expect = oracle.minimal(y);
        CHECK(engine.descriptions(y) == expect);
        CHECK(engine.description_count(y) == expect.size());
        Rational sum = 0;
        std::optional<std::size_t> shortest;
        for (const auto& p : expect) {
          sum += pow2(-static_cast<long>(p.size()));
          if (!shortest || p.size() < *shortest) shortest = p.size();
        }
        CHECK(engine.algprob(y).value() == sum);
        CHECK(engine.km(y) == shortest);
      });
    }
  }

  TEST_CASE("empty string has the empty program only") {
    const AlgProbEngine engine(ResourceBound{12, 50});
    CHECK(engine.algprob(BitString()) == Prob::one());
    CHECK(engine.km(BitString()) == std::size_t{0});
    CHECK(engine.description_count(BitString()) == 1);
  }

  TEST_CASE("no program of at most 18 bits prints eight zeros") {
    const BitString zeros = BitString::repeat(Bit::Zero, 8);
    std::size_t found = 0;
    for_each_string_shorter_than(19, [&](const BitString& p) {
      if (zeros.is_prefix_of(run_machine(p, 500).output)) ++found;
    });
    CHECK(found == 0);
    CHECK(shared_engine(kDefaultBound)->algprob(zeros) == Prob::zero());
  }

  TEST_CASE("mixture form agrees with the engine") {
    for (ResourceBound b : {ResourceBound{9, 20}, ResourceBound{12, 50}, ResourceBound{18, 200}}) {
      const AlgProbEngine engine(b);
      for_each_string_shorter_than(7, [&](const BitString& y) {
        CAPTURE(y.token());
        CHECK(algprob_mixture_form(y, b) == engine.algprob(y));
      });
    }
  }

  TEST_CASE("monotone approximation in length and steps") {
    const std::vector<ResourceBound> chain{{9, 20}, {12, 20}, {12, 100}, {15, 100}, {15, 250}};
    std::vector<AlgProbEngine> engines;
    for (const auto& b : chain) engines.emplace_back(b);
    for_each_string_shorter_than(6, [&](const BitString& y) {
      for (std::size_t k = 1; k < engines.size(); ++k) {
        CHECK(engines[k - 1].algprob(y) <= engines[k].algprob(y));
      }
    });
  }

  TEST_CASE("semimeasure and complexity properties of the default table") {
    const AlgProbTable table = algprob_table(kDefaultBound, 6);
    CHECK(table.rows.size() == 127);
    for (const auto& row : table.rows) {
      if (row.km) CHECK(Prob::dyadic(*row.km) <= row.value);
      if (row.y.size() == 6) continue;
      const auto& r0 = table.at(row.y.extended(Bit::Zero));
      const auto& r1 = table.at(row.y.extended(Bit::One));
      CHECK(r0.value.value() + r1.value.value() <= row.value.value());
      if (r0.km && row.km) CHECK(*row.km <= *r0.km);
    }
    CHECK(table.at(BitString::parse("0")).km == std::size_t{6});
    CHECK(table.at(BitString::parse("1")).km == std::size_t{9});
    CHECK(check_semimeasure(algprob_semimeasure(kDefaultBound), 7).ok());
  }

  TEST_CASE("engine results do not depend on the thread count") {
    const AlgProbEngine a(ResourceBound{15, 100}, 1);
    const AlgProbEngine b(ResourceBound{15, 100}, 4);
    CHECK(a.programs() == b.programs());
    for_each_string_shorter_than(7, [&](const BitString& y) {
      CHECK(a.algprob(y) == b.algprob(y));
      CHECK(a.km(y) == b.km(y));
    });
  }

  TEST_CASE("Solomonoff prediction") {
    const SolomonoffPrediction s = solomonoff_predict(BitString::parse("000"), Bit::Zero, kDefaultBound);
    REQUIRE(s.normalized.has_value());
    CHECK(*s.normalized == Prob(21, 22));
    const ResourceBound b{12, 50};
    const SemiPredictor raw = solomonoff_semipredictor(b);
    const Predictor norm = solomonoff_predictor(b);
    CHECK(check_predictor(raw, 6, true).ok());
    CHECK(check_predictor(norm, 6).ok());
    for_each_string_shorter_than(6, [&](const BitString& x) {
      const SolomonoffPrediction p = solomonoff_predict(x, Bit::One, b);
      const Rational nx = algprob(x, b).value();
      if (nx == 0) {
        CHECK_FALSE(p.raw.has_value());
        return;
      }
      CHECK(p.raw->value() == algprob(x.extended(Bit::One), b).value() / nx);
    });
  }

  TEST_CASE("enumeration limit is enforced") {
    CHECK_THROWS_AS(AlgProbEngine(ResourceBound{kMaxEnumerationLength + 3, 10}), Error);
  }
}
