#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unipred/bitstring.hpp"
#include "unipred/measure.hpp"

// MONO: a monotone machine reading 3-bit opcodes up to a RUN marker, then
// executing them on a two-way infinite binary tape.
namespace unipred::mono {

enum class Op : std::uint8_t { Left = 0, Right, Flip, Out, Jz, Jnz, Halt, Run };

constexpr std::size_t kOpBits = 3;
// Longest program length the enumeration engine accepts.
constexpr std::size_t kMaxEnumerationLength = 24;

std::string op_name(Op op);
Op op_from_bits(Bit a, Bit b, Bit c);
BitString encode(const std::vector<Op>& ops);  // no implicit RUN

struct ResourceBound {
  std::size_t max_program_len = 18;
  std::uint64_t max_steps = 500;

  friend bool operator==(const ResourceBound&, const ResourceBound&) = default;
};

inline constexpr ResourceBound kDefaultBound{18, 500};

enum class RunStatus { Halted, OutOfSteps, InputExhausted };
std::string status_name(RunStatus s);

struct RunResult {
  BitString output;
  std::size_t input_bits_consumed = 0;
  RunStatus status = RunStatus::InputExhausted;
  std::uint64_t steps = 0;
};

// Instruction list read from a program: everything before the first RUN.
struct Decoded {
  std::vector<Op> ops;
  bool terminated = false;        // a RUN was read
  std::size_t bits_consumed = 0;  // up to and including RUN, else all bits
};

Decoded decode(const BitString& program);

// Without a RUN the machine is still reading: nothing runs, nothing is output.
RunResult run_machine(const BitString& program, std::uint64_t max_steps);
// Executes an already decoded list as if RUN had just been read. Stops early
// once the output reaches output_limit bits.
RunResult execute(const std::vector<Op>& ops, std::uint64_t max_steps,
                  std::size_t output_limit = static_cast<std::size_t>(-1));

struct TraceRow {
  std::uint64_t step = 0;  // steps completed before this dispatch
  std::size_t pc = 0;
  Op op = Op::Halt;
  long head = 0;
  std::string tape;  // visited cells, head cell in brackets
  BitString output;  // after the dispatch
};

struct Trace {
  Decoded program;
  std::vector<TraceRow> rows;
  RunResult result;
};

Trace trace(const BitString& program, std::uint64_t max_steps);
std::string disassemble(const BitString& program);

// Every RUN-terminated instruction list of length <= max_program_len, run for
// max_steps, indexed by its output. For y != empty these lists are exactly
// the minimal descriptions of y.
class AlgProbEngine {
 public:
  explicit AlgProbEngine(ResourceBound bound, std::size_t threads = 0);

  const ResourceBound& bound() const noexcept { return bound_; }
  std::size_t programs() const noexcept { return outputs_.size(); }

  Prob algprob(const BitString& y) const;
  std::optional<std::size_t> km(const BitString& y) const;
  std::size_t description_count(const BitString& y) const;
  // Minimal descriptions as program bit strings, shortlex order.
  std::vector<BitString> descriptions(const BitString& y) const;

 private:
  struct Entry {
    std::string output;
    std::uint32_t ops;  // instruction count, RUN excluded
    std::uint32_t code; // base-7 instruction index, first op most significant
  };
  std::pair<std::size_t, std::size_t> range(const BitString& y) const;

  ResourceBound bound_;
  std::size_t scale_bits_ = 0;                 // weights are counts of 2^-scale_bits_
  std::vector<Entry> outputs_;                 // sorted by output
  std::vector<std::uint64_t> prefix_weight_;   // prefix sums over outputs_
  std::vector<std::vector<std::uint32_t>> min_ops_;  // sparse table
};

// Cached per bound; thread-safe.
std::shared_ptr<const AlgProbEngine> shared_engine(const ResourceBound& bound);
void clear_shared_engines();

struct DescriptionSet {
  BitString target;
  std::vector<BitString> members;
  ResourceBound bound;
};

DescriptionSet minimal_descriptions(const BitString& y, const ResourceBound& bound);
Prob algprob(const BitString& y, const ResourceBound& bound);
// Sum over instruction lists i of 2^-|enc(i)| times the point semi-measure of
// i's output, computed independently of the engine.
Prob algprob_mixture_form(const BitString& y, const ResourceBound& bound);
std::optional<std::size_t> km(const BitString& y, const ResourceBound& bound);

struct SolomonoffPrediction {
  MaybeProb raw;
  MaybeProb normalized;
};

SolomonoffPrediction solomonoff_predict(const BitString& x, Bit b, const ResourceBound& bound);

SemiMeasure algprob_semimeasure(const ResourceBound& bound);
SemiPredictor solomonoff_semipredictor(const ResourceBound& bound);
Predictor solomonoff_predictor(const ResourceBound& bound);

struct AlgProbRow {
  BitString y;
  Prob value;
  std::optional<std::size_t> km;
  std::size_t descriptions = 0;
};

struct AlgProbTable {
  ResourceBound bound;
  std::size_t depth = 0;
  std::vector<AlgProbRow> rows;  // shortlex, all |y| <= depth

  const AlgProbRow& at(const BitString& y) const;
};

AlgProbTable algprob_table(const ResourceBound& bound, std::size_t depth);

}  // namespace unipred::mono
