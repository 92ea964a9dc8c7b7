#include "unipred/monovm.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "unipred/error.hpp"
#include "unipred/parallel.hpp"

namespace unipred::mono {

namespace {

constexpr std::size_t kNoMatch = static_cast<std::size_t>(-1);

// Bracket partners, or nullopt when some bracket is unmatched.
std::optional<std::vector<std::size_t>> match_brackets(const std::vector<Op>& ops) {
  std::vector<std::size_t> match(ops.size(), kNoMatch);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i] == Op::Jz) {
      open.push_back(i);
    } else if (ops[i] == Op::Jnz) {
      if (open.empty()) return std::nullopt;
      match[i] = open.back();
      match[open.back()] = i;
      open.pop_back();
    }
  }
  if (!open.empty()) return std::nullopt;
  return match;
}

class Tape {
 public:
  Tape() : cells_(16, 0), origin_(8) {}

  std::uint8_t& at(long pos) {
    long idx = pos + origin_;
    if (idx < 0) {
      long grow = std::max<long>(-idx, static_cast<long>(cells_.size()));
      cells_.insert(cells_.begin(), static_cast<std::size_t>(grow), 0);
      origin_ += grow;
      idx += grow;
    } else if (idx >= static_cast<long>(cells_.size())) {
      cells_.resize(std::max<std::size_t>(static_cast<std::size_t>(idx) + 1, cells_.size() * 2), 0);
    }
    lo_ = std::min(lo_, pos);
    hi_ = std::max(hi_, pos);
    return cells_[static_cast<std::size_t>(idx)];
  }

  std::string render(long head) {
    std::string s;
    for (long p = lo_; p <= hi_; ++p) {
      char c = at(p) ? '1' : '0';
      if (p == head) {
        s += '[';
        s += c;
        s += ']';
      } else {
        s += c;
      }
    }
    return s;
  }

 private:
  std::vector<std::uint8_t> cells_;
  long origin_;
  long lo_ = 0;
  long hi_ = 0;
};

// The interpreter loop shared by execute() and trace().
template <class OnDispatch>
RunResult interpret(const std::vector<Op>& ops, std::uint64_t max_steps, std::size_t output_limit,
                    OnDispatch&& on_dispatch) {
  RunResult r;
  auto match = match_brackets(ops);
  if (!match) {
    r.status = RunStatus::OutOfSteps;
    r.steps = max_steps;
    return r;
  }
  Tape tape;
  long head = 0;
  std::size_t pc = 0;
  for (;;) {
    if (pc >= ops.size()) {
      r.status = RunStatus::Halted;
      return r;
    }
    if (r.steps == max_steps || r.output.size() >= output_limit) {
      r.status = RunStatus::OutOfSteps;
      return r;
    }
    const Op op = ops[pc];
    const std::size_t at_pc = pc;
    const std::uint64_t before = r.steps;
    ++r.steps;
    std::uint8_t& cell = tape.at(head);
    bool halt = false;
    switch (op) {
      case Op::Left:
        --head;
        ++pc;
        break;
      case Op::Right:
        ++head;
        ++pc;
        break;
      case Op::Flip:
        cell ^= 1;
        ++pc;
        break;
      case Op::Out:
        r.output.push_back(bit_of(cell != 0));
        ++pc;
        break;
      case Op::Jz:
        pc = cell == 0 ? (*match)[pc] + 1 : pc + 1;
        break;
      case Op::Jnz:
        pc = cell != 0 ? (*match)[pc] + 1 : pc + 1;
        break;
      case Op::Halt:
      case Op::Run:
        halt = true;
        break;
    }
    on_dispatch(before, at_pc, op, head, tape, r.output);
    if (halt) {
      r.status = RunStatus::Halted;
      return r;
    }
  }
}

std::vector<Op> ops_from_code(std::uint32_t code, std::uint32_t count) {
  std::vector<Op> ops(count);
  for (std::uint32_t k = count; k-- > 0;) {
    ops[k] = static_cast<Op>(code % 7);
    code /= 7;
  }
  return ops;
}

}  // namespace

std::string op_name(Op op) {
  switch (op) {
    case Op::Left: return "LEFT";
    case Op::Right: return "RIGHT";
    case Op::Flip: return "FLIP";
    case Op::Out: return "OUT";
    case Op::Jz: return "JZ";
    case Op::Jnz: return "JNZ";
    case Op::Halt: return "HALT";
    case Op::Run: return "RUN";
  }
  return "?";
}

Op op_from_bits(Bit a, Bit b, Bit c) { return static_cast<Op>(to_int(a) * 4 + to_int(b) * 2 + to_int(c)); }

BitString encode(const std::vector<Op>& ops) {
  BitString s;
  for (Op op : ops) s.append(BitString::from_uint(static_cast<std::uint64_t>(op), kOpBits));
  return s;
}

std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Halted: return "halted";
    case RunStatus::OutOfSteps: return "out-of-steps";
    case RunStatus::InputExhausted: return "input-exhausted";
  }
  return "unknown";
}

Decoded decode(const BitString& program) {
  Decoded d;
  for (std::size_t i = 0; i + kOpBits <= program.size(); i += kOpBits) {
    Op op = op_from_bits(program[i], program[i + 1], program[i + 2]);
    if (op == Op::Run) {
      d.terminated = true;
      d.bits_consumed = i + kOpBits;
      return d;
    }
    d.ops.push_back(op);
  }
  d.bits_consumed = program.size();
  return d;
}

RunResult execute(const std::vector<Op>& ops, std::uint64_t max_steps, std::size_t output_limit) {
  return interpret(ops, max_steps, output_limit, [](auto&&...) {});
}

RunResult run_machine(const BitString& program, std::uint64_t max_steps) {
  Decoded d = decode(program);
  RunResult r;
  if (d.terminated) r = execute(d.ops, max_steps);
  r.input_bits_consumed = d.bits_consumed;
  return r;
}

Trace trace(const BitString& program, std::uint64_t max_steps) {
  Trace t;
  t.program = decode(program);
  if (t.program.terminated) {
    t.result = interpret(t.program.ops, max_steps, static_cast<std::size_t>(-1),
                         [&](std::uint64_t step, std::size_t pc, Op op, long head, Tape& tape, const BitString& out) {
                           t.rows.push_back(TraceRow{step, pc, op, head, tape.render(head), out});
                         });
  }
  t.result.input_bits_consumed = t.program.bits_consumed;
  return t;
}

std::string disassemble(const BitString& program) {
  Decoded d = decode(program);
  std::string s;
  for (std::size_t i = 0; i < d.ops.size(); ++i) {
    if (i) s += ' ';
    s += op_name(d.ops[i]);
  }
  if (d.terminated) {
    s += s.empty() ? "RUN" : " RUN";
    if (d.bits_consumed < program.size()) s += " | " + std::to_string(program.size() - d.bits_consumed) + " unread";
  } else if (d.ops.size() * kOpBits < program.size()) {
    s += (s.empty() ? "" : " ") + std::string("...") + program.substr(d.ops.size() * kOpBits).str();
  }
  return s;
}

AlgProbEngine::AlgProbEngine(ResourceBound bound, std::size_t threads) : bound_(bound) {
  if (bound.max_program_len > kMaxEnumerationLength) {
    throw Error(ErrorCode::Range, "max program length " + std::to_string(bound.max_program_len) + " exceeds " +
                                      std::to_string(kMaxEnumerationLength));
  }
  const std::size_t slots = bound.max_program_len / kOpBits;  // opcodes including RUN
  scale_bits_ = slots * kOpBits;
  if (slots == 0) return;
  const std::uint32_t max_ops = static_cast<std::uint32_t>(slots - 1);

  // Depth-first over instruction lists, skipping any list whose brackets can
  // no longer be balanced: those hang and emit nothing.
  auto walk = [&](auto&& self, std::vector<Op>& ops, std::uint32_t code, std::size_t open,
                  std::vector<Entry>& out) -> void {
    if (open == 0) {
      RunResult r = execute(ops, bound.max_steps);
      if (!r.output.empty()) out.push_back(Entry{r.output.str(), static_cast<std::uint32_t>(ops.size()), code});
    }
    if (ops.size() == max_ops) return;
    for (int o = 0; o < 7; ++o) {
      Op op = static_cast<Op>(o);
      std::size_t next_open = open;
      if (op == Op::Jz) ++next_open;
      if (op == Op::Jnz) {
        if (open == 0) continue;
        --next_open;
      }
      if (next_open > max_ops - ops.size() - 1) continue;
      ops.push_back(op);
      self(self, ops, code * 7 + static_cast<std::uint32_t>(o), next_open, out);
      ops.pop_back();
    }
  };

  // The empty list emits nothing; split the rest by first opcode.
  std::vector<std::vector<Entry>> parts(7);
  const unsigned workers = threads ? static_cast<unsigned>(threads) : default_threads();
  if (max_ops > 0) {
    parallel_for(7, workers, [&](std::size_t o) {
      Op op = static_cast<Op>(o);
      if (op == Op::Jnz) return;
      std::size_t open = op == Op::Jz ? 1 : 0;
      if (open > max_ops - 1) return;
      std::vector<Op> ops{op};
      walk(walk, ops, static_cast<std::uint32_t>(o), open, parts[o]);
    });
  }
  for (auto& part : parts) outputs_.insert(outputs_.end(), part.begin(), part.end());

  std::sort(outputs_.begin(), outputs_.end(), [](const Entry& a, const Entry& b) {
    if (a.output != b.output) return a.output < b.output;
    if (a.ops != b.ops) return a.ops < b.ops;
    return a.code < b.code;
  });

  prefix_weight_.assign(outputs_.size() + 1, 0);
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    prefix_weight_[i + 1] = prefix_weight_[i] + (std::uint64_t{1} << (scale_bits_ - kOpBits * (outputs_[i].ops + 1)));
  }

  min_ops_.emplace_back();
  for (const auto& e : outputs_) min_ops_[0].push_back(e.ops);
  for (std::size_t k = 1; (std::size_t{1} << k) <= outputs_.size(); ++k) {
    const auto& prev = min_ops_[k - 1];
    std::vector<std::uint32_t> level(outputs_.size() - (std::size_t{1} << k) + 1);
    for (std::size_t i = 0; i < level.size(); ++i) level[i] = std::min(prev[i], prev[i + (std::size_t{1} << (k - 1))]);
    min_ops_.push_back(std::move(level));
  }
}

std::pair<std::size_t, std::size_t> AlgProbEngine::range(const BitString& y) const {
  auto key_lo = y.str();
  auto key_hi = key_lo + '2';
  auto cmp = [](const Entry& e, const std::string& k) { return e.output < k; };
  auto lo = std::lower_bound(outputs_.begin(), outputs_.end(), key_lo, cmp);
  auto hi = std::lower_bound(lo, outputs_.end(), key_hi, cmp);
  return {static_cast<std::size_t>(lo - outputs_.begin()), static_cast<std::size_t>(hi - outputs_.begin())};
}

Prob AlgProbEngine::algprob(const BitString& y) const {
  if (y.empty()) return Prob::one();
  auto [lo, hi] = range(y);
  const mpz_class count(static_cast<unsigned long>(prefix_weight_[hi] - prefix_weight_[lo]));
  return Prob(Rational(count) * pow2(-static_cast<long>(scale_bits_)));
}

std::optional<std::size_t> AlgProbEngine::km(const BitString& y) const {
  if (y.empty()) return 0;
  auto [lo, hi] = range(y);
  if (lo == hi) return std::nullopt;
  std::size_t k = 0;
  while ((std::size_t{2} << k) <= hi - lo) ++k;
  std::uint32_t m = std::min(min_ops_[k][lo], min_ops_[k][hi - (std::size_t{1} << k)]);
  return kOpBits * (m + 1);
}

std::size_t AlgProbEngine::description_count(const BitString& y) const {
  if (y.empty()) return 1;
  auto [lo, hi] = range(y);
  return hi - lo;
}

std::vector<BitString> AlgProbEngine::descriptions(const BitString& y) const {
  if (y.empty()) return {BitString()};
  auto [lo, hi] = range(y);
  std::vector<BitString> out;
  for (std::size_t i = lo; i < hi; ++i) {
    auto ops = ops_from_code(outputs_[i].code, outputs_[i].ops);
    ops.push_back(Op::Run);
    out.push_back(encode(ops));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::mutex engine_mutex;
std::map<std::pair<std::size_t, std::uint64_t>, std::shared_ptr<const AlgProbEngine>> engines;

}  // namespace

std::shared_ptr<const AlgProbEngine> shared_engine(const ResourceBound& bound) {
  const auto key = std::make_pair(bound.max_program_len, bound.max_steps);
  {
    std::lock_guard lock(engine_mutex);
    if (auto it = engines.find(key); it != engines.end()) return it->second;
  }
  auto engine = std::make_shared<const AlgProbEngine>(bound);
  std::lock_guard lock(engine_mutex);
  return engines.emplace(key, std::move(engine)).first->second;
}

void clear_shared_engines() {
  std::lock_guard lock(engine_mutex);
  engines.clear();
}

DescriptionSet minimal_descriptions(const BitString& y, const ResourceBound& bound) {
  return DescriptionSet{y, shared_engine(bound)->descriptions(y), bound};
}

Prob algprob(const BitString& y, const ResourceBound& bound) { return shared_engine(bound)->algprob(y); }

std::optional<std::size_t> km(const BitString& y, const ResourceBound& bound) { return shared_engine(bound)->km(y); }

Prob algprob_mixture_form(const BitString& y, const ResourceBound& bound) {
  if (bound.max_program_len > kMaxEnumerationLength) {
    throw Error(ErrorCode::Range, "max program length exceeds " + std::to_string(kMaxEnumerationLength));
  }
  const std::size_t slots = bound.max_program_len / kOpBits;
  Rational total = 0;
  // Machines i: every list of k < slots opcodes before RUN, weight 2^-3(k+1).
  std::vector<Op> ops;
  auto visit = [&](auto&& self) -> void {
    const RunResult r = execute(ops, bound.max_steps, y.size());
    if (y.is_prefix_of(r.output)) total += pow2(-static_cast<long>(kOpBits * (ops.size() + 1)));
    if (ops.size() + 1 == slots) return;
    for (int o = 0; o < 7; ++o) {
      ops.push_back(static_cast<Op>(o));
      self(self);
      ops.pop_back();
    }
  };
  if (slots > 0) visit(visit);
  // Lists still unterminated after all slots: each is a machine that is
  // still reading, with mass only at the empty string.
  if (y.empty()) {
    mpz_class seven_pow;
    mpz_ui_pow_ui(seven_pow.get_mpz_t(), 7, slots);
    total += Rational(seven_pow, 1) * pow2(-static_cast<long>(kOpBits * slots));
  }
  return Prob(std::move(total));
}

SolomonoffPrediction solomonoff_predict(const BitString& x, Bit b, const ResourceBound& bound) {
  auto engine = shared_engine(bound);
  const Prob nx = engine->algprob(x);
  const Prob n0 = engine->algprob(x.extended(Bit::Zero));
  const Prob n1 = engine->algprob(x.extended(Bit::One));
  const Prob& nb = b == Bit::Zero ? n0 : n1;
  SolomonoffPrediction p;
  p.raw = ratio_conditional(nb, nx);
  Rational denom = n0.value() + n1.value();
  if (sgn(denom) != 0) p.normalized = Prob(Rational(nb.value() / denom));
  return p;
}

namespace {

class AlgProbModel final : public MeasureModel {
 public:
  explicit AlgProbModel(std::shared_ptr<const AlgProbEngine> engine) : engine_(std::move(engine)) {}
  Prob value(const BitString& x) const override { return engine_->algprob(x); }
  std::string describe() const override {
    return "algprob(l=" + std::to_string(engine_->bound().max_program_len) +
           ",s=" + std::to_string(engine_->bound().max_steps) + ")";
  }

 private:
  std::shared_ptr<const AlgProbEngine> engine_;
};

std::string bound_tag(const ResourceBound& b) {
  return std::to_string(b.max_program_len) + "," + std::to_string(b.max_steps);
}

}  // namespace

SemiMeasure algprob_semimeasure(const ResourceBound& bound) {
  return SemiMeasure(std::make_shared<AlgProbModel>(shared_engine(bound)));
}

SemiPredictor solomonoff_semipredictor(const ResourceBound& bound) {
  return SemiPredictor("solomonoff-raw(" + bound_tag(bound) + ")",
                       [bound](const BitString& x, Bit b) { return solomonoff_predict(x, b, bound).raw; });
}

Predictor solomonoff_predictor(const ResourceBound& bound) {
  return Predictor("solomonoff(" + bound_tag(bound) + ")",
                   [bound](const BitString& x, Bit b) { return solomonoff_predict(x, b, bound).normalized; });
}

const AlgProbRow& AlgProbTable::at(const BitString& y) const {
  if (y.size() > depth) throw Error(ErrorCode::Range, "string longer than table depth");
  std::size_t idx = (std::size_t{1} << y.size()) - 1;
  for (std::size_t i = 0; i < y.size(); ++i) idx += static_cast<std::size_t>(to_int(y[i])) << (y.size() - 1 - i);
  return rows.at(idx);
}

AlgProbTable algprob_table(const ResourceBound& bound, std::size_t depth) {
  auto engine = shared_engine(bound);
  AlgProbTable t{bound, depth, {}};
  for_each_string_shorter_than(depth + 1, [&](const BitString& y) {
    t.rows.push_back(AlgProbRow{y, engine->algprob(y), engine->km(y), engine->description_count(y)});
  });
  return t;
}

}  // namespace unipred::mono
