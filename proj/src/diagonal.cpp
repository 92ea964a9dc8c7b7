#include "unipred/diagonal.hpp"

namespace unipred::diagonal {

std::string status_name(TraceStatus s) {
  switch (s) {
    case TraceStatus::Completed: return "completed";
    case TraceStatus::PredictorUndefined: return "predictor-undefined";
    case TraceStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

AdversaryTrace putnam_sequence(const SemiPredictor& p, std::size_t horizon, Bit tie_break) {
  AdversaryTrace trace;
  auto cur = p.cursor();
  const Prob half = Prob::half();
  for (std::size_t t = 0; t < horizon; ++t) {
    MaybeProb p0 = cur->predict(Bit::Zero);
    MaybeProb p1 = cur->predict(Bit::One);
    if (!p0 || !p1) {
      trace.status = TraceStatus::PredictorUndefined;
      trace.status_at = t;
      return trace;
    }
    const bool zero_ok = *p0 <= half;
    const bool one_ok = *p1 <= half;
    Bit pick;
    if (zero_ok && one_ok) {
      pick = tie_break;
    } else if (zero_ok) {
      pick = Bit::Zero;
    } else {
      pick = Bit::One;
    }
    trace.probabilities.push_back(pick == Bit::Zero ? *p0 : *p1);
    trace.sequence.push_back(pick);
    cur->advance(pick);
  }
  trace.status_at = horizon;
  return trace;
}

AdversaryTrace anti_limit_sequence(const LowerApproximation& f, std::uint64_t block_budget, std::size_t max_blocks) {
  AdversaryTrace trace;
  const Prob half = Prob::half();
  for (std::size_t k = 0; k < max_blocks; ++k) {
    bool found = false;
    for (std::uint64_t d = 0; d <= block_budget && !found; ++d) {
      BitString probe = trace.sequence;
      for (std::uint64_t t = 0; t <= d; ++t) {
        if (t > 0) probe.push_back(Bit::One);
        const std::uint64_t s = d - t;
        Prob v = f(probe, s);
        if (v > half) {
          trace.probabilities.push_back(v);
          trace.sequence = probe;
          trace.sequence.push_back(Bit::Zero);
          trace.blocks.push_back(Block{static_cast<std::size_t>(t), s, trace.sequence.size()});
          found = true;
          break;
        }
      }
    }
    if (!found) {
      trace.status = TraceStatus::BudgetExhausted;
      trace.status_at = k;
      return trace;
    }
  }
  trace.status_at = max_blocks;
  return trace;
}

LowerApproximation exact_approximation(const SemiPredictor& p) {
  return LowerApproximation(p.name(), [p](const BitString& x, std::uint64_t) {
    MaybeProb v = p(x, Bit::One);
    return v ? *v : Prob::zero();
  });
}

}  // namespace unipred::diagonal
