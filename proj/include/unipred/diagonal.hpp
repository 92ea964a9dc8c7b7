#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "unipred/measure.hpp"

namespace unipred::diagonal {

enum class TraceStatus { Completed, PredictorUndefined, BudgetExhausted };

std::string status_name(TraceStatus s);

struct Block {
  std::size_t run = 0;          // t_k, the number of 1s before the block's 0
  std::uint64_t stage = 0;      // stage at which the witness appeared
  std::size_t end = 0;          // sequence length after the block
};

struct AdversaryTrace {
  BitString sequence;
  // Putnam: p(x^t, x_{t+1}) for each chosen bit. Blocks: the approximant's
  // value for 1 at each block witness.
  std::vector<Prob> probabilities;
  std::vector<Block> blocks;
  TraceStatus status = TraceStatus::Completed;
  std::size_t status_at = 0;  // step (Putnam) or block index where it stopped

  bool completed() const noexcept { return status == TraceStatus::Completed; }
};

// Each step appends a bit the predictor gives probability <= 1/2, taking
// tie_break when both bits qualify.
AdversaryTrace putnam_sequence(const SemiPredictor& p, std::size_t horizon, Bit tie_break = Bit::Zero);

// Block k searches (t, s) pairs with t + s <= block_budget, in order of
// increasing t + s and then increasing t, for the first f(x 1^t, s) > 1/2, then
// appends 1^t 0.
AdversaryTrace anti_limit_sequence(const LowerApproximation& f, std::uint64_t block_budget, std::size_t max_blocks);

// The stage-constant approximant s -> p(x, 1). Undefined reads as 0.
LowerApproximation exact_approximation(const SemiPredictor& p);

}  // namespace unipred::diagonal
