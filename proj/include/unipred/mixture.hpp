#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "unipred/hypotheses.hpp"
#include "unipred/measure.hpp"

namespace unipred::mixture {

using hypotheses::HypothesisPool;

// xi_w(x) = sum_i w(i) mu_i(x). Additive at every string, with total mass
// xi_w(empty) = sum of the weights.
Measure mixture_measure(const HypothesisPool& pool);

Prob mixture_value(const HypothesisPool& pool, const BitString& x);
// xi_w(xb) / xi_w(x); Undefined iff xi_w(x) = 0.
MaybeProb mixture_predict(const HypothesisPool& pool, const BitString& x, Bit b);
// The mixture predictor, with a cursor that carries w(i) mu_i(history)
// forward instead of re-evaluating every prefix.
Predictor mixture_predictor(const HypothesisPool& pool);

// Sequential aggregator. weights()[i] is the posterior used to predict the bit
// after history(); the initial state normalizes the prior so that it already
// sums to one.
class AggregatorState {
 public:
  static AggregatorState initial(const HypothesisPool& pool);

  const HypothesisPool& pool() const noexcept { return pool_; }
  const std::vector<Prob>& weights() const noexcept { return weights_; }
  std::size_t time() const noexcept { return history_.size(); }
  const BitString& history() const noexcept { return history_; }

 private:
  AggregatorState(HypothesisPool pool, std::vector<Prob> weights, BitString history)
      : pool_(std::move(pool)), weights_(std::move(weights)), history_(std::move(history)) {}

  friend AggregatorState update_weights(const AggregatorState& state, Bit observed);

  HypothesisPool pool_;
  std::vector<Prob> weights_;
  BitString history_;
};

// w'(i) = w(i) p_i(history, observed) / Z. Throws ZeroNormalizer when Z = 0
// and Coma when a positive-weight member has no prediction.
AggregatorState update_weights(const AggregatorState& state, Bit observed);

// sum_i w_t(i) p_i(history, b). Equal to mixture_predict on the same history.
Prob aggregate_predict(const AggregatorState& state, Bit b);

// xi_w(x) >= w(i) mu_i(x), exactly.
bool check_domination(const HypothesisPool& pool, std::size_t i, const BitString& x);

}  // namespace unipred::mixture
