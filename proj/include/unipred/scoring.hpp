#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unipred/hypotheses.hpp"
#include "unipred/measure.hpp"

namespace unipred::scoring {

// -log2 of a probability. The probability is the authoritative form; bits()
// and decimal() are for display.
class Loss {
 public:
  Loss() : prob_(Prob::one()) {}
  explicit Loss(Prob p) : prob_(std::move(p)) {}

  const Prob& probability() const noexcept { return prob_; }
  bool infinite() const { return prob_.is_zero(); }
  double bits() const;
  std::string decimal(int significant = 12) const;

  Loss& operator+=(const Loss& o) {
    prob_ *= o.prob_;
    return *this;
  }
  friend Loss operator+(Loss a, const Loss& b) { return a += b; }
  friend bool operator==(const Loss& a, const Loss& b) { return a.prob_ == b.prob_; }
  // Larger loss means smaller probability.
  friend std::strong_ordering operator<=>(const Loss& a, const Loss& b) { return b.prob_ <=> a.prob_; }

  // loss >= n bits, i.e. probability <= 2^-n
  bool at_least_bits(unsigned long n) const { return prob_ <= Prob::dyadic(n); }

 private:
  Prob prob_;
};

// Throws Undefined (never returns +inf for an undefined prediction).
Loss log_loss(const SemiPredictor& p, const BitString& x, Bit b);
// Sum of per-step losses along x.
Loss cumulative_loss(const SemiPredictor& p, const BitString& x);

// mu_1(x) / mu_2(x) in fraction form. Either side may vanish.
struct RegretRatio {
  Prob first;
  Prob second;

  std::optional<Rational> ratio() const;
  // -log2 of the ratio; +inf when first = 0, -inf when second = 0.
  double bits() const;
  std::string decimal(int significant = 12) const;
};

RegretRatio regret(const SemiPredictor& p1, const SemiPredictor& p2, const BitString& x);

struct BoundVerdict {
  bool holds = false;
  bool tight = false;
  Rational mixture_side;  // xi_w(x)
  Rational member_side;   // w(i) mu_i(x)
};

// xi_w(x) >= w(i) mu_i(x), the ratio form of R <= -log2 w(i).
BoundVerdict verify_optimality_bound(const hypotheses::HypothesisPool& pool, std::size_t i, const BitString& x);

// Per-step losses for several predictors on one sequence.
class RegretLedger {
 public:
  RegretLedger(const std::vector<SemiPredictor>& predictors, const BitString& x);

  std::size_t predictors() const noexcept { return steps_.size(); }
  std::size_t length() const noexcept { return sequence_.size(); }
  const BitString& sequence() const noexcept { return sequence_; }
  const std::string& name(std::size_t k) const { return names_.at(k); }
  const Loss& step(std::size_t k, std::size_t t) const { return steps_.at(k).at(t); }
  // Loss over the first t steps.
  Loss cumulative(std::size_t k, std::size_t t) const;
  Loss cumulative(std::size_t k) const { return cumulative(k, length()); }
  RegretRatio regret(std::size_t a, std::size_t b) const;

 private:
  BitString sequence_;
  std::vector<std::string> names_;
  std::vector<std::vector<Loss>> steps_;
  std::vector<std::vector<Loss>> running_;  // running_[k][t] covers steps < t
};

}  // namespace unipred::scoring
