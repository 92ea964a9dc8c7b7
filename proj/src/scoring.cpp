#include "unipred/scoring.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "unipred/error.hpp"
#include "unipred/mixture.hpp"

namespace unipred::scoring {

namespace {

std::string format_bits(double v, int significant) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  return buf;
}

Prob require(const MaybeProb& p, const SemiPredictor& pred, const BitString& x) {
  if (!p) throw Error(ErrorCode::Undefined, pred.name() + " is undefined after " + x.token());
  return *p;
}

}  // namespace

double Loss::bits() const {
  if (infinite()) return std::numeric_limits<double>::infinity();
  double v = -log2_of(prob_.value());
  return v == 0 ? 0.0 : v;
}

std::string Loss::decimal(int significant) const { return format_bits(bits(), significant); }

Loss log_loss(const SemiPredictor& p, const BitString& x, Bit b) { return Loss(require(p(x, b), p, x)); }

Loss cumulative_loss(const SemiPredictor& p, const BitString& x) {
  auto cur = p.cursor();
  Loss total;
  for (std::size_t t = 0; t < x.size(); ++t) {
    total += Loss(require(cur->predict(x[t]), p, cur->history()));
    cur->advance(x[t]);
  }
  return total;
}

std::optional<Rational> RegretRatio::ratio() const {
  if (second.is_zero()) return std::nullopt;
  return Rational(first.value() / second.value());
}

double RegretRatio::bits() const {
  if (first.is_zero() && second.is_zero()) return std::numeric_limits<double>::quiet_NaN();
  if (first.is_zero()) return std::numeric_limits<double>::infinity();
  if (second.is_zero()) return -std::numeric_limits<double>::infinity();
  double v = -log2_of(*ratio());
  return v == 0 ? 0.0 : v;
}

std::string RegretRatio::decimal(int significant) const {
  double v = bits();
  if (std::isnan(v)) return "nan";
  return format_bits(v, significant);
}

RegretRatio regret(const SemiPredictor& p1, const SemiPredictor& p2, const BitString& x) {
  return RegretRatio{cumulative_loss(p1, x).probability(), cumulative_loss(p2, x).probability()};
}

BoundVerdict verify_optimality_bound(const hypotheses::HypothesisPool& pool, std::size_t i, const BitString& x) {
  if (i >= pool.size()) throw Error(ErrorCode::InvalidArgument, "member index out of range");
  BoundVerdict v;
  v.mixture_side = mixture::mixture_value(pool, x).value();
  v.member_side = pool.weight(i).value() * pool.measure(i)(x).value();
  v.holds = v.mixture_side >= v.member_side;
  v.tight = v.mixture_side == v.member_side;
  return v;
}

RegretLedger::RegretLedger(const std::vector<SemiPredictor>& predictors, const BitString& x) : sequence_(x) {
  for (const auto& p : predictors) {
    names_.push_back(p.name());
    auto cur = p.cursor();
    std::vector<Loss> steps;
    std::vector<Loss> running{Loss()};
    steps.reserve(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
      steps.emplace_back(require(cur->predict(x[t]), p, cur->history()));
      running.push_back(running.back() + steps.back());
      cur->advance(x[t]);
    }
    steps_.push_back(std::move(steps));
    running_.push_back(std::move(running));
  }
}

Loss RegretLedger::cumulative(std::size_t k, std::size_t t) const { return running_.at(k).at(t); }

RegretRatio RegretLedger::regret(std::size_t a, std::size_t b) const {
  return RegretRatio{cumulative(a).probability(), cumulative(b).probability()};
}

}  // namespace unipred::scoring
