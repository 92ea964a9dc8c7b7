#include "unipred/mixture.hpp"

#include <sstream>

#include "unipred/error.hpp"

namespace unipred::mixture {

namespace {

class MixtureCursor final : public PredictionCursor {
 public:
  explicit MixtureCursor(HypothesisPool pool) : pool_(std::move(pool)) {
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      mass_.push_back(pool_.weight(i).value());
      members_.push_back(pool_.measure(i).cursor());
    }
  }

  MaybeProb predict(Bit b) override {
    Rational total = 0;
    Rational next = 0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      if (sgn(mass_[i]) == 0) continue;
      total += mass_[i];
      next += mass_[i] * member_prediction(i, b).value();
    }
    if (sgn(total) == 0) return std::nullopt;
    return Prob(Rational(next / total));
  }

 protected:
  void on_advance(Bit b) override {
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      if (sgn(mass_[i]) != 0) mass_[i] *= member_prediction(i, b).value();
      members_[i]->advance(b);
    }
  }

 private:
  Prob member_prediction(std::size_t i, Bit b) {
    MaybeProb p = members_[i]->predict(b);
    if (!p) {
      throw Error(ErrorCode::Coma, "member " + std::to_string(i + 1) + " (" + pool_.describe(i) +
                                       ") has positive mass but no prediction after " + history().token());
    }
    return *p;
  }

  HypothesisPool pool_;
  std::vector<Rational> mass_;
  std::vector<std::unique_ptr<PredictionCursor>> members_;
};

class MixtureModel final : public MeasureModel {
 public:
  explicit MixtureModel(HypothesisPool pool) : pool_(std::move(pool)) {}

  Prob value(const BitString& x) const override {
    Rational total = 0;
    for (std::size_t i = 0; i < pool_.size(); ++i) total += pool_.weight(i).value() * pool_.measure(i)(x).value();
    return Prob(std::move(total));
  }
  std::unique_ptr<PredictionCursor> cursor() const override { return std::make_unique<MixtureCursor>(pool_); }
  std::string describe() const override { return "mixture[" + std::to_string(pool_.size()) + "]"; }

 private:
  HypothesisPool pool_;
};

MaybeProb member_conditional(const HypothesisPool& pool, std::size_t i, const BitString& history, Bit b) {
  return pool.measure(i).conditional(history, b);
}

}  // namespace

Measure mixture_measure(const HypothesisPool& pool) { return Measure(std::make_shared<MixtureModel>(pool)); }

Prob mixture_value(const HypothesisPool& pool, const BitString& x) { return MixtureModel(pool).value(x); }

MaybeProb mixture_predict(const HypothesisPool& pool, const BitString& x, Bit b) {
  MixtureModel m(pool);
  return ratio_conditional(m.value(x.extended(b)), m.value(x));
}

Predictor mixture_predictor(const HypothesisPool& pool) {
  return Predictor(
      "mixture[" + std::to_string(pool.size()) + "]",
      [pool](const BitString& x, Bit b) { return mixture_predict(pool, x, b); },
      [pool] { return std::make_unique<MixtureCursor>(pool); });
}

AggregatorState AggregatorState::initial(const HypothesisPool& pool) {
  const Rational total = pool.weights().sum();
  std::vector<Prob> w;
  w.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) w.emplace_back(Rational(pool.weight(i).value() / total));
  return AggregatorState(pool, std::move(w), BitString());
}

AggregatorState update_weights(const AggregatorState& state, Bit observed) {
  const auto& pool = state.pool();
  std::vector<Rational> scaled(pool.size(), Rational(0));
  Rational z = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (state.weights()[i].is_zero()) continue;
    MaybeProb p = member_conditional(pool, i, state.history(), observed);
    if (!p) {
      throw Error(ErrorCode::Coma, "member " + std::to_string(i + 1) + " (" + pool.describe(i) +
                                       ") has positive weight but no prediction after " + state.history().token());
    }
    scaled[i] = state.weights()[i].value() * p->value();
    z += scaled[i];
  }
  if (sgn(z) == 0) {
    throw Error(ErrorCode::ZeroNormalizer, "all members assign zero to bit " + std::string(1, to_char(observed)) +
                                               " after history " + state.history().token());
  }
  std::vector<Prob> next;
  next.reserve(pool.size());
  for (auto& s : scaled) next.emplace_back(Rational(s / z));
  return AggregatorState(pool, std::move(next), state.history().extended(observed));
}

Prob aggregate_predict(const AggregatorState& state, Bit b) {
  const auto& pool = state.pool();
  Rational total = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (state.weights()[i].is_zero()) continue;
    MaybeProb p = member_conditional(pool, i, state.history(), b);
    if (!p) {
      throw Error(ErrorCode::Coma, "member " + std::to_string(i + 1) + " (" + pool.describe(i) +
                                       ") has positive weight but no prediction after " + state.history().token());
    }
    total += state.weights()[i].value() * p->value();
  }
  return Prob(std::move(total));
}

bool check_domination(const HypothesisPool& pool, std::size_t i, const BitString& x) {
  if (i >= pool.size()) throw Error(ErrorCode::InvalidArgument, "member index out of range");
  return mixture_value(pool, x).value() >= pool.weight(i).value() * pool.measure(i)(x).value();
}

}  // namespace unipred::mixture
