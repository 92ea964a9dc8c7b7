#include "unipred/measure.hpp"

#include <mutex>
#include <unordered_map>

#include "unipred/error.hpp"

namespace unipred {

MaybeProb ratio_conditional(const Prob& extended, const Prob& prefix) {
  if (prefix.is_zero()) return std::nullopt;
  return Prob(Rational(extended.value() / prefix.value()));
}

namespace {

// Replays a stateless conditional along the cursor's history.
class ReplayCursor final : public PredictionCursor {
 public:
  explicit ReplayCursor(std::function<MaybeProb(const BitString&, Bit)> fn) : fn_(std::move(fn)) {}

  MaybeProb predict(Bit b) override { return fn_(history(), b); }

 protected:
  void on_advance(Bit) override {}

 private:
  std::function<MaybeProb(const BitString&, Bit)> fn_;
};

class FunctionModel final : public MeasureModel {
 public:
  FunctionModel(std::string name, std::function<Prob(const BitString&)> fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  Prob value(const BitString& x) const override { return fn_(x); }
  std::string describe() const override { return name_; }

 private:
  std::string name_;
  std::function<Prob(const BitString&)> fn_;
};

class UniformModel final : public MeasureModel {
 public:
  Prob value(const BitString& x) const override { return Prob::dyadic(x.size()); }
  MaybeProb conditional(const BitString&, Bit) const override { return Prob::half(); }
  std::string describe() const override { return "uniform"; }
};

class MemoModel final : public MeasureModel {
 public:
  explicit MemoModel(std::shared_ptr<const MeasureModel> inner) : inner_(std::move(inner)) {}

  Prob value(const BitString& x) const override {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(x); it != cache_.end()) return it->second;
    }
    Prob v = inner_->value(x);
    std::lock_guard lock(mutex_);
    cache_.emplace(x, v);
    return v;
  }
  MaybeProb conditional(const BitString& x, Bit b) const override {
    return ratio_conditional(value(x.extended(b)), value(x));
  }
  std::string describe() const override { return inner_->describe(); }

 private:
  std::shared_ptr<const MeasureModel> inner_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<BitString, Prob> cache_;
};

}  // namespace

MaybeProb MeasureModel::conditional(const BitString& x, Bit b) const {
  return ratio_conditional(value(x.extended(b)), value(x));
}

std::unique_ptr<PredictionCursor> MeasureModel::cursor() const {
  return std::make_unique<ReplayCursor>(
      [self = shared_from_this()](const BitString& x, Bit b) { return self->conditional(x, b); });
}

SemiMeasure::SemiMeasure(std::shared_ptr<const MeasureModel> model) : model_(std::move(model)) {
  if (!model_) throw Error(ErrorCode::InvalidArgument, "null measure model");
}

SemiMeasure SemiMeasure::from_function(std::string name, std::function<Prob(const BitString&)> fn) {
  return SemiMeasure(std::make_shared<FunctionModel>(std::move(name), std::move(fn)));
}

Rational SemiMeasure::deficit(const BitString& x) const {
  return (*this)(x).value() - (*this)(x.extended(Bit::Zero)).value() -
         (*this)(x.extended(Bit::One)).value();
}

Measure Measure::from_function(std::string name, std::function<Prob(const BitString&)> fn) {
  return Measure(std::make_shared<FunctionModel>(std::move(name), std::move(fn)));
}

Measure uniform_measure() { return Measure(std::make_shared<UniformModel>()); }

SemiMeasure memoized(const SemiMeasure& m) { return SemiMeasure(std::make_shared<MemoModel>(m.model())); }
Measure memoized(const Measure& m) { return Measure(std::make_shared<MemoModel>(m.model())); }

MaybeProb conditional(const SemiMeasure& m, const BitString& x, Bit b) { return m.conditional(x, b); }

SemiPredictor::SemiPredictor(std::string name, Fn fn, CursorFactory cursor)
    : name_(std::move(name)), fn_(std::move(fn)), cursor_(std::move(cursor)) {
  if (!fn_) throw Error(ErrorCode::InvalidArgument, "predictor without a prediction function");
}

std::unique_ptr<PredictionCursor> SemiPredictor::cursor() const {
  if (cursor_) return cursor_();
  return std::make_unique<ReplayCursor>(fn_);
}

Predictor predictor_from(const Measure& m) {
  return Predictor(
      m.describe(), [m](const BitString& x, Bit b) { return m.conditional(x, b); },
      [m] { return m.cursor(); });
}

SemiPredictor semipredictor_from(const SemiMeasure& m) {
  return SemiPredictor(
      m.describe(), [m](const BitString& x, Bit b) { return m.conditional(x, b); },
      [m] { return m.cursor(); });
}

bool CheckReport::has(Violation::Kind kind) const noexcept {
  for (const auto& v : violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

namespace {

CheckReport check_additivity(const SemiMeasure& m, std::size_t max_len, bool equality) {
  CheckReport report;
  Rational root = m(BitString()).value();
  bool root_ok = equality ? root == 1 : root <= 1;
  if (!root_ok) report.violations.push_back({Violation::Kind::Root, BitString(), root, Rational(1)});
  for_each_string_shorter_than(max_len, [&](const BitString& x) {
    ++report.strings_checked;
    Rational parent = m(x).value();
    Rational children = m(x.extended(Bit::Zero)).value() + m(x.extended(Bit::One)).value();
    bool ok = equality ? children == parent : children <= parent;
    if (!ok) report.violations.push_back({Violation::Kind::Additivity, x, parent, children});
  });
  return report;
}

}  // namespace

CheckReport check_measure(const SemiMeasure& m, std::size_t max_len) {
  return check_additivity(m, max_len, true);
}

CheckReport check_semimeasure(const SemiMeasure& m, std::size_t max_len) {
  return check_additivity(m, max_len, false);
}

CheckReport check_predictor(const SemiPredictor& p, std::size_t max_len, bool semi) {
  CheckReport report;
  for_each_string_shorter_than(max_len, [&](const BitString& x) {
    MaybeProb p0 = p(x, Bit::Zero);
    MaybeProb p1 = p(x, Bit::One);
    if (p0.has_value() != p1.has_value()) {
      report.violations.push_back({Violation::Kind::PredictorSum, x, Rational(1), Rational(-1)});
      return;
    }
    if (!p0) return;
    ++report.strings_checked;
    Rational sum = p0->value() + p1->value();
    bool ok = semi ? sum <= 1 : sum == 1;
    if (!ok) report.violations.push_back({Violation::Kind::PredictorSum, x, Rational(1), sum});
  });
  return report;
}

CheckReport check_lower_approximation(const LowerApproximation& f, std::size_t max_len,
                                      std::uint64_t max_stage) {
  CheckReport report;
  for_each_string_shorter_than(max_len, [&](const BitString& x) {
    ++report.strings_checked;
    Prob prev = f(x, 0);
    for (std::uint64_t s = 1; s <= max_stage; ++s) {
      Prob next = f(x, s);
      if (next < prev) {
        report.violations.push_back({Violation::Kind::Additivity, x, prev.value(), next.value()});
        return;
      }
      prev = next;
    }
  });
  return report;
}

}  // namespace unipred
