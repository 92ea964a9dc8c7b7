#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unipred/bitstring.hpp"
#include "unipred/rational.hpp"

namespace unipred {

// A conditional probability, or nothing when the conditioning prefix has
// measure zero. Undefined is an ordinary value here, never an error.
using MaybeProb = std::optional<Prob>;

// m(xb)/m(x), Undefined when m(x) = 0.
MaybeProb ratio_conditional(const Prob& extended, const Prob& prefix);

// Walks a single sequence forward. Models with internal state (contexts,
// running products) provide their own cursor so that a length-T pass costs
// O(T) rather than O(T^2).
class PredictionCursor {
 public:
  virtual ~PredictionCursor() = default;

  virtual MaybeProb predict(Bit b) = 0;
  void advance(Bit b) {
    on_advance(b);
    history_.push_back(b);
  }
  const BitString& history() const noexcept { return history_; }

 protected:
  virtual void on_advance(Bit b) = 0;

 private:
  BitString history_;
};

// Always owned through shared_ptr.
class MeasureModel : public std::enable_shared_from_this<MeasureModel> {
 public:
  virtual ~MeasureModel() = default;

  virtual Prob value(const BitString& x) const = 0;
  virtual MaybeProb conditional(const BitString& x, Bit b) const;
  virtual std::unique_ptr<PredictionCursor> cursor() const;
  virtual std::string describe() const = 0;
};

// Total map from finite strings to [0,1] satisfying nu(empty) <= 1 and
// nu(x0) + nu(x1) <= nu(x). Immutable; models must be pure, so copies may be
// shared freely across threads.
class SemiMeasure {
 public:
  explicit SemiMeasure(std::shared_ptr<const MeasureModel> model);

  static SemiMeasure from_function(std::string name, std::function<Prob(const BitString&)> fn);

  Prob operator()(const BitString& x) const { return model_->value(x); }
  MaybeProb conditional(const BitString& x, Bit b) const { return model_->conditional(x, b); }
  std::unique_ptr<PredictionCursor> cursor() const { return model_->cursor(); }
  std::string describe() const { return model_->describe(); }

  // Mass lost at x: nu(x) - nu(x0) - nu(x1).
  Rational deficit(const BitString& x) const;

  const std::shared_ptr<const MeasureModel>& model() const noexcept { return model_; }

 private:
  std::shared_ptr<const MeasureModel> model_;
};

// A semi-measure whose inequalities hold with equality. Construction does not
// verify this; check_measure does.
class Measure : public SemiMeasure {
 public:
  using SemiMeasure::SemiMeasure;

  static Measure from_function(std::string name, std::function<Prob(const BitString&)> fn);
};

// lambda(x) = 2^-|x|
Measure uniform_measure();

// Wraps a semi-measure with a thread-safe per-string cache.
SemiMeasure memoized(const SemiMeasure& m);
Measure memoized(const Measure& m);

MaybeProb conditional(const SemiMeasure& m, const BitString& x, Bit b);

class SemiPredictor {
 public:
  using Fn = std::function<MaybeProb(const BitString&, Bit)>;
  using CursorFactory = std::function<std::unique_ptr<PredictionCursor>()>;

  SemiPredictor(std::string name, Fn fn, CursorFactory cursor = {});

  MaybeProb operator()(const BitString& x, Bit b) const { return fn_(x, b); }
  // Cursor positioned at the empty history.
  std::unique_ptr<PredictionCursor> cursor() const;
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Fn fn_;
  CursorFactory cursor_;
};

// p(x,0) + p(x,1) = 1 wherever defined.
class Predictor : public SemiPredictor {
 public:
  using SemiPredictor::SemiPredictor;
};

Predictor predictor_from(const Measure& m);
SemiPredictor semipredictor_from(const SemiMeasure& m);

// f(x, s), nondecreasing in the stage s.
class LowerApproximation {
 public:
  using Fn = std::function<Prob(const BitString&, std::uint64_t)>;

  LowerApproximation(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  Prob operator()(const BitString& x, std::uint64_t stage) const { return fn_(x, stage); }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

struct Violation {
  enum class Kind { Root, Additivity, PredictorSum };
  Kind kind;
  BitString at;
  Rational parent;    // m(x), or 1 for predictor sums
  Rational children;  // m(x0) + m(x1), or p(x,0) + p(x,1)
};

struct CheckReport {
  std::vector<Violation> violations;
  std::size_t strings_checked = 0;

  bool ok() const noexcept { return violations.empty(); }
  bool has(Violation::Kind kind) const noexcept;
};

// Exhaustive over every string x with |x| < max_len.
CheckReport check_measure(const SemiMeasure& m, std::size_t max_len);
CheckReport check_semimeasure(const SemiMeasure& m, std::size_t max_len);
// p(x,0)+p(x,1) = 1 (or <= 1 for semi-predictors) at every defined x with |x| < max_len.
CheckReport check_predictor(const SemiPredictor& p, std::size_t max_len, bool semi = false);
// Stage monotonicity f(x,s) <= f(x,s+1) on every |x| < max_len and s < max_stage.
CheckReport check_lower_approximation(const LowerApproximation& f, std::size_t max_len,
                                      std::uint64_t max_stage);

}  // namespace unipred
