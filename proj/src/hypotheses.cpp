#include "unipred/hypotheses.hpp"

#include <fstream>
#include <sstream>

#include "unipred/error.hpp"
#include "unipred/lzprior.hpp"

namespace unipred::hypotheses {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Bit point_bit(const Point& p, std::size_t t) {
  if (t < p.prefix.size()) return p.prefix[t];
  return p.cycle[(t - p.prefix.size()) % p.cycle.size()];
}

std::size_t markov_context(const Markov& m, const BitString& x, std::size_t t) {
  std::size_t r = 0;
  for (std::size_t k = 0; k < m.order; ++k) {
    // Bit t - order + k, zero when it falls before the start.
    std::size_t back = m.order - k;
    int bit = t >= back ? to_int(x[t - back]) : 0;
    r = (r << 1) | static_cast<std::size_t>(bit);
  }
  return r;
}

Prob bernoulli_prob(const Bernoulli& m, Bit b) { return b == Bit::One ? m.bias : m.bias.complement(); }

class BernoulliCursor final : public PredictionCursor {
 public:
  explicit BernoulliCursor(Bernoulli m) : m_(std::move(m)) {}
  MaybeProb predict(Bit b) override {
    if (dead_) return std::nullopt;
    return bernoulli_prob(m_, b);
  }

 protected:
  void on_advance(Bit b) override { dead_ = dead_ || bernoulli_prob(m_, b).is_zero(); }

 private:
  Bernoulli m_;
  bool dead_ = false;
};

class BernoulliModel final : public MeasureModel {
 public:
  explicit BernoulliModel(Bernoulli m) : m_(std::move(m)) {}

  Prob value(const BitString& x) const override {
    const std::size_t ones = x.count_ones();
    mpz_class n1, d1, n0, d0;
    const Rational& p = m_.bias.value();
    Rational q = Rational(1) - p;
    mpz_pow_ui(n1.get_mpz_t(), p.get_num_mpz_t(), ones);
    mpz_pow_ui(d1.get_mpz_t(), p.get_den_mpz_t(), ones);
    mpz_pow_ui(n0.get_mpz_t(), q.get_num_mpz_t(), x.size() - ones);
    mpz_pow_ui(d0.get_mpz_t(), q.get_den_mpz_t(), x.size() - ones);
    Rational v(n1 * n0, d1 * d0);
    v.canonicalize();
    return Prob(std::move(v));
  }
  MaybeProb conditional(const BitString& x, Bit b) const override {
    if (value(x).is_zero()) return std::nullopt;
    return bernoulli_prob(m_, b);
  }
  std::unique_ptr<PredictionCursor> cursor() const override { return std::make_unique<BernoulliCursor>(m_); }
  std::string describe() const override { return hypotheses::describe(HypothesisSpec(m_)); }

 private:
  Bernoulli m_;
};

class MarkovCursor final : public PredictionCursor {
 public:
  explicit MarkovCursor(const Markov& m) : m_(m) {}
  MaybeProb predict(Bit b) override {
    if (dead_) return std::nullopt;
    return m_.rows[context_][to_int(b)];
  }

 protected:
  void on_advance(Bit b) override {
    dead_ = dead_ || m_.rows[context_][to_int(b)].is_zero();
    if (m_.order > 0) {
      context_ = ((context_ << 1) | static_cast<std::size_t>(to_int(b))) & ((std::size_t{1} << m_.order) - 1);
    }
  }

 private:
  const Markov& m_;
  std::size_t context_ = 0;
  bool dead_ = false;
};

class MarkovModel final : public MeasureModel {
 public:
  explicit MarkovModel(Markov m) : m_(std::move(m)) {}

  Prob value(const BitString& x) const override {
    // Count transitions per (context, bit), then one power per cell.
    std::vector<std::array<unsigned long, 2>> counts(m_.rows.size(), {0, 0});
    for (std::size_t t = 0; t < x.size(); ++t) ++counts[markov_context(m_, x, t)][to_int(x[t])];
    mpz_class num = 1, den = 1;
    for (std::size_t r = 0; r < counts.size(); ++r) {
      for (int b = 0; b < 2; ++b) {
        if (counts[r][b] == 0) continue;
        const Rational& p = m_.rows[r][b].value();
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), p.get_num_mpz_t(), counts[r][b]);
        mpz_pow_ui(d.get_mpz_t(), p.get_den_mpz_t(), counts[r][b]);
        num *= n;
        den *= d;
      }
    }
    Rational v(num, den);
    v.canonicalize();
    return Prob(std::move(v));
  }
  MaybeProb conditional(const BitString& x, Bit b) const override {
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (m_.rows[markov_context(m_, x, t)][to_int(x[t])].is_zero()) return std::nullopt;
    }
    return m_.rows[markov_context(m_, x, x.size())][to_int(b)];
  }
  std::unique_ptr<PredictionCursor> cursor() const override {
    // The cursor borrows the table; keep the model alive alongside it.
    struct Owning final : PredictionCursor {
      Owning(std::shared_ptr<const MarkovModel> self) : self_(std::move(self)), inner_(self_->m_) {}
      MaybeProb predict(Bit b) override { return inner_.predict(b); }
      void on_advance(Bit b) override { inner_.advance(b); }
      std::shared_ptr<const MarkovModel> self_;
      MarkovCursor inner_;
    };
    return std::make_unique<Owning>(std::static_pointer_cast<const MarkovModel>(shared_from_this()));
  }
  std::string describe() const override { return hypotheses::describe(HypothesisSpec(m_)); }

 private:
  Markov m_;
};

class PointCursor final : public PredictionCursor {
 public:
  explicit PointCursor(Point p) : p_(std::move(p)) {}
  MaybeProb predict(Bit b) override {
    if (dead_) return std::nullopt;
    return point_bit(p_, history().size()) == b ? Prob::one() : Prob::zero();
  }

 protected:
  void on_advance(Bit b) override { dead_ = dead_ || point_bit(p_, history().size()) != b; }

 private:
  Point p_;
  bool dead_ = false;
};

class PointModel final : public MeasureModel {
 public:
  explicit PointModel(Point p) : p_(std::move(p)) {}

  Prob value(const BitString& x) const override { return consistent(x) ? Prob::one() : Prob::zero(); }
  MaybeProb conditional(const BitString& x, Bit b) const override {
    if (!consistent(x)) return std::nullopt;
    return point_bit(p_, x.size()) == b ? Prob::one() : Prob::zero();
  }
  std::unique_ptr<PredictionCursor> cursor() const override { return std::make_unique<PointCursor>(p_); }
  std::string describe() const override { return hypotheses::describe(HypothesisSpec(p_)); }

 private:
  bool consistent(const BitString& x) const {
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t] != point_bit(p_, t)) return false;
    }
    return true;
  }
  Point p_;
};

Prob json_prob(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) throw Error(ErrorCode::InvalidArgument, std::string("missing parameter '") + field + "'");
  const auto& v = j.at(field);
  if (v.is_string()) return Prob::parse(v.get<std::string>());
  if (v.is_number_integer()) return Prob::parse(std::to_string(v.get<long long>()));
  throw Error(ErrorCode::InvalidArgument, std::string("parameter '") + field + "' must be a \"num/den\" string");
}

BitString json_bits(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) return BitString();
  std::string s = j.at(field).get<std::string>();
  return s.empty() ? BitString() : BitString::from_token(s);
}

}  // namespace

void validate(const HypothesisSpec& spec) {
  std::visit(overloaded{
                 [](const Uniform&) {},
                 [](const Bernoulli&) {},
                 [](const Markov& m) {
                   if (m.order > 16) throw Error(ErrorCode::InvalidArgument, "markov order above 16");
                   const std::size_t expected = std::size_t{1} << m.order;
                   if (m.rows.size() != expected) {
                     throw Error(ErrorCode::InvalidArgument,
                                 "markov table has " + std::to_string(m.rows.size()) + " rows, order " +
                                     std::to_string(m.order) + " needs " + std::to_string(expected));
                   }
                   for (std::size_t r = 0; r < m.rows.size(); ++r) {
                     Rational sum = m.rows[r][0].value() + m.rows[r][1].value();
                     if (sum != 1) {
                       throw Error(ErrorCode::InvalidArgument,
                                   "markov row " + std::to_string(r) + " (context " +
                                       BitString::from_uint(r, m.order).token() + ") sums to " + to_string(sum) +
                                       ", expected 1");
                     }
                   }
                 },
                 [](const Point& p) {
                   if (p.cycle.empty()) throw Error(ErrorCode::InvalidArgument, "point cycle must be nonempty");
                 },
                 [](const LzPredictor& l) {
                   if (l.horizon == 0 || l.horizon > lz::LzPrior::kMaxHorizon) {
                     throw Error(ErrorCode::InvalidArgument, "lz horizon must be in [1, 62]");
                   }
                 },
             },
             spec);
}

std::string describe(const HypothesisSpec& spec) {
  return std::visit(overloaded{
                        [](const Uniform&) -> std::string { return "uniform"; },
                        [](const Bernoulli& b) { return "bernoulli(" + b.bias.str() + ")"; },
                        [](const Markov& m) { return "markov(" + std::to_string(m.order) + ")"; },
                        [](const Point& p) { return "point(" + p.prefix.token() + "+" + p.cycle.str() + "*)"; },
                        [](const LzPredictor& l) { return "lz(" + std::to_string(l.horizon) + ")"; },
                    },
                    spec);
}

Measure instantiate(const HypothesisSpec& spec) {
  validate(spec);
  return std::visit(overloaded{
                        [](const Uniform&) { return uniform_measure(); },
                        [](const Bernoulli& b) { return Measure(std::make_shared<BernoulliModel>(b)); },
                        [](const Markov& m) { return Measure(std::make_shared<MarkovModel>(m)); },
                        [](const Point& p) { return Measure(std::make_shared<PointModel>(p)); },
                        [](const LzPredictor& l) { return lz::lz_block_measure(l.horizon); },
                    },
                    spec);
}

nlohmann::json to_json(const HypothesisSpec& spec) {
  using nlohmann::json;
  return std::visit(overloaded{
                        [](const Uniform&) { return json{{"kind", "uniform"}}; },
                        [](const Bernoulli& b) {
                          return json{{"kind", "bernoulli"}, {"parameters", {{"bias", b.bias.str()}}}};
                        },
                        [](const Markov& m) {
                          json rows = json::array();
                          for (const auto& row : m.rows) rows.push_back({row[0].str(), row[1].str()});
                          return json{{"kind", "markov"}, {"parameters", {{"order", m.order}, {"rows", rows}}}};
                        },
                        [](const Point& p) {
                          return json{{"kind", "point"},
                                      {"parameters", {{"prefix", p.prefix.str()}, {"cycle", p.cycle.str()}}}};
                        },
                        [](const LzPredictor& l) {
                          return json{{"kind", "lz"}, {"parameters", {{"horizon", l.horizon}}}};
                        },
                    },
                    spec);
}

HypothesisSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorCode::InvalidArgument, "hypothesis entry needs a 'kind' field");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const nlohmann::json params = j.value("parameters", nlohmann::json::object());
  HypothesisSpec spec;
  if (kind == "uniform") {
    spec = Uniform{};
  } else if (kind == "bernoulli") {
    spec = Bernoulli{json_prob(params, "bias")};
  } else if (kind == "markov") {
    Markov m;
    m.order = params.value("order", std::size_t{0});
    if (!params.contains("rows")) throw Error(ErrorCode::InvalidArgument, "markov needs 'rows'");
    for (const auto& row : params.at("rows")) {
      if (!row.is_array() || row.size() != 2) {
        throw Error(ErrorCode::InvalidArgument, "markov rows are [p0, p1] pairs");
      }
      m.rows.push_back({Prob::parse(row[0].get<std::string>()), Prob::parse(row[1].get<std::string>())});
    }
    spec = std::move(m);
  } else if (kind == "point") {
    spec = Point{json_bits(params, "prefix"), json_bits(params, "cycle")};
  } else if (kind == "lz") {
    spec = LzPredictor{params.value("horizon", std::size_t{8})};
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown hypothesis kind '" + kind + "'");
  }
  validate(spec);
  return spec;
}

WeightVector::WeightVector(std::vector<Prob> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].is_zero()) {
      throw Error(ErrorCode::InvalidArgument, "weight " + std::to_string(i + 1) + " must be strictly positive");
    }
  }
  if (sum() > 1) throw Error(ErrorCode::InvalidArgument, "weights sum to " + to_string(sum()) + " > 1");
}

WeightVector WeightVector::geometric(std::size_t n) {
  std::vector<Prob> w;
  w.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) w.push_back(Prob::dyadic(i));
  return WeightVector(std::move(w));
}

Rational WeightVector::sum() const {
  Rational s = 0;
  for (const auto& w : entries_) s += w.value();
  return s;
}

HypothesisPool::HypothesisPool(std::vector<HypothesisSpec> members, WeightVector weights) {
  if (members.empty()) throw Error(ErrorCode::InvalidArgument, "hypothesis pool is empty");
  if (members.size() != weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "pool has " + std::to_string(members.size()) + " members but " +
                                                std::to_string(weights.size()) + " weights");
  }
  std::vector<Measure> measures;
  measures.reserve(members.size());
  for (const auto& spec : members) measures.push_back(instantiate(spec));
  data_ = std::make_shared<const Data>(Data{std::move(members), std::move(weights), std::move(measures)});
}

HypothesisPool default_pool(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "default pool needs n >= 1");
  const Prob q = Prob(1, 4);
  const Prob tq = Prob(3, 4);
  std::vector<HypothesisSpec> members;
  for (std::size_t i = 1; i <= n; ++i) {
    switch (i) {
      case 1: members.emplace_back(Uniform{}); break;
      case 2: members.emplace_back(Bernoulli{tq}); break;
      case 3: members.emplace_back(Point{BitString(), BitString::parse("0")}); break;
      case 4: members.emplace_back(Markov{1, {{tq, q}, {q, tq}}}); break;
      case 5: members.emplace_back(LzPredictor{8}); break;
      case 6: members.emplace_back(Bernoulli{q}); break;
      case 7: members.emplace_back(Point{BitString(), BitString::parse("1")}); break;
      case 8: members.emplace_back(Point{BitString(), BitString::parse("01")}); break;
      default:
        if (i % 2 == 1) {
          members.emplace_back(Bernoulli{Prob(i - 7, i - 6)});
        } else {
          std::size_t width = 0;
          while ((std::size_t{1} << width) <= i) ++width;
          members.emplace_back(Point{BitString(), BitString::from_uint(i, width)});
        }
    }
  }
  return HypothesisPool(std::move(members), WeightVector::geometric(n));
}

HypothesisPool pool_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("default")) return default_pool(j.at("default").get<std::size_t>());
  const nlohmann::json& members = j.is_array() ? j : j.at("members");
  std::vector<HypothesisSpec> specs;
  std::vector<Prob> weights;
  for (const auto& entry : members) {
    specs.push_back(spec_from_json(entry));
    if (!entry.contains("weight")) throw Error(ErrorCode::InvalidArgument, "pool member without 'weight'");
    weights.push_back(Prob::parse(entry.at("weight").get<std::string>()));
  }
  return HypothesisPool(std::move(specs), WeightVector(std::move(weights)));
}

nlohmann::json to_json(const HypothesisPool& pool) {
  nlohmann::json members = nlohmann::json::array();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    nlohmann::json entry = to_json(pool.spec(i));
    entry["weight"] = pool.weight(i).str();
    members.push_back(std::move(entry));
  }
  return nlohmann::json{{"members", members}};
}

HypothesisPool load_pool(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open pool file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("pool file " + path.string() + ": " + e.what());
  }
  return pool_from_json(j);
}

}  // namespace unipred::hypotheses
