#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "unipred/bitstring.hpp"
#include "unipred/measure.hpp"
#include "unipred/rational.hpp"

namespace unipred::hypotheses {

struct Uniform {};

struct Bernoulli {
  Prob bias;  // probability of a 1
};

// Row r holds (p(0|r), p(1|r)) for the context whose last `order` bits, oldest
// first, spell r in binary. Positions before the first `order` bits see the
// context left-padded with zeros.
struct Markov {
  std::size_t order = 0;
  std::vector<std::array<Prob, 2>> rows;
};

// Point mass on prefix + cycle + cycle + ...
struct Point {
  BitString prefix;
  BitString cycle;
};

// Blockwise LZ simplicity prior (see lz::lz_block_measure).
struct LzPredictor {
  std::size_t horizon = 8;
};

using HypothesisSpec = std::variant<Uniform, Bernoulli, Markov, Point, LzPredictor>;

// Throws InvalidArgument naming the offending parameter or row.
void validate(const HypothesisSpec& spec);
std::string describe(const HypothesisSpec& spec);
Measure instantiate(const HypothesisSpec& spec);

nlohmann::json to_json(const HypothesisSpec& spec);
HypothesisSpec spec_from_json(const nlohmann::json& j);

// Strictly positive entries summing to at most 1.
class WeightVector {
 public:
  explicit WeightVector(std::vector<Prob> entries);

  static WeightVector geometric(std::size_t n);  // 2^-1, ..., 2^-n

  std::size_t size() const noexcept { return entries_.size(); }
  const Prob& operator[](std::size_t i) const { return entries_.at(i); }
  const std::vector<Prob>& entries() const noexcept { return entries_; }
  Rational sum() const;

 private:
  std::vector<Prob> entries_;
};

// Finite, ordered hypothesis family with prior weights. Members are 0-based
// here; reports number them from 1.
class HypothesisPool {
 public:
  HypothesisPool(std::vector<HypothesisSpec> members, WeightVector weights);

  std::size_t size() const noexcept { return data_->specs.size(); }
  const HypothesisSpec& spec(std::size_t i) const { return data_->specs.at(i); }
  const Measure& measure(std::size_t i) const { return data_->measures.at(i); }
  const Prob& weight(std::size_t i) const { return data_->weights[i]; }
  const WeightVector& weights() const noexcept { return data_->weights; }
  std::string describe(std::size_t i) const { return hypotheses::describe(spec(i)); }

 private:
  struct Data {
    std::vector<HypothesisSpec> specs;
    WeightVector weights;
    std::vector<Measure> measures;
  };
  std::shared_ptr<const Data> data_;
};

// Uniform first, then a fixed cycle of kinds; weights 2^-i for i = 1..n.
HypothesisPool default_pool(std::size_t n);

// {"members": [{"kind": ..., "parameters": {...}, "weight": "num/den"}, ...]}
// or {"default": n}. A bare array of members is accepted too.
HypothesisPool pool_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HypothesisPool& pool);
HypothesisPool load_pool(const std::filesystem::path& path);

}  // namespace unipred::hypotheses
