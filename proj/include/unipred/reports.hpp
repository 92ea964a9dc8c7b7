#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "unipred/hypotheses.hpp"
#include "unipred/measure.hpp"
#include "unipred/monovm.hpp"

// Report generators shared by the CLI subcommands and the experiment runner.
// Every report is a table of string cells (exact rationals next to their
// decimals) plus a JSON summary, and a flag that is false when an invariant
// check inside the report failed.
namespace unipred::reports {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const;
  nlohmann::json json() const;
};

enum class Format { Csv, Json };
Format parse_format(const std::string& name);

struct Report {
  Table table;
  nlohmann::json summary = nlohmann::json::object();
  bool ok = true;

  // CSV: the table. JSON: the summary with the rows under "rows".
  std::string render(Format f) const;
};

// A prediction strategy built from JSON: any hypothesis spec, or
// {"kind": "mixture", "pool": ...}, {"kind": "solomonoff", "max_len", "max_steps",
// "normalized"}, {"kind": "lz-prior", "horizon"}, {"kind": "constant", "p1"}.
struct Victim {
  std::string name;
  SemiPredictor predictor;
};

Victim victim_from_json(const nlohmann::json& j);
std::vector<Victim> victims_from_json(const nlohmann::json& j);

Report predict(const hypotheses::HypothesisPool& pool, const BitString& sequence, bool emit_weights);

struct RegretParams {
  std::size_t length = 64;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::size_t exhaustive_length = 0;  // also check every |x| <= this; 0 skips
  bool exhaustive = false;
};
Report regret(const hypotheses::HypothesisPool& pool, const RegretParams& params);

Report putnam(const std::vector<Victim>& victims, std::size_t horizon, Bit tie,
              const std::vector<std::size_t>& checkpoints);
Report anti_limit(const std::vector<Victim>& victims, std::uint64_t block_budget, std::size_t max_blocks);

Report algoprob(const std::vector<mono::ResourceBound>& bounds, std::size_t depth, std::size_t mixture_depth);
Report km(const BitString& y, const mono::ResourceBound& bound);
Report trace(const BitString& program, std::uint64_t steps);

Report lz_string(const BitString& x);
Report lz_compare(const std::vector<BitString>& strings, const mono::ResourceBound& bound);

struct ConsistencyParams {
  std::size_t runs = 100;
  std::size_t horizon = 2000;
  std::uint64_t seed = 0;
  Rational tolerance{1, 20};
  std::size_t min_within = 95;
};
Report consistency(const hypotheses::HypothesisPool& pool, const hypotheses::HypothesisSpec& truth,
                   const ConsistencyParams& params);

// aggregate_predict against mixture_predict at every step of sequences sampled
// from the pool's own mixture.
struct IdentityParams {
  std::size_t sequences = 200;
  std::size_t length = 64;
  std::uint64_t seed = 0;
};
Report identity(const hypotheses::HypothesisPool& pool, const IdentityParams& params);

Report reliability(const Victim& predictor, const hypotheses::HypothesisSpec& truth, std::size_t length,
                   std::uint64_t seed);

Report ingest_check(const std::string& path);

}  // namespace unipred::reports
