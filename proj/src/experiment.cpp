#include "unipred/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "unipred/error.hpp"
#include "unipred/hypotheses.hpp"
#include "unipred/reports.hpp"

#ifndef UNIPRED_VERSION
#define UNIPRED_VERSION "0.0.0"
#endif

namespace unipred::experiment {

using nlohmann::json;

namespace {

const std::set<std::string> kKinds = {"consistency", "regret", "diagonal", "algoprob", "lz-compare",
                                      "reliability-trace"};

hypotheses::HypothesisPool pool_param(const ExperimentConfig& c) {
  if (c.params.contains("pool_file")) {
    return hypotheses::load_pool(c.base_dir / c.params.at("pool_file").get<std::string>());
  }
  if (c.params.contains("pool")) return hypotheses::pool_from_json(c.params.at("pool"));
  return hypotheses::default_pool(8);
}

mono::ResourceBound bound_param(const json& j) {
  mono::ResourceBound b = mono::kDefaultBound;
  if (j.contains("max_len")) b.max_program_len = j.at("max_len").get<std::size_t>();
  if (j.contains("max_steps")) b.max_steps = j.at("max_steps").get<std::uint64_t>();
  return b;
}

Rational rational_param(const json& j, const char* field, Rational fallback) {
  if (!j.contains(field)) return fallback;
  const auto& v = j.at(field);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw Error(ErrorCode::InvalidArgument, std::string("'") + field + "' must be a \"num/den\" string");
}

reports::Report dispatch(const ExperimentConfig& c) {
  const json& p = c.params;
  if (c.kind == "consistency" && p.value("mode", std::string("posterior")) == "identity") {
    reports::IdentityParams ip;
    ip.sequences = p.value("sequences", ip.sequences);
    ip.length = p.value("length", ip.length);
    ip.seed = c.seed;
    return reports::identity(pool_param(c), ip);
  }
  if (c.kind == "consistency") {
    reports::ConsistencyParams cp;
    cp.runs = p.value("runs", cp.runs);
    cp.horizon = p.value("horizon", cp.horizon);
    cp.seed = c.seed;
    cp.tolerance = rational_param(p, "tolerance", cp.tolerance);
    cp.min_within = p.value("min_within", cp.min_within);
    return reports::consistency(pool_param(c), hypotheses::spec_from_json(p.at("truth")), cp);
  }
  if (c.kind == "regret") {
    reports::RegretParams rp;
    rp.length = p.value("length", rp.length);
    rp.samples = p.value("samples", rp.samples);
    rp.seed = c.seed;
    if (p.contains("exhaustive_length")) {
      rp.exhaustive = true;
      rp.exhaustive_length = p.at("exhaustive_length").get<std::size_t>();
    }
    return reports::regret(pool_param(c), rp);
  }
  if (c.kind == "diagonal") {
    const auto victims = reports::victims_from_json(p.at("victims"));
    const std::string mode = p.value("mode", std::string("putnam"));
    if (mode == "putnam") {
      const auto horizon = p.value("horizon", std::size_t{100});
      std::vector<std::size_t> checkpoints = p.value("checkpoints", std::vector<std::size_t>{horizon});
      return reports::putnam(victims, horizon, bit_from_int(p.value("tie", 0)), checkpoints);
    }
    if (mode == "anti-limit") {
      return reports::anti_limit(victims, p.value("block_budget", std::uint64_t{64}), p.value("max_blocks", std::size_t{20}));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown diagonal mode '" + mode + "'");
  }
  if (c.kind == "algoprob") {
    std::vector<mono::ResourceBound> bounds;
    if (p.contains("bounds")) {
      for (const auto& b : p.at("bounds")) bounds.push_back(bound_param(b));
    } else {
      bounds.push_back(mono::kDefaultBound);
    }
    return reports::algoprob(bounds, p.value("depth", std::size_t{8}), p.value("mixture_depth", std::size_t{0}));
  }
  if (c.kind == "lz-compare") {
    std::vector<BitString> strings;
    for (const auto& s : p.at("strings")) strings.push_back(BitString::from_token(s.get<std::string>()));
    return reports::lz_compare(strings, bound_param(p.value("bound", json::object())));
  }
  if (c.kind == "reliability-trace") {
    return reports::reliability(reports::victim_from_json(p.at("predictor")), hypotheses::spec_from_json(p.at("truth")),
                                p.value("length", std::size_t{100}), c.seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown experiment kind '" + c.kind + "'");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ExperimentConfig::digest() const {
  json canon = params;
  canon["kind"] = kind;
  canon["seed"] = seed;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canon.dump())));
  return buf;
}

ExperimentConfig ExperimentConfig::from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "experiment config must be a JSON object");
  ExperimentConfig c;
  c.base_dir = base_dir;
  c.kind = j.value("kind", std::string());
  if (!kKinds.count(c.kind)) throw Error(ErrorCode::InvalidArgument, "unknown experiment kind '" + c.kind + "'");
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("output")) {
    std::filesystem::path out = j.at("output").get<std::string>();
    c.output = out.is_relative() && !base_dir.empty() ? base_dir / out : out;
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "kind" && key != "seed" && key != "output" && key != "description") c.params[key] = value;
  }
  if (c.params.contains("pool_file")) {
    const auto path = base_dir / c.params.at("pool_file").get<std::string>();
    if (!std::filesystem::exists(path)) throw Error(ErrorCode::Io, "pool file not found: " + path.string());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte);
  }
  return from_json(j, path.parent_path());
}

RunRecord run_experiment(const ExperimentConfig& config, const std::optional<std::filesystem::path>& output_override) {
  RunRecord rec;
  rec.digest = config.digest();
  rec.kind = config.kind;
  rec.version = UNIPRED_VERSION;
  const auto t0 = std::chrono::steady_clock::now();
  reports::Report report;
  try {
    report = dispatch(config);
  } catch (const Error& e) {
    throw Error(e.code(), "config " + rec.digest + ": " + e.what());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "config " + rec.digest + ": " + e.what());
  }
  rec.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rec.csv = report.table.csv();
  rec.ok = report.ok;
  rec.summary = report.summary;
  rec.summary["kind"] = config.kind;
  rec.summary["config_digest"] = rec.digest;
  rec.summary["seed"] = config.seed;
  rec.summary["version"] = rec.version;
  rec.summary["rows"] = report.table.rows.size();
  rec.summary["ok"] = rec.ok;
  rec.summary["wall_clock_seconds"] = rec.wall_clock_seconds;

  const std::filesystem::path out = output_override ? *output_override : config.output;
  if (!out.empty()) {
    write_file(std::filesystem::path(out.string() + ".csv"), rec.csv);
    write_file(std::filesystem::path(out.string() + ".json"), rec.summary.dump(2) + "\n");
  }
  return rec;
}

}  // namespace unipred::experiment
