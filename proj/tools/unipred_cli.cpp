// unipred command line. Talks to the library only through unipred.h.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "unipred/unipred.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

struct Owned {
  char* p = nullptr;
  ~Owned() { unipred_string_free(p); }
};

int fail(unipred_status s) {
  std::cerr << "unipred: " << unipred_status_name(s) << ": " << unipred_last_error() << "\n";
  switch (s) {
    case UNIPRED_E_INVALID_ARGUMENT:
    case UNIPRED_E_PARSE:
    case UNIPRED_E_IO:
      return kExitUsage;
    default:
      return kExitInvariant;
  }
}

std::string golden_path(const std::string& name) {
  const char* dir = std::getenv("UNIPRED_GOLDEN_DIR");
  return std::string(dir && *dir ? dir : "tests/golden") + "/" + name;
}

// 0 when the text matches the golden file, 1 otherwise.
int compare_golden(const std::string& name, const std::string& text) {
  const std::string path = golden_path(name);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "unipred: golden file not found: " << path << "\n";
    return kExitInvariant;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (buf.str() != text) {
    std::cerr << "unipred: output differs from golden file " << path << "\n";
    return kExitInvariant;
  }
  std::cerr << "unipred: matches golden file " << path << "\n";
  return kExitOk;
}

int report(const std::string& command, const nlohmann::json& args, const std::string& format,
           const std::string& golden) {
  Owned text;
  int ok = 0;
  const std::string a = args.dump();
  if (auto s = unipred_report(command.c_str(), a.c_str(), format.c_str(), &text.p, &ok); s != UNIPRED_OK) return fail(s);
  std::fwrite(text.p, 1, std::strlen(text.p), stdout);
  if (!golden.empty() && compare_golden(golden, text.p) != kExitOk) return kExitInvariant;
  return ok ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unipred: universal prediction toolkit (exact rational arithmetic)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(unipred_version()));

  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string format = "csv";
  std::string golden;
  app.add_option("--seed", seed, "Seed for sampled quantities")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--golden", golden, "Compare output with this file under $UNIPRED_GOLDEN_DIR");
  app.fallthrough();

  nlohmann::json args = nlohmann::json::object();

  // predict
  auto* predict = app.add_subcommand("predict", "Aggregator predictions along a sequence");
  std::string pool_file, input, sequence;
  bool emit_weights = false;
  predict->add_option("--pool", pool_file, "Pool JSON file (default: default_pool(8))")->check(CLI::ExistingFile);
  predict->add_option("--input", input, "Sequence file")->check(CLI::ExistingFile);
  predict->add_option("--sequence", sequence, "Sequence given inline");
  predict->add_flag("--emit-weights", emit_weights, "Append posterior weights to each row");

  // regret
  auto* regret = app.add_subcommand("regret", "Regret against every pool member on sampled strings");
  std::size_t length = 64, samples = 100;
  regret->add_option("--pool", pool_file, "Pool JSON file")->check(CLI::ExistingFile);
  regret->add_option("--length,-n", length, "String length")->capture_default_str();
  regret->add_option("--samples,-k", samples, "Number of strings")->capture_default_str();
  std::size_t exhaustive = 0;
  regret->add_option("--exhaustive", exhaustive, "Also check every string up to this length");

  // diag
  auto* diag = app.add_subcommand("diag", "Diagonal adversaries against a predictor");
  std::string victim_file, mode = "putnam";
  std::size_t horizon = 100, max_blocks = 20;
  int tie = 0;
  std::uint64_t block_budget = 64;
  std::vector<std::size_t> checkpoints;
  diag->add_option("--victim", victim_file, "Victim JSON (pool, hypothesis spec or predictor spec)")
      ->required()
      ->check(CLI::ExistingFile);
  diag->add_option("--mode", mode, "putnam or anti-limit")->check(CLI::IsMember({"putnam", "anti-limit"}));
  diag->add_option("--horizon,-T", horizon, "Sequence length")->capture_default_str();
  diag->add_option("--tie", tie, "Bit taken when both bits have probability 1/2")->check(CLI::Range(0, 1));
  diag->add_option("--checkpoints", checkpoints, "Lengths at which loss is checked (default: horizon)");
  diag->add_option("--block-budget", block_budget, "Dovetailing budget per block")->capture_default_str();
  diag->add_option("--max-blocks", max_blocks, "Blocks to construct")->capture_default_str();

  // algoprob
  auto* algoprob = app.add_subcommand("algoprob", "Algorithmic probability table relative to MONO");
  std::size_t max_len = 18, depth = 8, mixture_depth = 0;
  std::uint64_t max_steps = 500;
  algoprob->add_option("--max-len,-l", max_len, "Maximum program length in bits")->capture_default_str();
  algoprob->add_option("--max-steps,-s", max_steps, "Maximum steps per program")->capture_default_str();
  algoprob->add_option("--depth,-d", depth, "Table depth")->capture_default_str();
  algoprob->add_option("--mixture-depth", mixture_depth, "Cross-check the mixture form up to this length");

  // km
  auto* km = app.add_subcommand("km", "Monotone complexity of one string");
  std::string target;
  km->add_option("--string,-y", target, "Target string ('^' for empty)")->required();
  km->add_option("--max-len,-l", max_len, "Maximum program length in bits")->capture_default_str();
  km->add_option("--max-steps,-s", max_steps, "Maximum steps per program")->capture_default_str();

  // trace
  auto* trace = app.add_subcommand("trace", "Step-by-step MONO execution");
  std::string program;
  std::uint64_t steps = 100;
  trace->add_option("--program,-p", program, "Program bits")->required();
  trace->add_option("--steps,-s", steps, "Step bound")->capture_default_str();

  // lz
  auto* lz = app.add_subcommand("lz", "LZ76 parse and complexity");
  std::string lz_string, compare_file;
  auto* lz_s = lz->add_option("--string,-x", lz_string, "String to parse");
  auto* lz_c = lz->add_option("--compare", compare_file, "File of strings to rank")->check(CLI::ExistingFile);
  lz_s->excludes(lz_c);
  lz->add_option("--max-len,-l", max_len, "Algprob bound for --compare")->capture_default_str();
  lz->add_option("--max-steps,-s", max_steps, "Algprob bound for --compare")->capture_default_str();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment config");
  std::string config, output;
  experiment->add_option("config", config, "Config JSON")->required()->check(CLI::ExistingFile);
  experiment->add_option("--output,-o", output, "Output prefix (writes .csv and .json)");

  // ingest-check
  auto* ingest = app.add_subcommand("ingest-check", "Validate a sequence file");
  std::string ingest_path;
  ingest->add_option("path", ingest_path, "Sequence file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (auto s = unipred_set_threads(threads); s != UNIPRED_OK) return fail(s);

  if (*predict) {
    if (!pool_file.empty()) args["pool_file"] = pool_file;
    if (!input.empty()) {
      args["input"] = input;
    } else if (!sequence.empty()) {
      args["sequence"] = sequence;
    } else {
      std::cerr << "unipred predict: one of --input or --sequence is required\n";
      return kExitUsage;
    }
    args["emit_weights"] = emit_weights;
    return report("predict", args, format, golden);
  }
  if (*regret) {
    if (!pool_file.empty()) args["pool_file"] = pool_file;
    args["length"] = length;
    args["samples"] = samples;
    args["seed"] = seed;
    if (regret->count("--exhaustive")) args["exhaustive_length"] = exhaustive;
    return report("regret", args, format, golden);
  }
  if (*diag) {
    args["victim_file"] = victim_file;
    args["mode"] = mode;
    args["horizon"] = horizon;
    args["tie"] = tie;
    if (!checkpoints.empty()) args["checkpoints"] = checkpoints;
    args["block_budget"] = block_budget;
    args["max_blocks"] = max_blocks;
    return report("diag", args, format, golden);
  }
  if (*algoprob) {
    args["max_len"] = max_len;
    args["max_steps"] = max_steps;
    args["depth"] = depth;
    args["mixture_depth"] = mixture_depth;
    return report("algoprob", args, format, golden);
  }
  if (*km) {
    args["string"] = target;
    args["max_len"] = max_len;
    args["max_steps"] = max_steps;
    return report("km", args, format, golden);
  }
  if (*trace) {
    args["program"] = program;
    args["steps"] = steps;
    return report("trace", args, format, golden);
  }
  if (*lz) {
    if (!lz_string.empty()) {
      args["string"] = lz_string;
    } else if (!compare_file.empty()) {
      args["compare_file"] = compare_file;
      args["max_len"] = max_len;
      args["max_steps"] = max_steps;
    } else {
      std::cerr << "unipred lz: one of --string or --compare is required\n";
      return kExitUsage;
    }
    return report("lz", args, format, golden);
  }
  if (*experiment) {
    Owned summary;
    int ok = 0;
    const char* out = output.empty() ? nullptr : output.c_str();
    if (auto s = unipred_run_experiment(config.c_str(), out, &summary.p, &ok); s != UNIPRED_OK) return fail(s);
    std::cout << summary.p << "\n";
    return ok ? kExitOk : kExitInvariant;
  }
  if (*ingest) {
    args["path"] = ingest_path;
    return report("ingest-check", args, format, golden);
  }
  return kExitUsage;
}
