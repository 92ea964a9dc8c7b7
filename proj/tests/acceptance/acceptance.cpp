// Runs the shipped experiment configs and prints one PASS/FAIL line per
// acceptance criterion. Usage: unipred_acceptance <config-dir> <output-dir>
// Exit status is the number of failing criteria.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "unipred/experiment.hpp"
#include "unipred/hypotheses.hpp"
#include "unipred/lzprior.hpp"
#include "unipred/mixture.hpp"
#include "unipred/monovm.hpp"
#include "unipred/parallel.hpp"
#include "unipred/scoring.hpp"

using namespace unipred;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Wall-clock budgets in seconds. Exceeding one is reported but does not fail
// the criterion on slower machines.
constexpr double kBudget1 = 30;
constexpr double kBudget3 = 120;
constexpr double kBudget4 = 300;
constexpr double kBudget8 = 60;

// Consistency: 3/4 within 1/20 in at least 95 of 100 runs.
constexpr std::size_t kRuns8 = 100;
constexpr std::size_t kMinWithin8 = 95;

constexpr unsigned kThreadCounts[2] = {1, 8};

struct Run {
  experiment::RunRecord record;
  double seconds = 0;
};

class Suite {
 public:
  Suite(fs::path configs, fs::path out) : configs_(std::move(configs)), out_(std::move(out)) {}

  // Runs a config once at the default thread count and keeps the record.
  const Run& run(const std::string& name) {
    if (auto it = runs_.find(name); it != runs_.end()) return it->second;
    clear_caches();
    const auto config = experiment::ExperimentConfig::load(configs_ / (name + ".json"));
    const auto start = std::chrono::steady_clock::now();
    Run r{experiment::run_experiment(config, out_ / name), 0};
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("  ran %s in %.1f s (digest %s)\n", name.c_str(), r.seconds, r.record.digest.c_str());
    return runs_.emplace(name, std::move(r)).first->second;
  }

  // CSV bytes at the given thread count, from a cold start.
  std::string csv_at(const std::string& name, unsigned threads) {
    clear_caches();
    const unsigned saved = default_threads();
    set_default_threads(threads);
    const auto config = experiment::ExperimentConfig::load(configs_ / (name + ".json"));
    const fs::path prefix = out_ / ("threads" + std::to_string(threads)) / name;
    const auto rec = experiment::run_experiment(config, prefix);
    set_default_threads(saved);
    std::ifstream in(prefix.string() + ".csv", std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    if (s.str() != rec.csv) return "<written file differs from record>";
    return s.str();
  }

  static void clear_caches() {
    mono::clear_shared_engines();
    lz::clear_shared_priors();
  }

 private:
  fs::path configs_;
  fs::path out_;
  std::map<std::string, Run> runs_;
};

int failures = 0;

void verdict(int n, bool pass, const std::string& title, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", n, title.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string timing(double seconds, double budget) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.1f s (budget %.0f s%s)", seconds, budget, seconds > budget ? ", exceeded" : "");
  return buf;
}

template <class F>
void guarded(int n, const std::string& title, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    verdict(n, false, title, std::string("error: ") + e.what());
  }
}

hypotheses::HypothesisPool two_point() {
  using namespace hypotheses;
  return HypothesisPool({Point{BitString(), BitString::parse("0")}, Point{BitString(), BitString::parse("1")}},
                        WeightVector({Prob::half(), Prob::half()}));
}

void criterion1(Suite& s) {
  const Run& r = s.run("c01_regret");
  const json& sm = r.record.summary;
  const bool sampled = sm.at("samples") == 1000 && sm.at("length") == 64 && sm.at("violations") == 0;
  const bool exhaustive = sm.at("exhaustive_length") == 12 && sm.at("exhaustive_checked") == 8191 * 8 &&
                          sm.at("exhaustive_violations") == 0;
  const auto pool = two_point();
  const BitString x = BitString::parse("1111");
  const auto v = scoring::verify_optimality_bound(pool, 1, x);
  const auto rr = scoring::regret(mixture::mixture_predictor(pool),
                                  predictor_from(pool.measure(1)), x);
  const bool tight = v.holds && v.tight && rr.ratio() == Rational(1, 2);
  std::ostringstream d;
  d << "sampled rows " << sm.at("rows") << " violations " << sm.at("violations") << "; exhaustive checks "
    << sm.at("exhaustive_checked") << " violations " << sm.at("exhaustive_violations") << "; two-point witness "
    << (tight ? "tight at exactly 1 bit" : "NOT tight") << "; " << timing(r.seconds, kBudget1);
  verdict(1, sampled && exhaustive && tight && r.record.ok, "regret bound", d.str());
}

void criterion2(Suite& s) {
  const Run& r = s.run("c02_identity");
  const json& sm = r.record.summary;
  const bool pass = r.record.ok && sm.at("sequences") == 200 && sm.at("length") == 64 && sm.at("members") == 8 &&
                    sm.at("mismatches") == 0;
  std::ostringstream d;
  d << sm.at("sequences") << " sequences of length " << sm.at("length") << ", mismatches " << sm.at("mismatches");
  verdict(2, pass, "aggregator identity", d.str());
}

void criterion3(Suite& s) {
  const Run& r = s.run("c03_putnam");
  const json& victims = r.record.summary.at("victims");
  bool pass = victims.size() == 5;
  std::ostringstream d;
  for (const auto& v : victims) {
    bool ok = v.at("status") == "completed" && v.at("all_at_most_half") == true;
    std::vector<std::size_t> seen;
    for (const auto& c : v.at("checkpoints")) {
      ok = ok && c.at("reached") == true && c.at("loss_at_least_T") == true && c.at("point_loss_zero") == true;
      seen.push_back(c.at("T").get<std::size_t>());
    }
    ok = ok && seen == std::vector<std::size_t>{25, 50, 100};
    pass = pass && ok;
    d << v.at("victim").get<std::string>() << " " << (ok ? "ok" : "failed") << " (" << v.at("status").get<std::string>();
    if (v.at("status") != "completed") d << " at step " << v.at("stopped_at");
    d << "); ";
  }
  d << timing(r.seconds, kBudget3);
  verdict(3, pass, "Putnam adversary", d.str());
}

void criterion4(Suite& s) {
  const Run& r = s.run("c04_algoprob");
  const json& sm = r.record.summary;
  bool pass = sm.at("bounds").size() == 3 && sm.at("depth") == 8 && sm.at("monotone_violations") == 0;
  std::ostringstream d;
  for (const auto& b : sm.at("bounds")) {
    pass = pass && b.at("semimeasure_violations") == 0;
    d << "(" << b.at("bound").at("max_len") << "," << b.at("bound").at("max_steps")
      << ") semimeasure violations " << b.at("semimeasure_violations") << "; ";
  }
  d << "monotone violations " << sm.at("monotone_violations") << "; " << timing(r.seconds, kBudget4);
  verdict(4, pass, "semi-measure and monotonicity", d.str());
}

void criterion5(Suite& s) {
  const Run& r = s.run("c05_mixture_form");
  const json& b = r.record.summary.at("bounds").at(0);
  const bool pass = b.at("bound").at("max_len") == 18 && b.at("bound").at("max_steps") == 500 &&
                    b.at("mixture_form_checked") == 127 && b.at("mixture_form_mismatches") == 0;
  std::ostringstream d;
  d << "strings checked " << b.at("mixture_form_checked") << ", mismatches " << b.at("mixture_form_mismatches");
  verdict(5, pass, "mixture-form cross-check", d.str());
}

void criterion6(Suite& s) {
  const Run& r = s.run("c06_km");
  const json& b = r.record.summary.at("bounds").at(0);
  const auto bound = mono::kDefaultBound;
  const auto k_empty = mono::km(BitString(), bound);
  const auto k0 = mono::km(BitString::parse("0"), bound);
  const auto k1 = mono::km(BitString::parse("1"), bound);
  bool ones = true;
  std::ostringstream d;
  d << "violations " << b.at("km_violations") << "; Km(^)=" << (k_empty ? std::to_string(*k_empty) : "NA")
    << " Km(0)=" << (k0 ? std::to_string(*k0) : "NA") << " Km(1)=" << (k1 ? std::to_string(*k1) : "NA") << "; Km(1^n)=";
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto k = mono::km(BitString::repeat(Bit::One, n), bound);
    ones = ones && k && *k <= 15;
    d << (k ? std::to_string(*k) : "NA") << (n < 8 ? "," : "");
  }
  const bool pass = b.at("km_violations") == 0 && k_empty == std::size_t{0} && k0 && *k0 <= 6 && k1 && *k1 <= 9 && ones;
  verdict(6, pass, "Km consistency", d.str());
}

void criterion7(Suite& s) {
  const Run& r = s.run("c07_lz_compare");
  (void)r;
  const auto engine = mono::shared_engine(mono::kDefaultBound);
  const Prob z = engine->algprob(BitString::repeat(Bit::Zero, 8));
  const Prob o = engine->algprob(BitString::repeat(Bit::One, 8));
  const Prob m = engine->algprob(BitString::parse("01101001"));
  std::ifstream in(fs::path(UNIPRED_GOLDEN_DIR) / "de_bruijn_64.txt");
  std::string b;
  in >> b;
  const std::uint64_t k_run = lz::lz_complexity(BitString::repeat(Bit::Zero, 64));
  const std::uint64_t k_b = lz::lz_complexity(BitString::parse(b));
  const bool ap = z > m && o > m;
  const bool lzok = b.size() == 64 && k_run == 14 && k_run < k_b;
  std::ostringstream d;
  d << "algprob(0^8)=" << z.str() << " algprob(1^8)=" << o.str() << " algprob(01101001)=" << m.str()
    << (ap ? "" : " (ordering not strict)") << "; LZ bits 0^64=" << k_run << " B=" << k_b;
  verdict(7, ap && lzok, "compressibility ordering", d.str());
}

void criterion8(Suite& s) {
  const Run& c = s.run("c08_consistency");
  const Run& rel = s.run("c08b_reliability");
  const json& cs = c.record.summary;
  const json& rs = rel.record.summary;
  const bool stat = cs.at("runs") == kRuns8 && cs.at("horizon") == 2000 && cs.at("tolerance") == "1/20" &&
                    cs.at("within").get<std::size_t>() >= kMinWithin8;
  const bool det = rs.at("status") == "completed" && rs.at("zero_from") == 1 && rs.at("max_error") == "1/2";
  std::ostringstream d;
  d << "within tolerance in " << cs.at("within") << "/" << cs.at("runs") << " runs; point mixture error zero from t="
    << rs.at("zero_from") << " (max error " << rs.at("max_error").get<std::string>() << "); "
    << timing(c.seconds + rel.seconds, kBudget8);
  verdict(8, stat && det, "consistency", d.str());
}

void criterion9(Suite& s) {
  const Run& r = s.run("c09_anti_limit");
  const json& v = r.record.summary.at("victims");
  const json& bern = v.at(0);
  const json& half = v.at(1);
  const bool b_ok = bern.at("status") == "completed" && bern.at("blocks") == 20 &&
                    bern.at("sequence") == std::string(20, '0') && bern.at("sound") == true &&
                    bern.at("p1_values_along_sequence") == json::array({"3/4"});
  const bool h_ok = half.at("status") == "budget-exhausted" && half.at("stopped_at") == 0;
  std::ostringstream d;
  d << "bernoulli(3/4) emitted " << bern.at("sequence").get<std::string>() << " with p1 values "
    << bern.at("p1_values_along_sequence").dump() << "; constant 1/2 " << half.at("status").get<std::string>()
    << " in block " << half.at("stopped_at");
  verdict(9, b_ok && h_ok, "anti-limit adversary", d.str());
}

void criterion10(Suite& s, const std::vector<std::string>& names) {
  std::size_t same = 0;
  std::ostringstream d;
  for (const auto& name : names) {
    const std::string a = s.csv_at(name, kThreadCounts[0]);
    const std::string b = s.csv_at(name, kThreadCounts[1]);
    if (a == b && !a.empty()) {
      ++same;
    } else {
      d << name << " differs; ";
    }
  }
  d << same << "/" << names.size() << " configs byte-identical at threads " << kThreadCounts[0] << " and "
    << kThreadCounts[1];
  verdict(10, same == names.size(), "reproducibility", d.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <config-dir> <output-dir>\n", argv[0]);
    return 2;
  }
  Suite suite(argv[1], argv[2]);
  const std::vector<std::string> names{"c01_regret",       "c02_identity", "c03_putnam",      "c04_algoprob",
                                       "c05_mixture_form", "c06_km",       "c07_lz_compare",  "c08_consistency",
                                       "c08b_reliability", "c09_anti_limit"};
  guarded(1, "regret bound", [&] { criterion1(suite); });
  guarded(2, "aggregator identity", [&] { criterion2(suite); });
  guarded(3, "Putnam adversary", [&] { criterion3(suite); });
  guarded(4, "semi-measure and monotonicity", [&] { criterion4(suite); });
  guarded(5, "mixture-form cross-check", [&] { criterion5(suite); });
  guarded(6, "Km consistency", [&] { criterion6(suite); });
  guarded(7, "compressibility ordering", [&] { criterion7(suite); });
  guarded(8, "consistency", [&] { criterion8(suite); });
  guarded(9, "anti-limit adversary", [&] { criterion9(suite); });
  guarded(10, "reproducibility", [&] { criterion10(suite, names); });
  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
