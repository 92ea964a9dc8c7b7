#include "unipred/unipred.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "unipred/error.hpp"
#include "unipred/experiment.hpp"
#include "unipred/harness.hpp"
#include "unipred/hypotheses.hpp"
#include "unipred/lzprior.hpp"
#include "unipred/mixture.hpp"
#include "unipred/monovm.hpp"
#include "unipred/parallel.hpp"
#include "unipred/reports.hpp"

using namespace unipred;
using nlohmann::json;

struct unipred_pool {
  hypotheses::HypothesisPool pool;
};

struct unipred_aggregator {
  mixture::AggregatorState state;
};

struct unipred_engine {
  std::shared_ptr<const mono::AlgProbEngine> engine;
};

namespace {

thread_local std::string last_error;

unipred_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return UNIPRED_E_INVALID_ARGUMENT;
    case ErrorCode::Parse: return UNIPRED_E_PARSE;
    case ErrorCode::Io: return UNIPRED_E_IO;
    case ErrorCode::Undefined: return UNIPRED_E_UNDEFINED;
    case ErrorCode::ZeroNormalizer: return UNIPRED_E_ZERO_NORMALIZER;
    case ErrorCode::Coma: return UNIPRED_E_COMA;
    case ErrorCode::Invariant: return UNIPRED_E_INVARIANT;
    case ErrorCode::Range: return UNIPRED_E_RANGE;
  }
  return UNIPRED_E_INTERNAL;
}

template <class F>
unipred_status guard(F&& f) {
  try {
    f();
    return UNIPRED_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const json::exception& e) {
    last_error = e.what();
    return UNIPRED_E_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return UNIPRED_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return UNIPRED_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

BitString bits(const char* text) {
  require(text, "bit string");
  return BitString::from_token(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": " + e.what(), e.byte);
  }
}

hypotheses::HypothesisPool pool_arg(const json& a) {
  if (a.contains("pool_file")) return hypotheses::load_pool(a.at("pool_file").get<std::string>());
  if (a.contains("pool")) return hypotheses::pool_from_json(a.at("pool"));
  return hypotheses::default_pool(a.value("default", std::size_t{8}));
}

mono::ResourceBound bound_arg(const json& a) {
  mono::ResourceBound b = mono::kDefaultBound;
  b.max_program_len = a.value("max_len", b.max_program_len);
  b.max_steps = a.value("max_steps", b.max_steps);
  return b;
}

bool looks_like_pool(const json& j) {
  return j.is_object() && (j.contains("members") || j.contains("default"));
}

std::vector<reports::Victim> victims_arg(const json& a) {
  json v;
  if (a.contains("victim_file")) {
    const auto path = a.at("victim_file").get<std::string>();
    v = parse_json(read_file(path), path);
  } else if (a.contains("victim")) {
    v = a.at("victim");
  } else {
    throw Error(ErrorCode::InvalidArgument, "diag needs a victim");
  }
  if (looks_like_pool(v)) v = json{{"kind", "mixture"}, {"pool", v}};
  return reports::victims_from_json(v);
}

std::vector<BitString> strings_arg(const json& a) {
  std::vector<BitString> out;
  if (a.contains("compare_file")) {
    std::istringstream in(read_file(a.at("compare_file").get<std::string>()));
    std::string line;
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      auto last = line.find_last_not_of(" \t\r");
      out.push_back(BitString::from_token(line.substr(first, last - first + 1)));
    }
  } else {
    for (const auto& s : a.at("strings")) out.push_back(BitString::from_token(s.get<std::string>()));
  }
  return out;
}

reports::Report run_report(const std::string& cmd, const json& a) {
  if (cmd == "predict") {
    BitString seq = a.contains("input") ? harness::ingest_sequence(a.at("input").get<std::string>())
                                        : BitString::from_token(a.value("sequence", std::string("^")));
    return reports::predict(pool_arg(a), seq, a.value("emit_weights", false));
  }
  if (cmd == "regret") {
    reports::RegretParams p;
    p.length = a.value("length", p.length);
    p.samples = a.value("samples", p.samples);
    p.seed = a.value("seed", p.seed);
    if (a.contains("exhaustive_length")) {
      p.exhaustive = true;
      p.exhaustive_length = a.at("exhaustive_length").get<std::size_t>();
    }
    return reports::regret(pool_arg(a), p);
  }
  if (cmd == "diag") {
    const auto victims = victims_arg(a);
    if (a.value("mode", std::string("putnam")) == "anti-limit") {
      return reports::anti_limit(victims, a.value("block_budget", std::uint64_t{64}), a.value("max_blocks", std::size_t{20}));
    }
    const auto horizon = a.value("horizon", std::size_t{100});
    return reports::putnam(victims, horizon, bit_from_int(a.value("tie", 0)),
                           a.value("checkpoints", std::vector<std::size_t>{horizon}));
  }
  if (cmd == "algoprob") {
    return reports::algoprob({bound_arg(a)}, a.value("depth", std::size_t{8}), a.value("mixture_depth", std::size_t{0}));
  }
  if (cmd == "km") return reports::km(BitString::from_token(a.at("string").get<std::string>()), bound_arg(a));
  if (cmd == "trace") {
    return reports::trace(BitString::from_token(a.at("program").get<std::string>()), a.value("steps", std::uint64_t{100}));
  }
  if (cmd == "lz") {
    if (a.contains("string")) return reports::lz_string(BitString::from_token(a.at("string").get<std::string>()));
    return reports::lz_compare(strings_arg(a), bound_arg(a));
  }
  if (cmd == "ingest-check") return reports::ingest_check(a.at("path").get<std::string>());
  throw Error(ErrorCode::InvalidArgument, "unknown report '" + cmd + "'");
}

}  // namespace

extern "C" {

const char* unipred_version(void) { return UNIPRED_VERSION; }

const char* unipred_last_error(void) { return last_error.c_str(); }

const char* unipred_status_name(unipred_status s) {
  switch (s) {
    case UNIPRED_OK: return "ok";
    case UNIPRED_E_INVALID_ARGUMENT: return "invalid-argument";
    case UNIPRED_E_PARSE: return "parse";
    case UNIPRED_E_IO: return "io";
    case UNIPRED_E_UNDEFINED: return "undefined";
    case UNIPRED_E_ZERO_NORMALIZER: return "zero-normalizer";
    case UNIPRED_E_COMA: return "coma";
    case UNIPRED_E_INVARIANT: return "invariant";
    case UNIPRED_E_RANGE: return "range";
    case UNIPRED_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void unipred_string_free(char* s) { std::free(s); }

unipred_status unipred_set_threads(unsigned threads) {
  return guard([&] {
    if (threads == 0) throw Error(ErrorCode::InvalidArgument, "threads must be positive");
    set_default_threads(threads);
  });
}

unipred_status unipred_pool_default(size_t n, unipred_pool** out) {
  return guard([&] {
    require(out, "out");
    *out = new unipred_pool{hypotheses::default_pool(n)};
  });
}

unipred_status unipred_pool_from_json(const char* text, unipred_pool** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new unipred_pool{hypotheses::pool_from_json(parse_json(text, "pool"))};
  });
}

unipred_status unipred_pool_load(const char* path, unipred_pool** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new unipred_pool{hypotheses::load_pool(path)};
  });
}

void unipred_pool_free(unipred_pool* pool) { delete pool; }

size_t unipred_pool_size(const unipred_pool* pool) { return pool ? pool->pool.size() : 0; }

unipred_status unipred_pool_describe(const unipred_pool* pool, size_t i, char** out) {
  return guard([&] {
    require(pool, "pool");
    require(out, "out");
    if (i >= pool->pool.size()) throw Error(ErrorCode::Range, "member index out of range");
    *out = dup(pool->pool.describe(i));
  });
}

unipred_status unipred_pool_weight(const unipred_pool* pool, size_t i, char** out) {
  return guard([&] {
    require(pool, "pool");
    require(out, "out");
    if (i >= pool->pool.size()) throw Error(ErrorCode::Range, "member index out of range");
    *out = dup(pool->pool.weight(i).str());
  });
}

unipred_status unipred_mixture_value(const unipred_pool* pool, const char* x, char** out) {
  return guard([&] {
    require(pool, "pool");
    require(out, "out");
    *out = dup(mixture::mixture_value(pool->pool, bits(x)).str());
  });
}

unipred_status unipred_mixture_predict(const unipred_pool* pool, const char* x, int bit, char** out, int* defined) {
  return guard([&] {
    require(pool, "pool");
    require(out, "out");
    require(defined, "defined");
    const MaybeProb p = mixture::mixture_predict(pool->pool, bits(x), bit_from_int(bit));
    *defined = p ? 1 : 0;
    *out = p ? dup(p->str()) : nullptr;
  });
}

unipred_status unipred_check_domination(const unipred_pool* pool, size_t i, const char* x, int* holds) {
  return guard([&] {
    require(pool, "pool");
    require(holds, "holds");
    *holds = mixture::check_domination(pool->pool, i, bits(x)) ? 1 : 0;
  });
}

unipred_status unipred_aggregator_new(const unipred_pool* pool, unipred_aggregator** out) {
  return guard([&] {
    require(pool, "pool");
    require(out, "out");
    *out = new unipred_aggregator{mixture::AggregatorState::initial(pool->pool)};
  });
}

void unipred_aggregator_free(unipred_aggregator* agg) { delete agg; }

unipred_status unipred_aggregator_update(unipred_aggregator* agg, int bit) {
  return guard([&] {
    require(agg, "aggregator");
    agg->state = mixture::update_weights(agg->state, bit_from_int(bit));
  });
}

unipred_status unipred_aggregator_predict(const unipred_aggregator* agg, int bit, char** out) {
  return guard([&] {
    require(agg, "aggregator");
    require(out, "out");
    *out = dup(mixture::aggregate_predict(agg->state, bit_from_int(bit)).str());
  });
}

unipred_status unipred_aggregator_weight(const unipred_aggregator* agg, size_t i, char** out) {
  return guard([&] {
    require(agg, "aggregator");
    require(out, "out");
    if (i >= agg->state.weights().size()) throw Error(ErrorCode::Range, "member index out of range");
    *out = dup(agg->state.weights()[i].str());
  });
}

size_t unipred_aggregator_time(const unipred_aggregator* agg) { return agg ? agg->state.time() : 0; }

unipred_status unipred_run_machine(const char* program, uint64_t max_steps, char** output, unipred_run_status* status,
                                   size_t* consumed) {
  return guard([&] {
    require(output, "output");
    const auto r = mono::run_machine(bits(program), max_steps);
    *output = dup(r.output.str());
    if (status) *status = static_cast<unipred_run_status>(r.status);
    if (consumed) *consumed = r.input_bits_consumed;
  });
}

unipred_status unipred_engine_new(size_t max_program_len, uint64_t max_steps, unipred_engine** out) {
  return guard([&] {
    require(out, "out");
    *out = new unipred_engine{mono::shared_engine(mono::ResourceBound{max_program_len, max_steps})};
  });
}

void unipred_engine_free(unipred_engine* engine) { delete engine; }

unipred_status unipred_engine_algprob(const unipred_engine* engine, const char* y, char** out) {
  return guard([&] {
    require(engine, "engine");
    require(out, "out");
    *out = dup(engine->engine->algprob(bits(y)).str());
  });
}

unipred_status unipred_engine_km(const unipred_engine* engine, const char* y, long* km) {
  return guard([&] {
    require(engine, "engine");
    require(km, "km");
    const auto k = engine->engine->km(bits(y));
    *km = k ? static_cast<long>(*k) : -1;
  });
}

unipred_status unipred_solomonoff_predict(const unipred_engine* engine, const char* x, int bit, char** raw,
                                          char** normalized) {
  return guard([&] {
    require(engine, "engine");
    require(raw, "raw");
    require(normalized, "normalized");
    const auto p = mono::solomonoff_predict(bits(x), bit_from_int(bit), engine->engine->bound());
    *raw = p.raw ? dup(p.raw->str()) : nullptr;
    *normalized = p.normalized ? dup(p.normalized->str()) : nullptr;
  });
}

unipred_status unipred_lz_complexity(const char* x, uint64_t* out_bits, size_t* phrases) {
  return guard([&] {
    require(out_bits, "bits");
    const BitString s = bits(x);
    *out_bits = lz::lz_complexity(s);
    if (phrases) *phrases = lz::lz76_parse(s).phrase_count();
  });
}

unipred_status unipred_ingest(const char* path, char** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = dup(harness::ingest_sequence(path).str());
  });
}

unipred_status unipred_sample(const char* spec_json, size_t length, uint64_t seed, char** out) {
  return guard([&] {
    require(spec_json, "spec");
    require(out, "out");
    const auto spec = hypotheses::spec_from_json(parse_json(spec_json, "spec"));
    *out = dup(harness::sample_sequence(hypotheses::instantiate(spec), length, seed).str());
  });
}

unipred_status unipred_report(const char* command, const char* args_json, const char* format, char** text, int* ok) {
  return guard([&] {
    require(command, "command");
    require(text, "text");
    const json args = args_json ? parse_json(args_json, "arguments") : json::object();
    const auto fmt = reports::parse_format(format ? format : "csv");
    const auto report = run_report(command, args);
    *text = dup(report.render(fmt));
    if (ok) *ok = report.ok ? 1 : 0;
  });
}

unipred_status unipred_run_experiment(const char* config_path, const char* output_prefix, char** summary_json,
                                      int* ok) {
  return guard([&] {
    require(config_path, "config path");
    const auto config = experiment::ExperimentConfig::load(config_path);
    std::optional<std::filesystem::path> out;
    if (output_prefix) out = std::filesystem::path(output_prefix);
    const auto rec = experiment::run_experiment(config, out);
    if (summary_json) *summary_json = dup(rec.summary.dump(2));
    if (ok) *ok = rec.ok ? 1 : 0;
  });
}

}  // extern "C"
