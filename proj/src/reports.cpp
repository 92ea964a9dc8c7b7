#include "unipred/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "unipred/diagonal.hpp"
#include "unipred/error.hpp"
#include "unipred/harness.hpp"
#include "unipred/lzprior.hpp"
#include "unipred/mixture.hpp"
#include "unipred/parallel.hpp"
#include "unipred/rng.hpp"
#include "unipred/scoring.hpp"

namespace unipred::reports {

using nlohmann::json;

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string bits_decimal(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string yes(bool b) { return b ? "1" : "0"; }

std::string km_cell(const std::optional<std::size_t>& k) { return k ? std::to_string(*k) : std::string("NA"); }

std::string bound_name(const mono::ResourceBound& b) {
  return "(" + std::to_string(b.max_program_len) + "," + std::to_string(b.max_steps) + ")";
}

json bound_json(const mono::ResourceBound& b) { return json{{"max_len", b.max_program_len}, {"max_steps", b.max_steps}}; }

Predictor constant_predictor(const Prob& p1) {
  return Predictor("constant(" + p1.str() + ")", [p1](const BitString&, Bit b) -> MaybeProb {
    return b == Bit::One ? p1 : p1.complement();
  });
}

Prob to_prob(const json& j, const char* field) {
  if (!j.contains(field)) throw Error(ErrorCode::InvalidArgument, std::string("missing '") + field + "'");
  const json& v = j.at(field);
  if (v.is_string()) return Prob::parse(v.get<std::string>());
  if (v.is_number_integer()) return Prob(Rational(v.get<long>()));
  throw Error(ErrorCode::InvalidArgument, std::string("'") + field + "' must be a \"num/den\" string");
}

mono::ResourceBound bound_from(const json& j) {
  mono::ResourceBound b = mono::kDefaultBound;
  if (j.contains("max_len")) b.max_program_len = j.at("max_len").get<std::size_t>();
  if (j.contains("max_steps")) b.max_steps = j.at("max_steps").get<std::uint64_t>();
  return b;
}

}  // namespace

std::string Table::csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(cells[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

json Table::json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o = nlohmann::json::object();
    for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) o[header[i]] = r[i];
    arr.push_back(std::move(o));
  }
  return arr;
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + name + "' (expected csv or json)");
}

std::string Report::render(Format f) const {
  if (f == Format::Csv) return table.csv();
  json out = summary;
  out["ok"] = ok;
  out["rows"] = table.json();
  return out.dump(2) + "\n";
}

Victim victim_from_json(const json& j) {
  const std::string kind = j.value("kind", std::string());
  Victim v{"", Predictor("", [](const BitString&, Bit) -> MaybeProb { return std::nullopt; })};
  if (kind == "mixture") {
    auto pool = hypotheses::pool_from_json(j.at("pool"));
    v = Victim{"mixture[" + std::to_string(pool.size()) + "]", mixture::mixture_predictor(pool)};
  } else if (kind == "solomonoff") {
    const auto bound = bound_from(j);
    if (j.value("normalized", true)) {
      v = Victim{"solomonoff" + bound_name(bound), mono::solomonoff_predictor(bound)};
    } else {
      v = Victim{"solomonoff-raw" + bound_name(bound), mono::solomonoff_semipredictor(bound)};
    }
  } else if (kind == "lz-prior") {
    const auto h = j.value("horizon", std::size_t{8});
    v = Victim{"lz-prior(" + std::to_string(h) + ")", lz::lz_prior_predictor(h)};
  } else if (kind == "constant") {
    const Prob p1 = to_prob(j, "p1");
    v = Victim{"constant(" + p1.str() + ")", constant_predictor(p1)};
  } else {
    auto spec = hypotheses::spec_from_json(j);
    v = Victim{hypotheses::describe(spec), predictor_from(hypotheses::instantiate(spec))};
  }
  if (j.contains("name")) v.name = j.at("name").get<std::string>();
  return v;
}

std::vector<Victim> victims_from_json(const json& j) {
  std::vector<Victim> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(victim_from_json(e));
  } else {
    out.push_back(victim_from_json(j));
  }
  return out;
}

Report predict(const hypotheses::HypothesisPool& pool, const BitString& sequence, bool emit_weights) {
  Report r;
  r.table.header = {"t", "bit", "p1", "p1_decimal"};
  if (emit_weights) {
    for (std::size_t i = 0; i < pool.size(); ++i) r.table.header.push_back("w" + std::to_string(i + 1));
  }
  auto state = mixture::AggregatorState::initial(pool);
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    const Prob p1 = mixture::aggregate_predict(state, Bit::One);
    state = mixture::update_weights(state, sequence[t]);
    std::vector<std::string> row{std::to_string(t), std::string(1, to_char(sequence[t])), p1.str(), p1.decimal()};
    if (emit_weights) {
      for (const auto& w : state.weights()) row.push_back(w.str());
    }
    r.table.rows.push_back(std::move(row));
  }
  json weights = json::array();
  for (const auto& w : state.weights()) weights.push_back(w.str());
  r.summary = {{"steps", sequence.size()}, {"pool_size", pool.size()}, {"final_weights", weights}};
  return r;
}

Report regret(const hypotheses::HypothesisPool& pool, const RegretParams& params) {
  Report r;
  r.table.header = {"sample", "sequence", "member", "neg_log2_w", "regret_bits", "bound_satisfied"};
  const Rational total_weight = pool.weights().sum();
  std::size_t violations = 0;
  std::size_t tight = 0;
  for (std::size_t s = 0; s < params.samples; ++s) {
    SplitMix64 rng = SplitMix64::stream(params.seed, s);
    const BitString x = harness::sample_sequence(uniform_measure(), params.length, rng);
    const Rational xi = mixture::mixture_value(pool, x).value();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const Rational mu = pool.measure(i)(x).value();
      const Rational w = pool.weight(i).value();
      const bool holds = xi >= w * mu;
      if (!holds) ++violations;
      if (xi == w * mu) ++tight;
      // Regret of the mixture predictor against member i: -log2((xi/xi(empty)) / mu).
      double regret_bits = -std::numeric_limits<double>::infinity();
      if (sgn(mu) != 0) regret_bits = -log2_of(Rational(xi / total_weight / mu));
      r.table.rows.push_back({std::to_string(s), x.token(), std::to_string(i + 1), bits_decimal(-log2_of(w)),
                              bits_decimal(regret_bits), yes(holds)});
    }
  }
  std::size_t exhaustive_checked = 0;
  std::size_t exhaustive_violations = 0;
  if (params.exhaustive) {
    for_each_string_shorter_than(params.exhaustive_length + 1, [&](const BitString& x) {
      for (std::size_t i = 0; i < pool.size(); ++i) {
        ++exhaustive_checked;
        if (!scoring::verify_optimality_bound(pool, i, x).holds) ++exhaustive_violations;
      }
    });
  }
  r.ok = violations == 0 && exhaustive_violations == 0;
  r.summary = {{"samples", params.samples},
               {"length", params.length},
               {"seed", params.seed},
               {"rows", r.table.rows.size()},
               {"violations", violations},
               {"tight", tight},
               {"exhaustive_length", params.exhaustive ? json(params.exhaustive_length) : json(nullptr)},
               {"exhaustive_checked", exhaustive_checked},
               {"exhaustive_violations", exhaustive_violations}};
  return r;
}

Report putnam(const std::vector<Victim>& victims, std::size_t horizon, Bit tie,
              const std::vector<std::size_t>& checkpoints) {
  Report r;
  r.table.header = {"victim", "t", "bit", "prob", "prob_decimal", "cumulative_loss_bits"};
  json summaries = json::array();
  const Prob half = Prob::half();
  for (const auto& v : victims) {
    const auto trace = diagonal::putnam_sequence(v.predictor, horizon, tie);
    scoring::Loss running;
    std::vector<scoring::Loss> cumulative{running};
    bool at_most_half = true;
    for (std::size_t t = 0; t < trace.probabilities.size(); ++t) {
      const Prob& p = trace.probabilities[t];
      at_most_half = at_most_half && p <= half;
      running += scoring::Loss(p);
      cumulative.push_back(running);
      r.table.rows.push_back({v.name, std::to_string(t), std::string(1, to_char(trace.sequence[t])), p.str(),
                              p.decimal(), running.decimal()});
    }
    bool victim_ok = trace.completed() && at_most_half;
    json checks = json::array();
    for (std::size_t T : checkpoints) {
      json c = {{"T", T}};
      if (T > trace.sequence.size()) {
        c["reached"] = false;
        victim_ok = false;
      } else {
        const BitString prefix = trace.sequence.prefix(T);
        const auto point = predictor_from(hypotheses::instantiate(hypotheses::Point{prefix, BitString::parse("0")}));
        const scoring::Loss point_loss = scoring::cumulative_loss(point, prefix);
        const bool loss_ok = cumulative[T].at_least_bits(T);
        const bool point_zero = point_loss.probability().is_one();
        c["reached"] = true;
        c["loss_bits"] = cumulative[T].decimal();
        c["loss_at_least_T"] = loss_ok;
        c["point_loss_bits"] = point_loss.decimal();
        c["point_loss_zero"] = point_zero;
        victim_ok = victim_ok && loss_ok && point_zero;
      }
      checks.push_back(std::move(c));
    }
    r.ok = r.ok && victim_ok;
    summaries.push_back({{"victim", v.name},
                         {"status", diagonal::status_name(trace.status)},
                         {"stopped_at", trace.status_at},
                         {"sequence", trace.sequence.token()},
                         {"all_at_most_half", at_most_half},
                         {"loss_bits", running.decimal()},
                         {"checkpoints", checks},
                         {"ok", victim_ok}});
  }
  r.summary = {{"horizon", horizon}, {"tie_break", to_int(tie)}, {"victims", summaries}};
  return r;
}

Report anti_limit(const std::vector<Victim>& victims, std::uint64_t block_budget, std::size_t max_blocks) {
  Report r;
  r.table.header = {"victim", "block", "run", "stage", "approx_p1", "approx_p1_decimal", "true_p1"};
  json summaries = json::array();
  const Prob half = Prob::half();
  for (const auto& v : victims) {
    const auto trace = diagonal::anti_limit_sequence(diagonal::exact_approximation(v.predictor), block_budget, max_blocks);
    bool sound = true;
    for (std::size_t k = 0; k < trace.blocks.size(); ++k) {
      const auto& b = trace.blocks[k];
      const BitString before = trace.sequence.prefix(b.end - 1);
      const MaybeProb truth = v.predictor(before, Bit::One);
      sound = sound && truth && *truth > half;
      r.table.rows.push_back({v.name, std::to_string(k), std::to_string(b.run), std::to_string(b.stage),
                              trace.probabilities[k].str(), trace.probabilities[k].decimal(),
                              truth ? truth->str() : std::string("undefined")});
    }
    std::set<std::string> p1_values;
    for (std::size_t t = 0; t <= trace.sequence.size(); ++t) {
      const MaybeProb p = v.predictor(trace.sequence.prefix(t), Bit::One);
      p1_values.insert(p ? p->str() : std::string("undefined"));
    }
    r.ok = r.ok && sound;
    summaries.push_back({{"victim", v.name},
                         {"status", diagonal::status_name(trace.status)},
                         {"stopped_at", trace.status_at},
                         {"blocks", trace.blocks.size()},
                         {"sequence", trace.sequence.token()},
                         {"sound", sound},
                         {"p1_values_along_sequence", p1_values}});
  }
  r.summary = {{"block_budget", block_budget}, {"max_blocks", max_blocks}, {"victims", summaries}};
  return r;
}

Report algoprob(const std::vector<mono::ResourceBound>& bounds, std::size_t depth, std::size_t mixture_depth) {
  Report r;
  r.table.header = {"max_len", "max_steps", "y", "algprob", "algprob_decimal", "km", "descriptions"};
  std::vector<mono::AlgProbTable> tables;
  json per_bound = json::array();
  for (const auto& b : bounds) {
    tables.push_back(mono::algprob_table(b, depth));
    const auto& t = tables.back();
    std::size_t semimeasure_violations = t.at(BitString()).value.value() <= 1 ? 0 : 1;
    std::size_t km_violations = 0;
    for (const auto& row : t.rows) {
      r.table.rows.push_back({std::to_string(b.max_program_len), std::to_string(b.max_steps), row.y.token(),
                              row.value.str(), row.value.decimal(), km_cell(row.km), std::to_string(row.descriptions)});
      if (row.y.size() < depth) {
        const Rational kids = t.at(row.y.extended(Bit::Zero)).value.value() + t.at(row.y.extended(Bit::One)).value.value();
        if (kids > row.value.value()) ++semimeasure_violations;
      }
      if (row.km && pow2(-static_cast<long>(*row.km)) > row.value.value()) ++km_violations;
    }
    std::size_t mixture_checked = 0;
    std::size_t mixture_mismatches = 0;
    for_each_string_shorter_than(std::min(mixture_depth, depth) + (mixture_depth ? 1 : 0), [&](const BitString& y) {
      ++mixture_checked;
      if (mono::algprob_mixture_form(y, b) != t.at(y).value) ++mixture_mismatches;
    });
    r.ok = r.ok && semimeasure_violations == 0 && km_violations == 0 && mixture_mismatches == 0;
    per_bound.push_back({{"bound", bound_json(b)},
                         {"semimeasure_violations", semimeasure_violations},
                         {"km_violations", km_violations},
                         {"mixture_form_checked", mixture_checked},
                         {"mixture_form_mismatches", mixture_mismatches}});
  }
  std::size_t monotone_violations = 0;
  for (std::size_t k = 1; k < tables.size(); ++k) {
    for (std::size_t i = 0; i < tables[k].rows.size(); ++i) {
      if (tables[k - 1].rows[i].value > tables[k].rows[i].value) ++monotone_violations;
    }
  }
  r.ok = r.ok && monotone_violations == 0;
  r.summary = {{"machine", "MONO"},
               {"label", "resource-bounded algorithmic probability relative to MONO"},
               {"depth", depth},
               {"bounds", per_bound},
               {"monotone_violations", monotone_violations}};
  return r;
}

Report km(const BitString& y, const mono::ResourceBound& bound) {
  Report r;
  r.table.header = {"y", "km", "algprob", "algprob_decimal", "descriptions", "shortest"};
  auto engine = mono::shared_engine(bound);
  const auto k = engine->km(y);
  const Prob p = engine->algprob(y);
  std::string shortest;
  if (k) {
    auto ds = engine->descriptions(y);
    if (!ds.empty()) shortest = ds.front().token() + " = " + (ds.front().empty() ? std::string("(empty)") : mono::disassemble(ds.front()));
  }
  r.table.rows.push_back({y.token(), km_cell(k), p.str(), p.decimal(), std::to_string(engine->description_count(y)), shortest});
  r.ok = !k || pow2(-static_cast<long>(*k)) <= p.value();
  r.summary = {{"y", y.token()}, {"bound", bound_json(bound)}, {"km", k ? json(*k) : json(nullptr)}, {"algprob", p.str()}};
  return r;
}

Report trace(const BitString& program, std::uint64_t steps) {
  Report r;
  r.table.header = {"step", "pc", "op", "head", "tape", "output"};
  const auto t = mono::trace(program, steps);
  for (const auto& row : t.rows) {
    r.table.rows.push_back({std::to_string(row.step), std::to_string(row.pc), mono::op_name(row.op),
                            std::to_string(row.head), row.tape, row.output.token()});
  }
  r.summary = {{"program", program.token()},
               {"instructions", mono::disassemble(program)},
               {"output", t.result.output.token()},
               {"status", mono::status_name(t.result.status)},
               {"steps", t.result.steps},
               {"input_bits_consumed", t.result.input_bits_consumed}};
  return r;
}

Report lz_string(const BitString& x) {
  Report r;
  r.table.header = {"string", "phrases", "C", "bits_per_phrase", "K_bits"};
  const auto parse = lz::lz76_parse(x);
  std::string phrases;
  json list = json::array();
  for (std::size_t i = 0; i < parse.phrases.size(); ++i) {
    if (i) phrases += '.';
    phrases += parse.phrases[i].str();
    list.push_back(parse.phrases[i].str());
  }
  const auto k = lz::lz_complexity(x);
  r.table.rows.push_back({x.token(), phrases, std::to_string(parse.phrase_count()),
                          std::to_string(lz::bits_per_phrase(x.size())), std::to_string(k)});
  BitString joined;
  for (const auto& p : parse.phrases) joined.append(p);
  r.ok = joined == x;
  r.summary = {{"string", x.token()}, {"phrases", list}, {"C", parse.phrase_count()}, {"K_bits", k}};
  return r;
}

Report lz_compare(const std::vector<BitString>& strings, const mono::ResourceBound& bound) {
  Report r;
  r.table.header = {"string", "C", "K_bits", "lz_weight", "algprob", "algprob_decimal", "rank_lz", "rank_algprob"};
  struct Item {
    BitString x;
    std::uint64_t k;
    Prob lz;
    Prob ap;
  };
  std::vector<Item> items;
  for (const auto& x : strings) {
    const auto k = lz::lz_complexity(x);
    items.push_back(Item{x, k, Prob(pow2(-static_cast<long>(k))), mono::algprob(x, bound)});
  }
  // Dense rank, 1 = most probable; ties share a rank.
  auto rank = [&](auto key) {
    std::vector<Rational> values;
    for (const auto& it : items) values.push_back(key(it));
    std::vector<Rational> distinct = values;
    std::sort(distinct.begin(), distinct.end(), [](const Rational& a, const Rational& b) { return a > b; });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::size_t> out;
    for (const auto& v : values) out.push_back(static_cast<std::size_t>(std::find(distinct.begin(), distinct.end(), v) - distinct.begin()) + 1);
    return out;
  };
  const auto rank_lz = rank([](const Item& it) { return it.lz.value(); });
  const auto rank_ap = rank([](const Item& it) { return it.ap.value(); });
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    r.table.rows.push_back({it.x.token(), std::to_string(lz::lz76_parse(it.x).phrase_count()), std::to_string(it.k),
                            it.lz.str(), it.ap.str(), it.ap.decimal(), std::to_string(rank_lz[i]), std::to_string(rank_ap[i])});
  }
  // The pinned pair: 0^8 against 01101001.
  auto find = [&](const std::string& s) -> const Item* {
    for (const auto& it : items) {
      if (it.x.str() == s) return &it;
    }
    return nullptr;
  };
  json pair = nullptr;
  if (const Item* a = find("00000000"); a) {
    if (const Item* b = find("01101001"); b) {
      const bool lz_order = a->lz > b->lz;
      const bool ap_order = a->ap > b->ap;
      pair = {{"lz_prefers_zeros", lz_order}, {"algprob_prefers_zeros", ap_order}, {"agree", lz_order == ap_order}};
    }
  }
  r.summary = {{"bound", bound_json(bound)}, {"strings", strings.size()}, {"pinned_pair", pair}};
  return r;
}

Report consistency(const hypotheses::HypothesisPool& pool, const hypotheses::HypothesisSpec& truth,
                   const ConsistencyParams& params) {
  Report r;
  r.table.header = {"run", "seed", "stream", "ones", "final_p1", "final_p1_decimal", "truth_p1", "abs_error_decimal",
                    "within_tolerance"};
  const Measure truth_m = hypotheses::instantiate(truth);
  const Predictor mix = mixture::mixture_predictor(pool);
  // Nothing is observed at horizon 0, so there is nothing to score.
  const std::size_t runs = params.horizon == 0 ? 0 : params.runs;
  std::vector<std::vector<std::string>> rows(runs);
  std::vector<char> within(runs, 0);
  parallel_for(runs, default_threads(), [&](std::size_t run) {
    SplitMix64 rng = SplitMix64::stream(params.seed, run);
    const BitString x = harness::sample_sequence(truth_m, params.horizon, rng);
    auto cur = mix.cursor();
    for (std::size_t t = 0; t < x.size(); ++t) cur->advance(x[t]);
    const MaybeProb p1 = cur->predict(Bit::One);
    const MaybeProb mu1 = truth_m.conditional(x, Bit::One);
    if (!p1 || !mu1) throw Error(ErrorCode::Undefined, "prediction undefined at the end of run " + std::to_string(run));
    const Rational err = abs(p1->value() - mu1->value());
    within[run] = err <= params.tolerance;
    rows[run] = {std::to_string(run), std::to_string(params.seed), std::to_string(run), std::to_string(x.count_ones()),
                 p1->str(), p1->decimal(), mu1->str(), to_decimal(err), yes(within[run] != 0)};
  });
  r.table.rows = std::move(rows);
  const auto count = static_cast<std::size_t>(std::count(within.begin(), within.end(), 1));
  r.ok = runs == 0 || count >= params.min_within;
  r.summary = {{"runs", params.runs},
               {"scored", runs},
               {"horizon", params.horizon},
               {"seed", params.seed},
               {"generator", SplitMix64::kName},
               {"truth", hypotheses::describe(truth)},
               {"tolerance", to_string(params.tolerance)},
               {"within", count},
               {"min_within", params.min_within}};
  return r;
}

Report identity(const hypotheses::HypothesisPool& pool, const IdentityParams& params) {
  Report r;
  r.table.header = {"sequence", "seed", "stream", "bits", "steps_checked", "mismatches", "final_p1"};
  const Measure xi = mixture::mixture_measure(pool);
  std::vector<std::vector<std::string>> rows(params.sequences);
  std::vector<std::size_t> bad(params.sequences, 0);
  parallel_for(params.sequences, default_threads(), [&](std::size_t k) {
    SplitMix64 rng = SplitMix64::stream(params.seed, k);
    const BitString x = harness::sample_sequence(xi, params.length, rng);
    auto state = mixture::AggregatorState::initial(pool);
    std::size_t checked = 0;
    for (std::size_t t = 0; t <= x.size(); ++t) {
      for (Bit b : kBits) {
        const MaybeProb m = mixture::mixture_predict(pool, state.history(), b);
        if (!m || mixture::aggregate_predict(state, b) != *m) ++bad[k];
        ++checked;
      }
      if (t < x.size()) state = mixture::update_weights(state, x[t]);
    }
    rows[k] = {std::to_string(k),       std::to_string(params.seed), std::to_string(k), x.str(),
               std::to_string(checked), std::to_string(bad[k]),      mixture::aggregate_predict(state, Bit::One).str()};
  });
  r.table.rows = std::move(rows);
  std::size_t total = 0;
  for (auto b : bad) total += b;
  r.ok = total == 0;
  r.summary = {{"mode", "identity"},
               {"sequences", params.sequences},
               {"length", params.length},
               {"seed", params.seed},
               {"generator", SplitMix64::kName},
               {"members", pool.size()},
               {"mismatches", total}};
  return r;
}

Report reliability(const Victim& predictor, const hypotheses::HypothesisSpec& truth, std::size_t length,
                   std::uint64_t seed) {
  Report r;
  r.table.header = {"t", "bit", "error", "error_decimal"};
  const auto trace = harness::reliability_trace(predictor.predictor, hypotheses::instantiate(truth), length, seed);
  for (std::size_t t = 0; t < trace.errors.size(); ++t) {
    r.table.rows.push_back({std::to_string(t), std::string(1, to_char(trace.sequence[t])), to_string(trace.errors[t]),
                            to_decimal(trace.errors[t])});
  }
  std::size_t zero_from = trace.errors.size();
  while (zero_from > 0 && sgn(trace.errors[zero_from - 1]) == 0) --zero_from;
  Rational max_err = 0;
  for (const auto& e : trace.errors) max_err = std::max(max_err, e);
  const bool completed = trace.status == harness::TraceStatus::Completed;
  r.ok = completed;
  r.summary = {{"predictor", predictor.name},
               {"truth", hypotheses::describe(truth)},
               {"length", length},
               {"seed", seed},
               {"generator", SplitMix64::kName},
               {"status", completed ? "completed" : "predictor-undefined"},
               {"stopped_at", trace.stopped_at},
               {"final_error", trace.errors.empty() ? json(nullptr) : json(to_string(trace.errors.back()))},
               {"final_error_decimal", trace.errors.empty() ? json(nullptr) : json(to_decimal(trace.errors.back()))},
               {"max_error", to_string(max_err)},
               {"zero_from", trace.errors.empty() ? json(nullptr) : json(zero_from)}};
  return r;
}

Report ingest_check(const std::string& path) {
  Report r;
  r.table.header = {"path", "length", "ones", "round_trip"};
  const BitString x = harness::ingest_sequence(path);
  const bool round_trip = harness::parse_sequence(harness::emit_sequence(x)) == x;
  r.table.rows.push_back({path, std::to_string(x.size()), std::to_string(x.count_ones()), yes(round_trip)});
  r.ok = round_trip;
  r.summary = {{"path", path}, {"length", x.size()}, {"ones", x.count_ones()}, {"round_trip", round_trip}};
  return r;
}

}  // namespace unipred::reports
