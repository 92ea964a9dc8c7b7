#include "unipred/lzprior.hpp"

#include <map>

#include "unipred/error.hpp"
#include "unipred/parallel.hpp"

namespace unipred::lz {

LzParse lz76_parse(const BitString& x) {
  LzParse parse{x, {}};
  const std::string& s = x.str();
  const std::size_t n = s.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t len = 1;
    for (;;) {
      std::string_view history(s.data(), i + len - 1);
      std::string_view candidate(s.data() + i, len);
      if (history.find(candidate) == std::string_view::npos || i + len == n) break;
      ++len;
    }
    parse.phrases.push_back(x.substr(i, len));
    i += len;
  }
  return parse;
}

std::uint64_t bits_per_phrase(std::size_t n) {
  std::uint64_t bits = 0;
  while ((std::uint64_t{1} << bits) < static_cast<std::uint64_t>(n) + 1) ++bits;
  return bits;
}

std::uint64_t lz_complexity(const BitString& x) {
  if (x.empty()) return 0;
  return lz76_parse(x).phrase_count() * bits_per_phrase(x.size());
}

namespace {

constexpr std::uint64_t low_mask(std::uint32_t n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Incremental LZ76 state over a text of at most 62 bits. `matches` holds the
// start positions j < start at which the in-progress phrase occurs; a phrase
// completes on the first bit that empties the set.
struct ParseState {
  std::uint64_t text = 0;
  std::uint64_t matches = 0;
  std::uint32_t len = 0;
  std::uint32_t start = 0;
  std::uint32_t phrases = 0;

  void advance(Bit b) {
    const std::uint64_t shifted = text >> (len - start);
    const std::uint64_t m = matches & (b == Bit::One ? shifted : ~shifted);
    text |= static_cast<std::uint64_t>(to_int(b)) << len;
    ++len;
    if (m == 0) {
      ++phrases;
      start = len;
      matches = low_mask(start);
    } else {
      matches = m;
    }
  }

  std::uint32_t final_count() const { return phrases + (start < len ? 1 : 0); }
};

ParseState state_after(const BitString& prefix) {
  ParseState st;
  for (std::size_t i = 0; i < prefix.size(); ++i) st.advance(prefix[i]);
  return st;
}

// Histogram of final phrase counts over all extensions to length `h`.
// Whatever the last bit is, it adds exactly one phrase (either completing the
// open phrase or leaving one open), so recursion stops two levels early.
void count_extensions(const ParseState& st, std::uint32_t h, std::uint64_t* hist) {
  if (st.len + 1 == h) {
    hist[st.phrases + 1] += 2;
    return;
  }
  const std::uint64_t shifted = st.text >> (st.len - st.start);
  if (st.len + 2 == h) {
    // A completed phrase leaves one more for the last bit; an open one absorbs it.
    hist[st.phrases + ((st.matches & ~shifted) == 0 ? 2 : 1)] += 2;
    hist[st.phrases + ((st.matches & shifted) == 0 ? 2 : 1)] += 2;
    return;
  }
  for (int b = 0; b < 2; ++b) {
    const std::uint64_t m = st.matches & (b ? shifted : ~shifted);
    ParseState next;
    next.text = st.text | (static_cast<std::uint64_t>(b) << st.len);
    next.len = st.len + 1;
    if (m == 0) {
      next.phrases = st.phrases + 1;
      next.start = next.len;
      next.matches = low_mask(next.len);
    } else {
      next.phrases = st.phrases;
      next.start = st.start;
      next.matches = m;
    }
    count_extensions(next, h, hist);
  }
}

}  // namespace

LzPrior::LzPrior(std::size_t horizon) : horizon_(horizon), bits_per_phrase_(bits_per_phrase(horizon)) {
  if (horizon == 0 || horizon > kMaxHorizon) {
    throw Error(ErrorCode::InvalidArgument,
                "LZ prior horizon must be in [1, 62], got " + std::to_string(horizon));
  }
}

std::vector<std::uint64_t> LzPrior::phrase_histogram(const BitString& prefix, unsigned threads) const {
  if (prefix.size() > horizon_) {
    throw Error(ErrorCode::Range, "prefix longer than LZ horizon " + std::to_string(horizon_));
  }
  const auto h = static_cast<std::uint32_t>(horizon_);
  std::vector<std::uint64_t> hist(horizon_ + 2, 0);
  ParseState root = state_after(prefix);
  if (root.len == h) {
    hist[root.final_count()] = 1;
    return hist;
  }
  const std::uint32_t remaining = h - root.len;
  if (threads <= 1 || remaining < 20) {
    count_extensions(root, h, hist.data());
    return hist;
  }
  // Fan out over 2^split subtrees; integer sums make the result schedule-free.
  const std::uint32_t split = std::min<std::uint32_t>(8, remaining - 12);
  const std::size_t tasks = std::size_t{1} << split;
  std::vector<std::vector<std::uint64_t>> partial(tasks, std::vector<std::uint64_t>(horizon_ + 2, 0));
  parallel_for(tasks, threads, [&](std::size_t i) {
    ParseState st = root;
    for (std::uint32_t k = 0; k < split; ++k) st.advance(bit_of((i >> (split - 1 - k)) & 1U));
    count_extensions(st, h, partial[i].data());
  });
  for (const auto& p : partial) {
    for (std::size_t c = 0; c < hist.size(); ++c) hist[c] += p[c];
  }
  return hist;
}

mpz_class LzPrior::direct_weight(const BitString& prefix) const {
  std::vector<std::uint64_t> hist = phrase_histogram(prefix, default_threads());
  mpz_class total = 0;
  for (std::size_t c = 0; c < hist.size(); ++c) {
    if (hist[c] == 0) continue;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), 2, bits_per_phrase_ * (horizon_ - c));
    mpz_class count;
    mpz_import(count.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &hist[c]);
    total += term * count;
  }
  return total;
}

std::optional<mpz_class> LzPrior::cached(const BitString& prefix) const {
  std::lock_guard lock(mutex_);
  if (auto it = memo_.find(prefix); it != memo_.end()) return it->second;
  return std::nullopt;
}

mpz_class LzPrior::weight(const BitString& prefix) const {
  if (prefix.size() > horizon_) {
    throw Error(ErrorCode::Range, "prefix longer than LZ horizon " + std::to_string(horizon_));
  }
  if (prefix.size() == horizon_) {
    mpz_class w;
    mpz_ui_pow_ui(w.get_mpz_t(), 2, bits_per_phrase_ * (horizon_ - state_after(prefix).final_count()));
    return w;
  }
  if (auto hit = cached(prefix)) return *hit;

  mpz_class w;
  if (prefix.empty()) {
    // K is invariant under complementing every bit, so W(1) = W(0).
    w = 2 * weight(BitString::parse("0"));
  } else if (prefix.back() == Bit::One && cached(prefix.prefix(prefix.size() - 1))) {
    BitString parent = prefix.prefix(prefix.size() - 1);
    w = weight(parent) - weight(parent.extended(Bit::Zero));
  } else {
    w = direct_weight(prefix);
  }
  std::lock_guard lock(mutex_);
  memo_.emplace(prefix, w);
  return w;
}

Prob LzPrior::probability(const BitString& x) const {
  Rational q(weight(x), normalizer());
  q.canonicalize();
  return Prob(std::move(q));
}

MaybeProb LzPrior::conditional(const BitString& x, Bit b) const {
  if (x.size() >= horizon_) {
    throw Error(ErrorCode::Range, "LZ prior predictor is defined only on prefixes shorter than its horizon " +
                                      std::to_string(horizon_) + " (got length " + std::to_string(x.size()) + ")");
  }
  mpz_class parent = weight(x);
  if (parent == 0) return std::nullopt;
  Rational q(weight(x.extended(b)), parent);
  q.canonicalize();
  return Prob(std::move(q));
}

namespace {

std::mutex g_registry_mutex;
std::map<std::size_t, std::shared_ptr<const LzPrior>>& registry() {
  static std::map<std::size_t, std::shared_ptr<const LzPrior>> priors;
  return priors;
}

class BlockCursor final : public PredictionCursor {
 public:
  explicit BlockCursor(std::shared_ptr<const LzPrior> prior) : prior_(std::move(prior)) {}

  MaybeProb predict(Bit b) override { return prior_->conditional(block_, b); }

 protected:
  void on_advance(Bit b) override {
    block_.push_back(b);
    if (block_.size() == prior_->horizon()) block_ = BitString();
  }

 private:
  std::shared_ptr<const LzPrior> prior_;
  BitString block_;
};

class BlockModel final : public MeasureModel {
 public:
  explicit BlockModel(std::shared_ptr<const LzPrior> prior) : prior_(std::move(prior)) {}

  Prob value(const BitString& x) const override {
    const std::size_t h = prior_->horizon();
    Prob p = Prob::one();
    for (std::size_t pos = 0; pos < x.size(); pos += h) p *= prior_->probability(x.substr(pos, h));
    return p;
  }
  MaybeProb conditional(const BitString& x, Bit b) const override {
    const std::size_t h = prior_->horizon();
    return prior_->conditional(x.substr(x.size() - x.size() % h), b);
  }
  std::unique_ptr<PredictionCursor> cursor() const override { return std::make_unique<BlockCursor>(prior_); }
  std::string describe() const override { return "lz(" + std::to_string(prior_->horizon()) + ")"; }

 private:
  std::shared_ptr<const LzPrior> prior_;
};

}  // namespace

std::shared_ptr<const LzPrior> shared_prior(std::size_t horizon) {
  std::lock_guard lock(g_registry_mutex);
  auto& priors = registry();
  auto it = priors.find(horizon);
  if (it == priors.end()) it = priors.emplace(horizon, std::make_shared<const LzPrior>(horizon)).first;
  return it->second;
}

void clear_shared_priors() {
  std::lock_guard lock(g_registry_mutex);
  registry().clear();
}

Predictor lz_prior_predictor(std::size_t horizon) {
  auto prior = shared_prior(horizon);
  return Predictor("lz-prior(" + std::to_string(horizon) + ")",
                   [prior](const BitString& x, Bit b) { return prior->conditional(x, b); });
}

Measure lz_block_measure(std::size_t horizon) { return Measure(std::make_shared<BlockModel>(shared_prior(horizon))); }

}  // namespace unipred::lz
