#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "unipred/bitstring.hpp"
#include "unipred/measure.hpp"
#include "unipred/rational.hpp"

namespace unipred::lz {

// Exhaustive-history (LZ76) parse. Scanning left to right, each phrase is the
// shortest prefix of the remaining input that does not occur as a substring of
// the text before the phrase's last symbol. The final phrase may be a repeat.
struct LzParse {
  BitString input;
  std::vector<BitString> phrases;

  std::size_t phrase_count() const noexcept { return phrases.size(); }
};

LzParse lz76_parse(const BitString& x);

// ceil(log2(n + 1)); 0 for n = 0.
std::uint64_t bits_per_phrase(std::size_t n);

// K(x) = C(x) * ceil(log2(|x| + 1)) bits, 0 for the empty string.
std::uint64_t lz_complexity(const BitString& x);

// Length-class simplicity prior P_h(x) proportional to 2^-K(x) over |x| = h,
// together with its prefix marginals. Horizons up to 62 are supported; the
// cost of a marginal at prefix length t is 2^(h - t) incremental parse steps.
class LzPrior {
 public:
  static constexpr std::size_t kMaxHorizon = 62;

  explicit LzPrior(std::size_t horizon);

  std::size_t horizon() const noexcept { return horizon_; }

  // N[c] = number of length-h extensions of `prefix` with c phrases.
  std::vector<std::uint64_t> phrase_histogram(const BitString& prefix, unsigned threads) const;

  // Sum over length-h extensions z of 2^(k*(h - C(prefix z))), k = bits per
  // phrase at length h. Memoized.
  mpz_class weight(const BitString& prefix) const;
  mpz_class normalizer() const { return weight(BitString()); }

  // Marginal of P_h on a prefix, |x| <= h.
  Prob probability(const BitString& x) const;
  // P_h(xb) / P_h(x) for |x| < h. Throws Range beyond the horizon.
  MaybeProb conditional(const BitString& x, Bit b) const;

 private:
  mpz_class direct_weight(const BitString& prefix) const;
  std::optional<mpz_class> cached(const BitString& prefix) const;

  std::size_t horizon_;
  std::uint64_t bits_per_phrase_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<BitString, mpz_class> memo_;
};

// Process-wide shared priors, one per horizon.
std::shared_ptr<const LzPrior> shared_prior(std::size_t horizon);
// Drops every shared prior (their memo tables included).
void clear_shared_priors();

// The conditional of P_horizon; defined on prefixes shorter than the horizon
// and throws Range beyond it.
Predictor lz_prior_predictor(std::size_t horizon);

// Total measure on all strings: consecutive length-h blocks are independent
// draws from P_h, the trailing partial block is marginalized. Agrees with
// lz_prior_predictor on every prefix shorter than h.
Measure lz_block_measure(std::size_t horizon);

}  // namespace unipred::lz
