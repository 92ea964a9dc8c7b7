#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "unipred/measure.hpp"
#include "unipred/rng.hpp"

namespace unipred::harness {

// ASCII '0'/'1' with whitespace ignored. Anything else is a ParseError
// carrying the byte offset.
BitString parse_sequence(std::string_view text);
BitString ingest_sequence(const std::filesystem::path& path);
// '0'/'1' text, 80 per line, newline terminated.
std::string emit_sequence(const BitString& x);

// true iff k / 2^64 < p, exactly.
bool below(std::uint64_t k, const Prob& p);

// Bit t is 1 iff the t-th draw k satisfies k / 2^64 < m(1 | x^t).
BitString sample_sequence(const SemiMeasure& m, std::size_t length, std::uint64_t seed);
BitString sample_sequence(const SemiMeasure& m, std::size_t length, SplitMix64& rng);

enum class TraceStatus { Completed, PredictorUndefined };

struct ReliabilityTrace {
  BitString sequence;
  std::vector<Rational> errors;  // |p(x^t, 1) - mu(1 | x^t)|
  TraceStatus status = TraceStatus::Completed;
  std::size_t stopped_at = 0;
};

// Samples from truth and scores p on the same path.
ReliabilityTrace reliability_trace(const SemiPredictor& p, const SemiMeasure& truth, std::size_t length,
                                   std::uint64_t seed);

}  // namespace unipred::harness
