#include "unipred/harness.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "unipred/error.hpp"

namespace unipred::harness {

BitString parse_sequence(std::string_view text) {
  std::string bits;
  bits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '0' || c == '1') {
      bits += c;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw ParseError("illegal character in sequence at byte offset " + std::to_string(i), i);
    }
  }
  return BitString::parse(bits);
}

BitString ingest_sequence(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sequence(buf.str());
}

std::string emit_sequence(const BitString& x) {
  std::string out;
  const std::string& s = x.str();
  for (std::size_t i = 0; i < s.size(); i += 80) {
    out += s.substr(i, 80);
    out += '\n';
  }
  if (s.empty()) out += '\n';
  return out;
}

bool below(std::uint64_t k, const Prob& p) {
  // k * den < num * 2^64
  const mpz_class kk(static_cast<unsigned long>(k));
  mpz_class lhs = kk * p.value().get_den();
  mpz_class rhs = p.value().get_num();
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), 64);
  return lhs < rhs;
}

BitString sample_sequence(const SemiMeasure& m, std::size_t length, SplitMix64& rng) {
  auto cur = m.cursor();
  for (std::size_t t = 0; t < length; ++t) {
    MaybeProb p1 = cur->predict(Bit::One);
    if (!p1) throw Error(ErrorCode::Undefined, m.describe() + " has no conditional after " + cur->history().token());
    cur->advance(bit_of(below(rng.next(), *p1)));
  }
  return cur->history();
}

BitString sample_sequence(const SemiMeasure& m, std::size_t length, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return sample_sequence(m, length, rng);
}

ReliabilityTrace reliability_trace(const SemiPredictor& p, const SemiMeasure& truth, std::size_t length,
                                   std::uint64_t seed) {
  ReliabilityTrace trace;
  SplitMix64 rng(seed);
  auto pc = p.cursor();
  auto tc = truth.cursor();
  for (std::size_t t = 0; t < length; ++t) {
    MaybeProb mu1 = tc->predict(Bit::One);
    if (!mu1) throw Error(ErrorCode::Undefined, truth.describe() + " has no conditional after " + tc->history().token());
    MaybeProb p1 = pc->predict(Bit::One);
    if (!p1) {
      trace.status = TraceStatus::PredictorUndefined;
      trace.stopped_at = t;
      return trace;
    }
    trace.errors.push_back(abs(p1->value() - mu1->value()));
    const Bit b = bit_of(below(rng.next(), *mu1));
    trace.sequence.push_back(b);
    pc->advance(b);
    tc->advance(b);
  }
  trace.stopped_at = length;
  return trace;
}

}  // namespace unipred::harness
