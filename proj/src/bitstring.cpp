#include "unipred/bitstring.hpp"

#include <algorithm>

#include "unipred/error.hpp"

namespace unipred {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
    case ErrorCode::Undefined: return "undefined";
    case ErrorCode::ZeroNormalizer: return "zero-normalizer";
    case ErrorCode::Coma: return "coma";
    case ErrorCode::Invariant: return "invariant";
    case ErrorCode::Range: return "range";
  }
  return "unknown";
}

Bit bit_from_int(int value) {
  if (value == 0) return Bit::Zero;
  if (value == 1) return Bit::One;
  throw Error(ErrorCode::InvalidArgument, "bit must be 0 or 1, got " + std::to_string(value));
}

BitString BitString::parse(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw ParseError("illegal character in bit string at offset " + std::to_string(i), i);
    }
  }
  return BitString(std::string(text));
}

BitString BitString::from_token(std::string_view token) {
  if (token == "^") return BitString();
  return parse(token);
}

BitString BitString::repeat(Bit b, std::size_t n) { return BitString(std::string(n, to_char(b))); }

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1U) s[i] = '1';
  }
  return BitString(std::move(s));
}

BitString BitString::complement() const {
  std::string s = bits_;
  for (char& c : s) c = (c == '0') ? '1' : '0';
  return BitString(std::move(s));
}

std::size_t BitString::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), '1'));
}

}  // namespace unipred
