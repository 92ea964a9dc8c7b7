#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace unipred {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Io,
  Undefined,       // a prediction was required where the predictor has none
  ZeroNormalizer,  // every pool member assigned zero to the observed bit
  Coma,            // positive-weight member undefined at the current history
  Invariant,
  Range,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Carries the byte offset of the first offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::optional<std::size_t> offset = std::nullopt)
      : Error(ErrorCode::Parse, message), offset_(offset) {}

  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  std::optional<std::size_t> offset_;
};

}  // namespace unipred
