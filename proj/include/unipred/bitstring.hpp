#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace unipred {

enum class Bit : std::uint8_t { Zero = 0, One = 1 };

constexpr Bit flip(Bit b) noexcept { return b == Bit::Zero ? Bit::One : Bit::Zero; }
constexpr int to_int(Bit b) noexcept { return static_cast<int>(b); }
constexpr char to_char(Bit b) noexcept { return b == Bit::Zero ? '0' : '1'; }
constexpr Bit bit_of(bool one) noexcept { return one ? Bit::One : Bit::Zero; }

// Throws InvalidArgument for anything other than 0 or 1.
Bit bit_from_int(int value);

inline constexpr Bit kBits[2] = {Bit::Zero, Bit::One};

// A finite binary string. Positions are 0-based here; x_1 ... x_t in the usual
// notation is (*this)[0] ... (*this)[t-1].
class BitString {
 public:
  BitString() = default;

  // ASCII '0'/'1' only. Throws ParseError with the offset of the first bad byte.
  static BitString parse(std::string_view text);
  // Like parse, but "^" denotes the empty string.
  static BitString from_token(std::string_view token);
  static BitString repeat(Bit b, std::size_t n);
  // Low `width` bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t length() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  Bit operator[](std::size_t i) const noexcept { return bits_[i] == '1' ? Bit::One : Bit::Zero; }
  Bit back() const noexcept { return (*this)[size() - 1]; }

  void push_back(Bit b) { bits_.push_back(to_char(b)); }
  void append(const BitString& other) { bits_ += other.bits_; }
  BitString extended(Bit b) const {
    BitString r = *this;
    r.push_back(b);
    return r;
  }
  BitString prefix(std::size_t n) const { return BitString(bits_.substr(0, n)); }
  BitString substr(std::size_t pos, std::size_t len = std::string::npos) const {
    return BitString(bits_.substr(pos, len));
  }
  BitString complement() const;

  bool is_prefix_of(const BitString& other) const noexcept {
    return size() <= other.size() && other.bits_.compare(0, size(), bits_) == 0;
  }
  std::size_t count_ones() const noexcept;

  // '0'/'1' characters; empty for the empty string.
  const std::string& str() const noexcept { return bits_; }
  // CLI token form: '^' for the empty string.
  std::string token() const { return bits_.empty() ? std::string("^") : bits_; }

  friend BitString operator+(const BitString& a, const BitString& b) {
    return BitString(a.bits_ + b.bits_);
  }
  friend bool operator==(const BitString&, const BitString&) = default;
  // Length-lexicographic (shortlex) order.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.bits_.compare(b.bits_) <=> 0;
  }

 private:
  explicit BitString(std::string raw) : bits_(std::move(raw)) {}
  std::string bits_;
};

// Every string of length exactly n, in lexicographic order.
template <class F>
void for_each_string_of_length(std::size_t n, F&& f) {
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) f(BitString::from_uint(v, n));
}

// Every string of length < n, in shortlex order.
template <class F>
void for_each_string_shorter_than(std::size_t n, F&& f) {
  for (std::size_t len = 0; len < n; ++len) for_each_string_of_length(len, f);
}

}  // namespace unipred

template <>
struct std::hash<unipred::BitString> {
  std::size_t operator()(const unipred::BitString& s) const noexcept {
    return std::hash<std::string>{}(s.str());
  }
};
