#pragma once

// UPC-A symbology: digit patterns, the 95-bar layout and the 95x123 bar code
// dictionary in which every valid code has a 15-sparse representation.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace barscan {

inline constexpr std::size_t kDigitCount = 12;
inline constexpr std::size_t kBarCount = 95;
inline constexpr std::size_t kCodeLength = 123;
inline constexpr std::size_t kBlockCount = 15;
inline constexpr std::size_t kPatternWidth = 7;

using Pattern = std::array<std::uint8_t, kPatternWidth>;

/// Raised when a sparse code violates the one-hot block structure.
class StructuralError : public std::runtime_error {
public:
  /// `block` is 1-based (1..15).
  StructuralError(std::size_t block, const std::string& what);
  std::size_t block() const noexcept { return block_; }

private:
  std::size_t block_;
};

/// Twelve decimal digits. Check digits are not enforced.
class DigitString {
public:
  DigitString() = default;
  explicit DigitString(const std::array<std::uint8_t, kDigitCount>& digits);

  /// Parses exactly twelve characters '0'..'9'.
  static DigitString parse(std::string_view text);

  std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
  const std::array<std::uint8_t, kDigitCount>& digits() const noexcept { return digits_; }
  std::string to_string() const;

  friend bool operator==(const DigitString&, const DigitString&) = default;

private:
  std::array<std::uint8_t, kDigitCount> digits_{};
};

/// Unit-width bar sequence, 1 = black, 0 = white.
class BinaryBarcode {
public:
  using Bars = std::array<std::uint8_t, kBarCount>;

  /// Throws std::invalid_argument unless the S, M and E guards are in place.
  explicit BinaryBarcode(const Bars& bars);

  std::uint8_t operator[](std::size_t i) const { return bars_[i]; }
  const Bars& bars() const noexcept { return bars_; }
  std::string to_string() const;

  friend bool operator==(const BinaryBarcode&, const BinaryBarcode&) = default;

private:
  Bars bars_;
};

/// x in {0,1}^123 with ones at positions 1, 62, 123 and one per digit block.
class SparseCode {
public:
  using Entries = std::array<std::uint8_t, kCodeLength>;

  /// Validates `x`; throws StructuralError naming the first bad block.
  static SparseCode from_entries(std::span<const std::uint8_t> x);

  std::uint8_t operator[](std::size_t i) const { return x_[i]; }
  const Entries& entries() const noexcept { return x_; }

  friend bool operator==(const SparseCode&, const SparseCode&) = default;

private:
  friend SparseCode digits_to_x(const DigitString& digits);
  SparseCode() = default;
  Entries x_{};
};

/// Column and bar span of one of the 15 dictionary blocks
/// (S, L1..L6, M, R1..R6, E). All offsets are 0-based.
struct BlockSpan {
  std::size_t first_column;
  std::size_t column_count;
  std::size_t first_bar;
  std::size_t bar_count;

  constexpr bool is_digit_block() const noexcept { return column_count == 10; }
};

constexpr std::array<BlockSpan, kBlockCount> block_layout() {
  std::array<BlockSpan, kBlockCount> spans{};
  std::size_t column = 0;
  std::size_t bar = 0;
  for (std::size_t b = 0; b < kBlockCount; ++b) {
    const bool guard = (b == 0 || b == 7 || b == 14);
    const std::size_t columns = guard ? 1 : 10;
    const std::size_t bars = (b == 7) ? 5 : guard ? 3 : kPatternWidth;
    spans[b] = {column, columns, bar, bars};
    column += columns;
    bar += bars;
  }
  return spans;
}

inline constexpr std::array<BlockSpan, kBlockCount> kBlocks = block_layout();

/// 0-based block indices of the twelve digit blocks, in left-to-right order.
inline constexpr std::array<std::size_t, kDigitCount> kDigitBlocks = {
    1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12, 13};

inline constexpr std::array<std::uint8_t, 3> kGuardPattern = {1, 0, 1};
inline constexpr std::array<std::uint8_t, 5> kMiddlePattern = {0, 1, 0, 1, 0};

Pattern left_pattern(int digit);
Pattern right_pattern(int digit);

BinaryBarcode encode_digits(const DigitString& digits);
SparseCode digits_to_x(const DigitString& digits);

/// Inverse of digits_to_x; throws StructuralError on a malformed support.
DigitString x_to_digits(std::span<const std::uint8_t> x);
DigitString x_to_digits(const SparseCode& x);

/// The 95x123 block diagonal bar code dictionary. Immutable.
class Dictionary {
public:
  std::uint8_t operator()(std::size_t bar, std::size_t column) const {
    return entries_[bar * kCodeLength + column];
  }

  /// The 0/1 column for `column` restricted to its block's bar span.
  std::span<const std::uint8_t> block_pattern(std::size_t column) const;

  /// D * x, exact integer arithmetic. Throws if an entry would exceed 1.
  BinaryBarcode apply(const SparseCode& x) const;

private:
  friend Dictionary build_dictionary();
  Dictionary() = default;

  std::array<std::uint8_t, kBarCount * kCodeLength> entries_{};
  // per-column pattern within its block, padded to 7
  std::array<std::array<std::uint8_t, kPatternWidth>, kCodeLength> patterns_{};
  std::array<std::uint8_t, kCodeLength> pattern_length_{};
};

Dictionary build_dictionary();

/// Shared instance built once on first use.
const Dictionary& dictionary();

/// Block (0-based) that owns dictionary column `column`.
std::size_t block_of_column(std::size_t column);

}  // namespace barscan
