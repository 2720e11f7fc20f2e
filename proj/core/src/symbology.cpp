#include "barscan/symbology.hpp"

#include <algorithm>
#include <stdexcept>

namespace barscan {

namespace {

constexpr std::array<Pattern, 10> kLeftPatterns = {{
    {0, 0, 0, 1, 1, 0, 1},
    {0, 0, 1, 1, 0, 0, 1},
    {0, 0, 1, 0, 0, 1, 1},
    {0, 1, 1, 1, 1, 0, 1},
    {0, 1, 0, 0, 0, 1, 1},
    {0, 1, 1, 0, 0, 0, 1},
    {0, 1, 0, 1, 1, 1, 1},
    {0, 1, 1, 1, 0, 1, 1},
    {0, 1, 1, 0, 1, 1, 1},
    {0, 0, 0, 1, 0, 1, 1},
}};

void check_digit(int digit) {
  if (digit < 0 || digit > 9) {
    throw std::domain_error("digit out of range 0..9: " + std::to_string(digit));
  }
}

template <std::size_t N>
bool matches(const BinaryBarcode::Bars& bars, std::size_t offset,
             const std::array<std::uint8_t, N>& pattern) {
  return std::equal(pattern.begin(), pattern.end(), bars.begin() + offset);
}

}  // namespace

StructuralError::StructuralError(std::size_t block, const std::string& what)
    : std::runtime_error("block " + std::to_string(block) + ": " + what), block_(block) {}

DigitString::DigitString(const std::array<std::uint8_t, kDigitCount>& digits) : digits_(digits) {
  for (auto d : digits_) check_digit(d);
}

DigitString DigitString::parse(std::string_view text) {
  if (text.size() != kDigitCount) {
    throw std::invalid_argument("expected 12 digits, got " + std::to_string(text.size()) +
                                " characters");
  }
  std::array<std::uint8_t, kDigitCount> digits{};
  for (std::size_t i = 0; i < kDigitCount; ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("non-digit character in '" + std::string(text) + "'");
    }
    digits[i] = static_cast<std::uint8_t>(text[i] - '0');
  }
  return DigitString(digits);
}

std::string DigitString::to_string() const {
  std::string out;
  out.reserve(kDigitCount);
  for (auto d : digits_) out.push_back(static_cast<char>('0' + d));
  return out;
}

BinaryBarcode::BinaryBarcode(const Bars& bars) : bars_(bars) {
  for (auto b : bars_) {
    if (b > 1) throw std::invalid_argument("bar values must be 0 or 1");
  }
  if (!matches(bars_, 0, kGuardPattern) || !matches(bars_, 45, kMiddlePattern) ||
      !matches(bars_, 92, kGuardPattern)) {
    throw std::invalid_argument("bar sequence is missing a start, middle or end guard");
  }
}

std::string BinaryBarcode::to_string() const {
  std::string out;
  out.reserve(kBarCount);
  for (auto b : bars_) out.push_back(b ? '1' : '0');
  return out;
}

SparseCode SparseCode::from_entries(std::span<const std::uint8_t> x) {
  return digits_to_x(x_to_digits(x));
}

Pattern left_pattern(int digit) {
  check_digit(digit);
  return kLeftPatterns[static_cast<std::size_t>(digit)];
}

Pattern right_pattern(int digit) {
  Pattern p = left_pattern(digit);
  for (auto& bit : p) bit = static_cast<std::uint8_t>(1 - bit);
  return p;
}

BinaryBarcode encode_digits(const DigitString& digits) {
  BinaryBarcode::Bars bars{};
  auto out = bars.begin();
  out = std::copy(kGuardPattern.begin(), kGuardPattern.end(), out);
  for (std::size_t i = 0; i < 6; ++i) {
    const Pattern p = left_pattern(digits[i]);
    out = std::copy(p.begin(), p.end(), out);
  }
  out = std::copy(kMiddlePattern.begin(), kMiddlePattern.end(), out);
  for (std::size_t i = 6; i < kDigitCount; ++i) {
    const Pattern p = right_pattern(digits[i]);
    out = std::copy(p.begin(), p.end(), out);
  }
  std::copy(kGuardPattern.begin(), kGuardPattern.end(), out);
  return BinaryBarcode(bars);
}

SparseCode digits_to_x(const DigitString& digits) {
  SparseCode code;
  code.x_[kBlocks[0].first_column] = 1;
  code.x_[kBlocks[7].first_column] = 1;
  code.x_[kBlocks[14].first_column] = 1;
  for (std::size_t i = 0; i < kDigitCount; ++i) {
    code.x_[kBlocks[kDigitBlocks[i]].first_column + digits[i]] = 1;
  }
  return code;
}

DigitString x_to_digits(std::span<const std::uint8_t> x) {
  if (x.size() != kCodeLength) {
    throw StructuralError(0, "sparse code must have 123 entries, got " + std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < kCodeLength; ++i) {
    if (x[i] > 1) {
      throw StructuralError(block_of_column(i) + 1,
                            "entry " + std::to_string(i + 1) + " is not 0 or 1");
    }
  }
  std::array<std::uint8_t, kDigitCount> digits{};
  std::size_t digit = 0;
  for (std::size_t b = 0; b < kBlockCount; ++b) {
    const BlockSpan& span = kBlocks[b];
    std::size_t ones = 0;
    std::size_t hit = 0;
    for (std::size_t k = 0; k < span.column_count; ++k) {
      if (x[span.first_column + k]) {
        ++ones;
        hit = k;
      }
    }
    if (ones != 1) {
      throw StructuralError(b + 1, "expected exactly one nonzero entry, found " +
                                       std::to_string(ones));
    }
    if (span.is_digit_block()) digits[digit++] = static_cast<std::uint8_t>(hit);
  }
  return DigitString(digits);
}

DigitString x_to_digits(const SparseCode& x) { return x_to_digits(std::span(x.entries())); }

std::span<const std::uint8_t> Dictionary::block_pattern(std::size_t column) const {
  return std::span<const std::uint8_t>(patterns_[column].data(), pattern_length_[column]);
}

BinaryBarcode Dictionary::apply(const SparseCode& x) const {
  BinaryBarcode::Bars bars{};
  for (std::size_t row = 0; row < kBarCount; ++row) {
    unsigned sum = 0;
    for (std::size_t col = 0; col < kCodeLength; ++col) sum += (*this)(row, col) * x[col];
    if (sum > 1) throw std::logic_error("dictionary product is not binary");
    bars[row] = static_cast<std::uint8_t>(sum);
  }
  return BinaryBarcode(bars);
}

Dictionary build_dictionary() {
  Dictionary dict;
  auto place = [&dict](std::size_t column, std::size_t first_bar, std::span<const std::uint8_t> p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      dict.entries_[(first_bar + i) * kCodeLength + column] = p[i];
      dict.patterns_[column][i] = p[i];
    }
    dict.pattern_length_[column] = static_cast<std::uint8_t>(p.size());
  };

  // S, M and E hold the bar-level guards (101, 01010, 101).
  place(kBlocks[0].first_column, kBlocks[0].first_bar, kGuardPattern);
  place(kBlocks[7].first_column, kBlocks[7].first_bar, kMiddlePattern);
  place(kBlocks[14].first_column, kBlocks[14].first_bar, kGuardPattern);

  for (std::size_t b : kDigitBlocks) {
    const bool left = b < 7;
    for (int k = 0; k < 10; ++k) {
      const Pattern p = left ? left_pattern(k) : right_pattern(k);
      place(kBlocks[b].first_column + static_cast<std::size_t>(k), kBlocks[b].first_bar, p);
    }
  }
  return dict;
}

const Dictionary& dictionary() {
  static const Dictionary instance = build_dictionary();
  return instance;
}

std::size_t block_of_column(std::size_t column) {
  for (std::size_t b = 0; b < kBlockCount; ++b) {
    if (column < kBlocks[b].first_column + kBlocks[b].column_count) return b;
  }
  throw std::out_of_range("column " + std::to_string(column) + " outside dictionary");
}

}  // namespace barscan
