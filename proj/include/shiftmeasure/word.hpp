#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace shiftmeasure {

/// A finite binary word x_1..x_n, stored with x_1 as the most significant bit
/// so that numeric order of `bits` is lexicographic order within a length.
/// The empty word stands for the whole space.
class Word {
 public:
  static constexpr int max_length = 62;

  Word() = default;
  Word(std::uint64_t bits, int length);

  /// Parses a string of '0'/'1' characters.
  static Word parse(std::string_view text);
  static Word zeros(int length) { return Word(0, length); }
  static Word ones(int length);

  std::uint64_t bits() const { return bits_; }
  int length() const { return length_; }
  bool empty() const { return length_ == 0; }

  /// Symbol at position i (0-based from the left).
  int symbol(int i) const { return static_cast<int>((bits_ >> (length_ - 1 - i)) & 1U); }

  Word append(int symbol) const { return Word((bits_ << 1) | static_cast<std::uint64_t>(symbol), length_ + 1); }
  Word prepend(int symbol) const {
    return Word(bits_ | (static_cast<std::uint64_t>(symbol) << length_), length_ + 1);
  }
  Word drop_first() const;
  Word drop_last() const { return Word(bits_ >> 1, length_ - 1); }
  Word complement() const;

  /// Index in the length-lexicographic enumeration "", 0, 1, 00, 01, ...
  std::uint64_t canonical_index() const { return ((std::uint64_t{1} << length_) - 1) + bits_; }

  /// True if `factor` occurs as a contiguous block.
  bool contains(const Word& factor) const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint64_t bits_ = 0;
  int length_ = 0;
};

}  // namespace shiftmeasure
