#include "shiftmeasure/word.hpp"

#include <stdexcept>

namespace shiftmeasure {

namespace {
std::uint64_t mask(int length) { return length == 0 ? 0 : (~std::uint64_t{0} >> (64 - length)); }
}  // namespace

Word::Word(std::uint64_t bits, int length) : bits_(bits), length_(length) {
  if (length < 0 || length > max_length) throw std::invalid_argument("word length out of range");
  if ((bits & ~mask(length)) != 0) throw std::invalid_argument("word bits exceed length");
}

Word Word::parse(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(max_length))
    throw std::invalid_argument("word too long: '" + std::string(text) + "'");
  std::uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("invalid word '" + std::string(text) + "'");
    bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return Word(bits, static_cast<int>(text.size()));
}

Word Word::ones(int length) { return Word(mask(length), length); }

Word Word::drop_first() const { return Word(bits_ & mask(length_ - 1), length_ - 1); }

Word Word::complement() const { return Word(~bits_ & mask(length_), length_); }

bool Word::contains(const Word& factor) const {
  if (factor.length_ > length_) return false;
  const std::uint64_t m = mask(factor.length_);
  for (int shift = 0; shift + factor.length_ <= length_; ++shift)
    if (((bits_ >> shift) & m) == factor.bits_) return true;
  return false;
}

std::string Word::str() const {
  std::string out(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i) out[static_cast<std::size_t>(i)] = static_cast<char>('0' + symbol(i));
  return out;
}

}  // namespace shiftmeasure
