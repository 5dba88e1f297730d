#pragma once

// Empirical cylinder frequencies along finite orbit stretches.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shiftmeasure/orbit.hpp"
#include "shiftmeasure/word.hpp"

namespace shiftmeasure::birkhoff {

class UndefinedRatio : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (1/n) #{0 <= j < n : x_{j+1}..x_{j+|w|} = w}. Windows running past the end of
/// the sample count as misses. The empty word gives 1.
double recurrence(const OrbitSample& x, const Word& w, std::uint64_t n);

/// 0 1 00 11 000 111 ... truncated to `length` bits.
OrbitSample generic_point_half(std::size_t length);

/// sum_i 2^{-i} |A_n(w_i)(x) - alpha_i|, where i is the position of w_i in the
/// length-lex enumeration of nonempty words ("0" = 1, "1" = 2, "00" = 3, ...).
/// Throws std::invalid_argument on duplicate or empty words.
double weighted_deviation(const OrbitSample& x, std::uint64_t n,
                          const std::vector<std::pair<Word, double>>& targets);

/// recurrence(x, f, n) / recurrence(x, g, n); throws UndefinedRatio when the
/// denominator vanishes.
double ratio_average(const OrbitSample& x, const Word& f, const Word& g, std::uint64_t n);

struct RecurrenceProfile {
  std::vector<Word> words;
  std::vector<double> averages;
  std::uint64_t horizon = 0;
};

RecurrenceProfile recurrence_profile(const OrbitSample& x, const std::vector<Word>& words, std::uint64_t n);

/// CSV with header "word,horizon,average,target,deviation". Target and deviation
/// columns stay empty for words without a target.
void write_profile_csv(std::ostream& out, const RecurrenceProfile& profile,
                       const std::vector<std::optional<double>>& targets = {});

}  // namespace shiftmeasure::birkhoff
