#include "shiftmeasure/birkhoff.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>
#include <set>

#include "shiftmeasure/kernels.hpp"

namespace shiftmeasure::birkhoff {

double recurrence(const OrbitSample& x, const Word& w, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("recurrence horizon must be >= 1");
  if (w.empty()) return 1.0;
  return static_cast<double>(kernels::count_occurrences(x.bits, w, n)) / static_cast<double>(n);
}

OrbitSample generic_point_half(std::size_t length) {
  if (length == 0) throw std::invalid_argument("generic point length must be >= 1");
  OrbitSample x;
  x.source = "generic point 0^k 1^k";
  x.bits.reserve(length);
  for (std::size_t m = 1; x.bits.size() < length; ++m) {
    for (std::uint8_t symbol : {0, 1})
      for (std::size_t i = 0; i < m && x.bits.size() < length; ++i) x.bits.push_back(symbol);
  }
  return x;
}

double weighted_deviation(const OrbitSample& x, std::uint64_t n,
                          const std::vector<std::pair<Word, double>>& targets) {
  std::set<Word> seen;
  for (const auto& [w, alpha] : targets) {
    if (w.empty()) throw std::invalid_argument("weighted deviation targets need nonempty words");
    if (!seen.insert(w).second) throw std::invalid_argument("duplicate target word '" + w.str() + "'");
  }
  double total = 0.0;
  for (const auto& [w, alpha] : targets) {
    const double weight = std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(w.canonical_index(), 2000)));
    total += weight * std::fabs(recurrence(x, w, n) - alpha);
  }
  return total;
}

double ratio_average(const OrbitSample& x, const Word& f, const Word& g, std::uint64_t n) {
  const double denominator = recurrence(x, g, n);
  if (denominator == 0.0)
    throw UndefinedRatio(fmt::format("ratio average undefined: '{}' never occurs within horizon {}", g.str(), n));
  return recurrence(x, f, n) / denominator;
}

RecurrenceProfile recurrence_profile(const OrbitSample& x, const std::vector<Word>& words, std::uint64_t n) {
  RecurrenceProfile profile;
  profile.words = words;
  profile.horizon = n;
  for (const auto& w : words) profile.averages.push_back(recurrence(x, w, n));
  return profile;
}

void write_profile_csv(std::ostream& out, const RecurrenceProfile& profile,
                       const std::vector<std::optional<double>>& targets) {
  out << "word,horizon,average,target,deviation\n";
  for (std::size_t i = 0; i < profile.words.size(); ++i) {
    const double avg = profile.averages[i];
    out << profile.words[i].str() << ',' << profile.horizon << ',' << fmt::format("{:.12g}", avg) << ',';
    if (i < targets.size() && targets[i])
      out << fmt::format("{:.12g},{:.12g}", *targets[i], std::fabs(avg - *targets[i]));
    else
      out << ',';
    out << '\n';
  }
}

}  // namespace shiftmeasure::birkhoff
