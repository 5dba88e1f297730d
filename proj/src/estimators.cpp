#include "shiftmeasure/estimators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shiftmeasure/kernels.hpp"

namespace shiftmeasure::est {

namespace {

std::vector<std::uint64_t> counts(const std::vector<OrbitSample>& samples, int n) {
  if (samples.empty()) throw std::invalid_argument("estimators need at least one sample");
  if (n < 1) throw std::invalid_argument("word length must be >= 1");
  for (const auto& s : samples)
    if (s.length() < static_cast<std::size_t>(n))
      throw std::invalid_argument(fmt::format("word length {} exceeds a sample of length {}", n, s.length()));
  return kernels::factor_counts(samples, n);
}

}  // namespace

double word_count_entropy(const std::vector<OrbitSample>& samples, int n) {
  const auto c = counts(samples, n);
  return std::log(static_cast<double>(c.size())) / n;
}

double katok_entropy(const std::vector<OrbitSample>& samples, int n, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument(fmt::format("delta must lie in (0,1), got {}", delta));
  const auto c = counts(samples, n);
  std::uint64_t total = 0;
  for (auto v : c) total += v;
  const double needed = (1.0 - delta) * static_cast<double>(total);
  std::uint64_t covered = 0;
  std::size_t r = 0;
  while (r < c.size() && static_cast<double>(covered) < needed) covered += c[r++];
  return std::log(static_cast<double>(std::max<std::size_t>(r, 1))) / n;
}

}  // namespace shiftmeasure::est
