#include "shiftmeasure/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

namespace shiftmeasure::reference {

template <class Scalar>
BasicCylinderTable<Scalar> markov_extend(const BasicCylinderTable<Scalar>& base, int order, int target_depth) {
  BasicCylinderTable<Scalar> out(target_depth);
  for (int n = 0; n <= std::min(order + 1, target_depth); ++n)
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) out[Word(w, n)] = base[Word(w, n)];
  for (int n = order + 2; n <= target_depth; ++n) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const Word word(bits, n);
      Word tail = word;
      while (tail.length() > order + 1) tail = tail.drop_first();
      const Scalar& denom = base[tail.drop_last()];
      out[word] = denom == 0 ? Scalar(0) : Scalar(out[word.drop_last()] * base[tail] / denom);
    }
  }
  return out;
}

template <class Scalar>
void fill_cross_ratio(BasicCylinderTable<Scalar>& table, const std::vector<std::array<Scalar, 4>>& boundary) {
  for (int n = 0; n + 2 <= table.depth(); ++n) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const Word w(bits, n);
      for (int e = 0; e < 2; ++e) {
        for (int f = 0; f < 2; ++f) {
          const Word child = w.prepend(e).append(f);
          if (bits == 0) {
            table[child] = boundary[static_cast<std::size_t>(n)][static_cast<std::size_t>(2 * e + f)];
          } else {
            const Scalar& pw = table[w];
            table[child] = pw == 0 ? Scalar(0) : Scalar(table[w.prepend(e)] * table[w.append(f)] / pw);
          }
        }
      }
    }
  }
}

double conditional_entropy(const FloatTable& table, int n) {
  double total = 0.0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n - 1)); ++bits) {
    const Word w(bits, n - 1);
    for (int e = 0; e < 2; ++e) {
      const double q = table[w.append(e)];
      if (q > 0.0 && table[w] > 0.0) total -= q * std::log(q / table[w]);
    }
  }
  return total;
}

std::uint64_t count_occurrences(const OrbitSample& x, const Word& w, std::uint64_t horizon) {
  const std::string text = x.str();
  const std::string pattern = w.str();
  if (pattern.empty()) return horizon;
  std::uint64_t count = 0;
  for (std::uint64_t j = 0; j < horizon; ++j) {
    if (j + pattern.size() > text.size()) break;
    if (text.compare(j, pattern.size(), pattern) == 0) ++count;
  }
  return count;
}

std::vector<std::uint64_t> factor_counts(std::span<const OrbitSample> samples, int n) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& s : samples) {
    const std::string text = s.str();
    for (std::size_t j = 0; j + static_cast<std::size_t>(n) <= text.size(); ++j) ++counts[text.substr(j, n)];
  }
  std::vector<std::uint64_t> out;
  for (const auto& [word, c] : counts) out.push_back(c);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

template BasicCylinderTable<Rational> markov_extend(const BasicCylinderTable<Rational>&, int, int);
template BasicCylinderTable<double> markov_extend(const BasicCylinderTable<double>&, int, int);
template void fill_cross_ratio(BasicCylinderTable<Rational>&, const std::vector<std::array<Rational, 4>>&);
template void fill_cross_ratio(BasicCylinderTable<double>&, const std::vector<std::array<double, 4>>&);

}  // namespace shiftmeasure::reference
