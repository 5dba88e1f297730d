#include "shiftmeasure/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace shiftmeasure::kernels {

namespace {

template <class Scalar>
bool is_zero(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, double>)
    return x == 0.0;
  else
    return sgn(x) == 0;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

template <class Scalar>
void markov_level(std::span<const Scalar> prev, std::span<const Scalar> base, std::span<const Scalar> base_parent,
                  int order, std::span<Scalar> out) {
  const std::int64_t size = static_cast<std::int64_t>(out.size());
  const std::uint64_t tail_mask = (std::uint64_t{1} << (order + 1)) - 1;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < size; ++i) {
    const auto word = static_cast<std::uint64_t>(i);
    const std::uint64_t tail = word & tail_mask;  // x_{n-k}..x_n
    const Scalar& denom = base_parent[tail >> 1];
    if (is_zero(denom))
      out[word] = Scalar(0);
    else
      out[word] = prev[word >> 1] * base[tail] / denom;
  }
}

template <class Scalar>
void cross_ratio_level(std::span<const Scalar> upper, std::span<const Scalar> lower, std::span<Scalar> out) {
  const std::int64_t words = static_cast<std::int64_t>(lower.size());
  const std::uint64_t half = lower.size();  // 2^n: offset of the leading 1 at level n+1
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 1; i < words; ++i) {  // i = 0 is the zero stem
    const auto w = static_cast<std::uint64_t>(i);
    const Scalar& pw = lower[w];
    for (std::uint64_t e = 0; e < 2; ++e) {
      const Scalar& left = upper[e * half + w];  // p_{e w}
      for (std::uint64_t f = 0; f < 2; ++f) {
        const std::uint64_t index = e * 2 * half + (w << 1) + f;  // e w f at level n+2
        if (is_zero(pw))
          out[index] = Scalar(0);
        else
          out[index] = left * upper[(w << 1) | f] / pw;
      }
    }
  }
}

void conditional_entropy_terms(std::span<const double> parent, std::span<const double> child,
                               std::span<double> terms) {
  const std::int64_t size = static_cast<std::int64_t>(parent.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < size; ++i) {
    const auto w = static_cast<std::size_t>(i);
    const double pw = parent[w];
    double term = 0.0;
    if (pw > 0.0) {
      for (std::size_t e = 0; e < 2; ++e) {
        const double q = child[2 * w + e];
        if (q > 0.0) term -= q * std::log(q / pw);
      }
    }
    terms[w] = term;
  }
}

double ordered_sum(std::span<const double> terms) {
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

std::uint64_t count_occurrences(std::span<const std::uint8_t> bits, const Word& w, std::uint64_t horizon) {
  const auto len = static_cast<std::uint64_t>(w.length());
  if (len == 0) return horizon;
  if (bits.size() < len) return 0;
  const std::uint64_t windows = std::min<std::uint64_t>(horizon, bits.size() - len + 1);
  const std::uint64_t target = w.bits();
  const std::int64_t limit = static_cast<std::int64_t>(windows);
  std::uint64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::int64_t j = 0; j < limit; ++j) {
    std::uint64_t code = 0;
    const std::uint8_t* p = bits.data() + j;
    for (std::uint64_t k = 0; k < len; ++k) code = (code << 1) | p[k];
    count += code == target ? 1 : 0;
  }
  return count;
}

std::vector<std::uint64_t> factor_counts(std::span<const OrbitSample> samples, int n) {
  if (n < 1 || n > Word::max_length) throw std::invalid_argument("factor length out of range");
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const std::int64_t count = static_cast<std::int64_t>(samples.size());
  std::vector<std::uint64_t> result;

  auto encode = [&](const OrbitSample& s, auto&& sink) {
    if (s.bits.size() < static_cast<std::size_t>(n)) return;
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < s.bits.size(); ++i) {
      code = ((code << 1) | s.bits[i]) & mask;
      if (i + 1 >= static_cast<std::size_t>(n)) sink(code);
    }
  };

  if (n <= 20) {
    const std::size_t words = std::size_t{1} << n;
    std::vector<std::uint64_t> total(words, 0);
#pragma omp parallel
    {
      std::vector<std::uint64_t> local(words, 0);
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < count; ++i)
        encode(samples[static_cast<std::size_t>(i)], [&](std::uint64_t code) { ++local[code]; });
#pragma omp critical
      for (std::size_t w = 0; w < words; ++w) total[w] += local[w];
    }
    for (auto c : total)
      if (c > 0) result.push_back(c);
  } else {
    std::vector<std::vector<std::uint64_t>> codes(samples.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      auto& out = codes[static_cast<std::size_t>(i)];
      encode(samples[static_cast<std::size_t>(i)], [&](std::uint64_t code) { out.push_back(code); });
    }
    std::vector<std::uint64_t> all;
    for (auto& c : codes) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size();) {
      std::size_t j = i;
      while (j < all.size() && all[j] == all[i]) ++j;
      result.push_back(j - i);
      i = j;
    }
  }
  std::sort(result.begin(), result.end(), std::greater<>());
  return result;
}

OrbitSampler::OrbitSampler(const std::vector<std::vector<double>>& levels)
    : depth_(static_cast<int>(levels.size()) - 1) {
  if (depth_ < 1) throw std::invalid_argument("sampling needs a table of depth >= 1");
  cond_.resize(static_cast<std::size_t>(depth_));
  for (int k = 0; k < depth_; ++k) {
    const auto& parent = levels[static_cast<std::size_t>(k)];
    const auto& child = levels[static_cast<std::size_t>(k) + 1];
    auto& c = cond_[static_cast<std::size_t>(k)];
    c.resize(parent.size());
    for (std::size_t w = 0; w < parent.size(); ++w)
      c[w] = parent[w] > 0.0 ? std::clamp(child[2 * w] / parent[w], 0.0, 1.0) : 0.0;
  }
}

OrbitSample OrbitSampler::draw(std::size_t length, std::uint64_t seed) const {
  OrbitSample sample;
  sample.seed = seed;
  sample.bits.resize(length);
  std::mt19937_64 rng(seed);
  const int memory = depth_ - 1;  // beyond the table the order-(depth-1) Markov extension takes over
  const std::uint64_t memory_mask = memory == 0 ? 0 : (std::uint64_t{1} << memory) - 1;
  std::uint64_t history = 0;
  for (std::size_t i = 0; i < length; ++i) {
    const int k = static_cast<int>(std::min<std::size_t>(i, static_cast<std::size_t>(memory)));
    const std::uint64_t context = k == memory ? (history & memory_mask) : history;
    const double p0 = cond_[static_cast<std::size_t>(k)][context];
    const std::uint8_t symbol = uniform01(rng) < p0 ? 0 : 1;
    sample.bits[i] = symbol;
    history = (history << 1) | symbol;
    if (k == memory) history &= memory_mask;
  }
  return sample;
}

std::vector<OrbitSample> sample_batch(const OrbitSampler& sampler, std::size_t length, std::size_t count,
                                      std::uint64_t seed) {
  std::vector<OrbitSample> out(count);
  const std::int64_t n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = sampler.draw(length, seed ^ static_cast<std::uint64_t>(i));
  return out;
}

template void markov_level<Rational>(std::span<const Rational>, std::span<const Rational>, std::span<const Rational>,
                                     int, std::span<Rational>);
template void markov_level<double>(std::span<const double>, std::span<const double>, std::span<const double>, int,
                                   std::span<double>);
template void cross_ratio_level<Rational>(std::span<const Rational>, std::span<const Rational>, std::span<Rational>);
template void cross_ratio_level<double>(std::span<const double>, std::span<const double>, std::span<double>);

}  // namespace shiftmeasure::kernels
