#pragma once

// Data-parallel inner loops (OpenMP). Each kernel has a plain serial
// counterpart in reference.hpp that the tests compare against. Results never
// depend on thread count: floating sums are accumulated per index and reduced
// serially, integer counts are merged by addition.

#include <cstdint>
#include <span>
#include <vector>

#include "shiftmeasure/orbit.hpp"
#include "shiftmeasure/rational.hpp"
#include "shiftmeasure/word.hpp"

namespace shiftmeasure::kernels {

/// One level of the order-k Markov extension. `prev` is level n-1, `base` the
/// (k+1)-level and `base_parent` the k-level of the defining table; writes
/// level n into `out`: p_{x1..xn} = p_{x1..x(n-1)} * p_{x(n-k)..xn} / p_{x(n-k)..x(n-1)}.
template <class Scalar>
void markov_level(std::span<const Scalar> prev, std::span<const Scalar> base, std::span<const Scalar> base_parent,
                  int order, std::span<Scalar> out);

/// Level n+2 from levels n+1 (`upper`) and n (`lower`) by p_{ewe'} = p_{ew} p_{we'} / p_w
/// for every |w| = n except w = 0^n, which is left untouched.
template <class Scalar>
void cross_ratio_level(std::span<const Scalar> upper, std::span<const Scalar> lower, std::span<Scalar> out);

/// Per-parent terms -sum_e p_{we} log(p_{we}/p_w), |w| = n-1, written to `terms`.
void conditional_entropy_terms(std::span<const double> parent, std::span<const double> child,
                               std::span<double> terms);

/// Fixed-order sum of `terms`.
double ordered_sum(std::span<const double> terms);

/// Number of j in [0, horizon) with x_{j+1}..x_{j+|w|} = w (windows past the end miss).
std::uint64_t count_occurrences(std::span<const std::uint8_t> bits, const Word& w, std::uint64_t horizon);

/// Occurrence counts of every length-n factor observed across all samples, as a
/// list of positive counts in descending order (words themselves are not needed
/// by the estimators).
std::vector<std::uint64_t> factor_counts(std::span<const OrbitSample> samples, int n);

/// Conditional next-symbol probabilities of a table, used to draw orbits.
class OrbitSampler {
 public:
  /// `levels[k]` is the float level k of a valid table, k = 0..depth.
  explicit OrbitSampler(const std::vector<std::vector<double>>& levels);

  OrbitSample draw(std::size_t length, std::uint64_t seed) const;

  int depth() const { return depth_; }

 private:
  int depth_;
  // cond_[k][w] = P(next = 0 | last k symbols = w), k = 0..depth-1.
  std::vector<std::vector<double>> cond_;
};

/// `count` orbits with per-sample seeds seed ^ i.
std::vector<OrbitSample> sample_batch(const OrbitSampler& sampler, std::size_t length, std::size_t count,
                                      std::uint64_t seed);

extern template void markov_level<Rational>(std::span<const Rational>, std::span<const Rational>,
                                            std::span<const Rational>, int, std::span<Rational>);
extern template void markov_level<double>(std::span<const double>, std::span<const double>,
                                          std::span<const double>, int, std::span<double>);
extern template void cross_ratio_level<Rational>(std::span<const Rational>, std::span<const Rational>,
                                                 std::span<Rational>);
extern template void cross_ratio_level<double>(std::span<const double>, std::span<const double>,
                                               std::span<double>);

}  // namespace shiftmeasure::kernels
