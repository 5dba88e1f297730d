#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shiftmeasure/cylinder_table.hpp"
#include "shiftmeasure/orbit.hpp"

namespace shiftmeasure {

/// Thrown when an operation needs a valid invariant measure and gets something else.
class InvalidTable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Markov measure of order k, determined by its (k+1)-cylinder values.
template <class Scalar>
class MarkovMeasure {
 public:
  MarkovMeasure(int order, BasicCylinderTable<Scalar> table);

  int order() const { return order_; }
  const BasicCylinderTable<Scalar>& table() const { return table_; }

 private:
  int order_;
  BasicCylinderTable<Scalar> table_;
};

/// Extends a Markov measure to all words of length <= target_depth:
/// p_{x1..xn} = p_{x1..x(n-1)} p_{x(n-k)..xn} / p_{x(n-k)..x(n-1)}, with 0 when
/// the conditioning cylinder is null.
template <class Scalar>
BasicCylinderTable<Scalar> markov_extend(const MarkovMeasure<Scalar>& measure, int target_depth);

/// h^(n) = sum_{|w|=n-1} sum_e -p_{we} log(p_{we}/p_w) in nats, for 2 <= n <= depth.
/// Null cylinders contribute nothing.
template <class Scalar>
double conditional_entropy(const BasicCylinderTable<Scalar>& table, int n);

/// (n, h^(n)) for n = 2..depth.
template <class Scalar>
std::vector<std::pair<int, double>> entropy_ladder(const BasicCylinderTable<Scalar>& table);

/// Default tolerance used to accept float tables before sampling.
inline constexpr double sampling_tolerance = 1e-9;

/// Draws x_1..x_L by successive conditionals p_{we}/p_w; beyond the table depth
/// N the order-(N-1) Markov extension is used. Deterministic in (table, seed).
/// Throws InvalidTable if the table fails validation.
template <class Scalar>
OrbitSample sample_orbit(const BasicCylinderTable<Scalar>& table, std::size_t length, std::uint64_t seed);

/// `count` independent orbits, sample i drawn with seed ^ i.
template <class Scalar>
std::vector<OrbitSample> sample_orbits(const BasicCylinderTable<Scalar>& table, std::size_t length,
                                       std::size_t count, std::uint64_t seed);

}  // namespace shiftmeasure
