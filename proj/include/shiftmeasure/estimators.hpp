#pragma once

// Entropy estimates from sampled orbits, in nats.

#include <vector>

#include "shiftmeasure/orbit.hpp"

namespace shiftmeasure::est {

/// (1/n) log(number of distinct length-n factors across all samples).
double word_count_entropy(const std::vector<OrbitSample>& samples, int n);

/// (1/n) log r, r the fewest n-cylinders whose empirical mass reaches 1 - delta.
/// Needs 0 < delta < 1.
double katok_entropy(const std::vector<OrbitSample>& samples, int n, double delta);

}  // namespace shiftmeasure::est
