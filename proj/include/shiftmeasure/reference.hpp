#pragma once

// Straightforward serial implementations of the kernels in kernels.hpp, written
// against Word/string operations rather than index arithmetic. Used by the
// tests as the oracle for the parallel kernels and by the benchmark as the
// baseline.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "shiftmeasure/cylinder_table.hpp"
#include "shiftmeasure/orbit.hpp"

namespace shiftmeasure::reference {

template <class Scalar>
BasicCylinderTable<Scalar> markov_extend(const BasicCylinderTable<Scalar>& base, int order, int target_depth);

/// Levels 2.. of a zero-block table given level 0..1 and the boundary values
/// `boundary[n]` = (p_{0 0^n 0}, p_{0 0^n 1}, p_{1 0^n 0}, p_{1 0^n 1}).
template <class Scalar>
void fill_cross_ratio(BasicCylinderTable<Scalar>& table, const std::vector<std::array<Scalar, 4>>& boundary);

double conditional_entropy(const FloatTable& table, int n);

std::uint64_t count_occurrences(const OrbitSample& x, const Word& w, std::uint64_t horizon);

/// Descending positive counts of length-n factors over all samples.
std::vector<std::uint64_t> factor_counts(std::span<const OrbitSample> samples, int n);

}  // namespace shiftmeasure::reference
