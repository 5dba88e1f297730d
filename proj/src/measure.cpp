#include "shiftmeasure/measure.hpp"

#include <fmt/format.h>

#include "shiftmeasure/kernels.hpp"

namespace shiftmeasure {

template <class Scalar>
MarkovMeasure<Scalar>::MarkovMeasure(int order, BasicCylinderTable<Scalar> table)
    : order_(order), table_(std::move(table)) {
  if (order < 0) throw std::invalid_argument("Markov order must be >= 0");
  if (table_.depth() != order + 1)
    throw StructuralError(fmt::format("order-{} Markov measure needs a depth-{} table, got depth {}", order,
                                      order + 1, table_.depth()));
}

template <class Scalar>
BasicCylinderTable<Scalar> markov_extend(const MarkovMeasure<Scalar>& measure, int target_depth) {
  const int k = measure.order();
  if (target_depth < k + 1)
    throw std::invalid_argument(fmt::format("target depth {} below order + 1 = {}", target_depth, k + 1));
  const auto& base = measure.table();
  BasicCylinderTable<Scalar> out(target_depth);
  for (int n = 0; n <= k + 1; ++n) std::ranges::copy(base.level(n), out.level(n).begin());
  for (int n = k + 2; n <= target_depth; ++n) {
    kernels::markov_level<Scalar>(out.level(n - 1), base.level(k + 1), base.level(k), k, out.level(n));
  }
  return out;
}

namespace {

std::vector<double> as_doubles(std::span<const double> level) { return {level.begin(), level.end()}; }

std::vector<double> as_doubles(std::span<const Rational> level) {
  std::vector<double> out(level.size());
  for (std::size_t i = 0; i < level.size(); ++i) out[i] = level[i].get_d();
  return out;
}

}  // namespace

template <class Scalar>
double conditional_entropy(const BasicCylinderTable<Scalar>& table, int n) {
  if (n < 2 || n > table.depth())
    throw std::out_of_range(fmt::format("conditional entropy order {} outside 2..{}", n, table.depth()));
  const std::vector<double> parent = as_doubles(table.level(n - 1));
  const std::vector<double> child = as_doubles(table.level(n));
  std::vector<double> terms(parent.size());
  kernels::conditional_entropy_terms(parent, child, terms);
  return kernels::ordered_sum(terms);
}

template <class Scalar>
std::vector<std::pair<int, double>> entropy_ladder(const BasicCylinderTable<Scalar>& table) {
  if (table.depth() < 2) throw std::invalid_argument("entropy ladder needs depth >= 2");
  std::vector<std::pair<int, double>> ladder;
  for (int n = 2; n <= table.depth(); ++n) ladder.emplace_back(n, conditional_entropy(table, n));
  return ladder;
}

namespace {

template <class Scalar>
kernels::OrbitSampler make_sampler(const BasicCylinderTable<Scalar>& table) {
  if (table.depth() < 1) throw InvalidTable("sampling needs a table of depth >= 1");
  const double tolerance = table.mode == ArithmeticMode::exact ? 0.0 : sampling_tolerance;
  const auto report = validate(table, tolerance);
  if (!report.passed())
    throw InvalidTable(fmt::format("cannot sample from an invalid table: {} violation(s), first {} at '{}'",
                                   report.violations.size(), to_string(report.violations.front().kind),
                                   report.violations.front().word.str()));
  std::vector<std::vector<double>> levels;
  for (int n = 0; n <= table.depth(); ++n) levels.push_back(as_doubles(table.level(n)));
  return kernels::OrbitSampler(levels);
}

template <class Scalar>
std::string describe(const BasicCylinderTable<Scalar>& table) {
  return fmt::format("{} table depth {} (order-{} Markov beyond)", to_string(table.mode), table.depth(),
                     table.depth() - 1);
}

}  // namespace

template <class Scalar>
OrbitSample sample_orbit(const BasicCylinderTable<Scalar>& table, std::size_t length, std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("sample length must be >= 1");
  auto sample = make_sampler(table).draw(length, seed);
  sample.source = describe(table);
  return sample;
}

template <class Scalar>
std::vector<OrbitSample> sample_orbits(const BasicCylinderTable<Scalar>& table, std::size_t length,
                                       std::size_t count, std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("sample length must be >= 1");
  auto samples = kernels::sample_batch(make_sampler(table), length, count, seed);
  const std::string source = describe(table);
  for (auto& s : samples) s.source = source;
  return samples;
}

template class MarkovMeasure<Rational>;
template class MarkovMeasure<double>;
template BasicCylinderTable<Rational> markov_extend(const MarkovMeasure<Rational>&, int);
template BasicCylinderTable<double> markov_extend(const MarkovMeasure<double>&, int);
template double conditional_entropy(const BasicCylinderTable<Rational>&, int);
template double conditional_entropy(const BasicCylinderTable<double>&, int);
template std::vector<std::pair<int, double>> entropy_ladder(const BasicCylinderTable<Rational>&);
template std::vector<std::pair<int, double>> entropy_ladder(const BasicCylinderTable<double>&);
template OrbitSample sample_orbit(const BasicCylinderTable<Rational>&, std::size_t, std::uint64_t);
template OrbitSample sample_orbit(const BasicCylinderTable<double>&, std::size_t, std::uint64_t);
template std::vector<OrbitSample> sample_orbits(const BasicCylinderTable<Rational>&, std::size_t, std::size_t,
                                                std::uint64_t);
template std::vector<OrbitSample> sample_orbits(const BasicCylinderTable<double>&, std::size_t, std::size_t,
                                                std::uint64_t);

}  // namespace shiftmeasure
