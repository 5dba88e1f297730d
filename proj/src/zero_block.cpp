#include "shiftmeasure/zero_block.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <set>

#include "shiftmeasure/kernels.hpp"

namespace shiftmeasure::zero_block {

std::string to_string(TailPolicy policy) { return policy == TailPolicy::constant ? "constant" : "affine"; }

TailPolicy parse_tail_policy(const std::string& text) {
  if (text == "constant") return TailPolicy::constant;
  if (text == "affine" || text == "affine-clipped") return TailPolicy::affine_clipped;
  throw std::invalid_argument("unknown tail policy '" + text + "'");
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::normalization: return "normalization";
    case ViolationKind::range: return "range";
    case ViolationKind::monotonicity: return "monotonicity";
    case ViolationKind::second_difference: return "second-difference";
  }
  return "unknown";
}

FrequencySpec::FrequencySpec(std::vector<Rational> prefix, TailPolicy tail)
    : prefix_(std::move(prefix)), tail_(tail) {
  if (prefix_.empty()) throw std::invalid_argument("frequency spec needs at least a_1");
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    prefix_[i].canonicalize();
    if (prefix_[i] < 0 || prefix_[i] > 1)
      throw std::invalid_argument(fmt::format("a_{} = {} outside [0,1]", i + 1, prefix_[i].get_str()));
  }
}

FrequencySpec FrequencySpec::geometric(const Rational& ratio, int terms, TailPolicy tail) {
  if (terms < 1) throw std::invalid_argument("geometric spec needs at least one term");
  std::vector<Rational> prefix;
  Rational a = 1;
  for (int k = 1; k <= terms; ++k) {
    a *= ratio;
    prefix.push_back(a);
  }
  return FrequencySpec(std::move(prefix), tail);
}

Rational FrequencySpec::value(std::int64_t k) const {
  if (k < 0) throw std::out_of_range("negative index");
  const auto m = static_cast<std::int64_t>(prefix_.size());
  if (k == 0) return 1;
  if (k <= m) return prefix_[static_cast<std::size_t>(k - 1)];
  const Rational& last = prefix_.back();
  if (tail_ == TailPolicy::constant) return last;
  const Rational step = (m >= 2 ? prefix_[static_cast<std::size_t>(m - 2)] : Rational(1)) - last;
  Rational v = last - Rational(k - m) * step;
  return v > 0 ? v : Rational(0);
}

std::vector<Rational> extend_spec(const FrequencySpec& spec, int upto) {
  if (upto < spec.prefix_length())
    throw std::invalid_argument(fmt::format("cannot extend to {} below the prefix length {}", upto,
                                            spec.prefix_length()));
  std::vector<Rational> a;
  a.reserve(static_cast<std::size_t>(upto) + 1);
  for (int k = 0; k <= upto; ++k) a.push_back(spec.value(k));
  return a;
}

namespace {

Rational second_difference(const FrequencySpec& spec, std::int64_t j) {
  return spec.value(j) - 2 * spec.value(j + 1) + spec.value(j + 2);
}

}  // namespace

SecondDifferences second_differences(const FrequencySpec& spec, int upto) {
  SecondDifferences d;
  for (int j = 0; j <= upto; ++j) d.values.push_back(second_difference(spec, j));
  return d;
}

std::vector<std::pair<std::int64_t, Rational>> nonzero_second_differences(const FrequencySpec& spec) {
  const std::int64_t m = spec.prefix_length();
  std::set<std::int64_t> candidates;
  for (std::int64_t j = 0; j < m; ++j) candidates.insert(j);
  if (spec.tail() == TailPolicy::affine_clipped) {
    const Rational& last = spec.prefix().back();
    const Rational step = spec.value(m - 1) - last;
    if (step > 0 && last > 0) {
      // a_{m+j} hits zero first at j* = ceil(a_m / step); the kink sits at m+j*-2, m+j*-1.
      const Rational ratio = last / step;
      mpz_class jstar;
      mpz_cdiv_q(jstar.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
      if (!jstar.fits_slong_p()) throw std::overflow_error("affine tail too long to index");
      const std::int64_t kink = m + jstar.get_si();
      candidates.insert(kink - 2);
      candidates.insert(kink - 1);
    }
  }
  std::vector<std::pair<std::int64_t, Rational>> out;
  for (std::int64_t j : candidates) {
    if (j < 0) continue;
    Rational d = second_difference(spec, j);
    if (d != 0) out.emplace_back(j, std::move(d));
  }
  return out;
}

std::string FeasibilityReport::describe() const {
  if (feasible) return "feasible";
  const auto& v = *violation;
  switch (v.kind) {
    case ViolationKind::second_difference:
      return fmt::format("infeasible at j={}, d={:.12g}", v.index, v.value.get_d());
    case ViolationKind::monotonicity:
      return fmt::format("infeasible at j={}, a_j-a_(j+1)={:.12g} (monotonicity)", v.index, v.value.get_d());
    case ViolationKind::normalization:
      return fmt::format("infeasible: a_0-1={:.12g} (normalization)", v.value.get_d());
    case ViolationKind::range:
      return fmt::format("infeasible at k={}, a_k={:.12g} outside [0,1]", v.index, v.value.get_d());
  }
  return "infeasible";
}

FeasibilityReport check_sequence(std::span<const Rational> a) {
  FeasibilityReport report;
  report.checked_upto = static_cast<int>(a.size()) - 1;
  auto fail = [&](ViolationKind kind, int index, Rational value, Rational amount) {
    report.feasible = false;
    report.violation = FeasibilityViolation{kind, index, std::move(value), std::move(amount)};
    return report;
  };
  if (a.empty()) return report;
  if (a[0] != 1) return fail(ViolationKind::normalization, 0, a[0] - 1, abs(a[0] - 1));
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < 0) return fail(ViolationKind::range, static_cast<int>(k), a[k], -a[k]);
    if (a[k] > 1) return fail(ViolationKind::range, static_cast<int>(k), a[k], a[k] - 1);
  }
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    Rational drop = a[j] - a[j + 1];
    if (drop < 0) return fail(ViolationKind::monotonicity, static_cast<int>(j), drop, -drop);
    if (j + 2 < a.size()) {
      Rational d = a[j] - 2 * a[j + 1] + a[j + 2];
      if (d < 0) return fail(ViolationKind::second_difference, static_cast<int>(j), d, -d);
    }
  }
  return report;
}

FeasibilityReport check_feasible(const FrequencySpec& spec, int upto) {
  if (upto < 0) throw std::invalid_argument("feasibility check index must be >= 0");
  std::vector<Rational> a;
  for (int k = 0; k <= upto; ++k) a.push_back(spec.value(k));
  return check_sequence(a);
}

FeasibilityReport check_feasible(const FrequencySpec& spec) {
  // Both tails keep d_j >= 0 and monotonicity once the prefix and its junction pass.
  return check_feasible(spec, spec.prefix_length() + 2);
}

InfeasibleSpec::InfeasibleSpec(FeasibilityReport report)
    : std::invalid_argument(report.describe()), report_(std::move(report)) {}

std::array<Rational, 4> boundary_values(std::span<const Rational> a, int n) {
  if (n < 0 || static_cast<std::size_t>(n) + 3 > a.size())
    throw std::out_of_range(fmt::format("boundary values at n={} need a_0..a_{}", n, n + 2));
  auto report = check_sequence(a.first(static_cast<std::size_t>(n) + 3));
  if (!report.feasible) throw InfeasibleSpec(std::move(report));
  const auto i = static_cast<std::size_t>(n);
  Rational cross = a[i + 1] - a[i + 2];
  return {a[i + 2], cross, cross, a[i] - 2 * a[i + 1] + a[i + 2]};
}

namespace {

template <class Scalar>
Scalar convert(const Rational& x) {
  if constexpr (std::is_same_v<Scalar, double>)
    return x.get_d();
  else
    return x;
}

}  // namespace

template <class Scalar>
BasicCylinderTable<Scalar> build_max_entropy_table(const FrequencySpec& spec, int depth) {
  if (depth < 1) throw std::invalid_argument("table depth must be >= 1");
  const std::vector<Rational> a = extend_spec(spec, std::max(depth, spec.prefix_length()));
  auto report = check_sequence(std::span<const Rational>(a).first(static_cast<std::size_t>(depth) + 1));
  if (!report.feasible) throw InfeasibleSpec(std::move(report));

  BasicCylinderTable<Scalar> table(depth);
  table.level(1)[0] = convert<Scalar>(a[1]);
  table.level(1)[1] = convert<Scalar>(1 - a[1]);
  for (int n = 0; n + 2 <= depth; ++n) {
    const auto boundary = boundary_values(a, n);
    auto out = table.level(n + 2);
    // 0 0^n 0, 0 0^n 1, 1 0^n 0, 1 0^n 1 sit at indices 0, 1, 2^(n+1), 2^(n+1)+1.
    const std::size_t high = std::size_t{1} << (n + 1);
    out[0] = convert<Scalar>(boundary[0]);
    out[1] = convert<Scalar>(boundary[1]);
    out[high] = convert<Scalar>(boundary[2]);
    out[high + 1] = convert<Scalar>(boundary[3]);
    kernels::cross_ratio_level<Scalar>(table.level(n + 1), table.level(n), out);
  }
  return table;
}

double entropy_term(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

ClosedFormEntropy entropy_closed_form(const FrequencySpec& spec, std::int64_t truncation, LogBase base) {
  auto report = check_feasible(spec);
  if (!report.feasible) throw InfeasibleSpec(std::move(report));
  ClosedFormEntropy out;
  double kept = -entropy_term(Rational(1 - spec.value(1)).get_d());
  double dropped = 0.0;
  for (const auto& [j, d] : nonzero_second_differences(spec)) {
    out.last_nonzero = j;
    if (j <= truncation)
      kept += entropy_term(d.get_d());
    else
      dropped += entropy_term(d.get_d());
  }
  out.exact = out.last_nonzero <= truncation;
  const double scale = base == LogBase::bits ? 1.0 / std::numbers::ln2 : 1.0;
  out.value = kept * scale;
  out.omitted = dropped * scale;
  return out;
}

ClosedFormEntropy entropy_closed_form(const FrequencySpec& spec, LogBase base) {
  return entropy_closed_form(spec, std::numeric_limits<std::int64_t>::max(), base);
}

std::vector<double> telescoping_increments(const FrequencySpec& spec, int upto) {
  auto report = check_feasible(spec);
  if (!report.feasible) throw InfeasibleSpec(std::move(report));
  auto h = [](const Rational& x) { return entropy_term(x.get_d()); };
  std::vector<double> phi;
  for (int n = 1; n <= upto; ++n) {
    const Rational a0 = spec.value(n), a1 = spec.value(n + 1), a2 = spec.value(n + 2);
    phi.push_back((h(a2) - 2 * h(a1) + h(a0)) + 2 * (h(a1 - a2) - h(a0 - a1)) + h(a0 - 2 * a1 + a2));
  }
  return phi;
}

double second_order_entropy(const FrequencySpec& spec) {
  auto h = [](const Rational& x) { return entropy_term(x.get_d()); };
  const Rational a1 = spec.value(1), a2 = spec.value(2);
  return h(a2) + 2 * h(a1 - a2) - h(a1) - h(1 - a1) + h(1 - 2 * a1 + a2);
}

template BasicCylinderTable<Rational> build_max_entropy_table<Rational>(const FrequencySpec&, int);
template BasicCylinderTable<double> build_max_entropy_table<double>(const FrequencySpec&, int);

}  // namespace shiftmeasure::zero_block
