#include "shiftmeasure/cylinder_table.hpp"

#include <cmath>

namespace shiftmeasure {

std::string to_string(ArithmeticMode mode) { return mode == ArithmeticMode::exact ? "exact" : "float"; }

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::normalization: return "normalization";
    case ViolationKind::consistency: return "consistency";
    case ViolationKind::invariance: return "invariance";
    case ViolationKind::range: return "range";
  }
  return "unknown";
}

template <class Scalar>
BasicCylinderTable<Scalar>::BasicCylinderTable(int depth) {
  if (depth < 0 || depth > max_depth) throw StructuralError("table depth out of range: " + std::to_string(depth));
  levels_.resize(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) levels_[static_cast<std::size_t>(n)].assign(std::size_t{1} << n, Scalar(0));
  levels_[0][0] = Scalar(1);
}

template <class Scalar>
BasicCylinderTable<Scalar> BasicCylinderTable<Scalar>::from_levels(std::vector<std::vector<Scalar>> levels) {
  if (levels.empty()) throw StructuralError("table has no levels");
  if (levels.size() > static_cast<std::size_t>(max_depth) + 1) throw StructuralError("table depth out of range");
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (levels[n].size() != (std::size_t{1} << n))
      throw StructuralError("level " + std::to_string(n) + " has " + std::to_string(levels[n].size()) +
                            " entries, expected " + std::to_string(std::size_t{1} << n));
  }
  if constexpr (std::is_same_v<Scalar, Rational>)
    for (auto& level : levels)
      for (auto& p : level) p.canonicalize();
  BasicCylinderTable table;
  table.levels_ = std::move(levels);
  return table;
}

template <class Scalar>
const Scalar& BasicCylinderTable<Scalar>::at(const Word& w) const {
  if (w.length() > depth()) throw std::out_of_range("word '" + w.str() + "' deeper than table");
  return (*this)[w];
}

template <class Scalar>
BasicCylinderTable<Scalar> BasicCylinderTable<Scalar>::truncated(int new_depth) const {
  if (new_depth < 0 || new_depth > depth()) throw std::out_of_range("truncation depth out of range");
  BasicCylinderTable out;
  out.levels_.assign(levels_.begin(), levels_.begin() + new_depth + 1);
  return out;
}

template <class Scalar>
void BasicCylinderTable<Scalar>::recompute_marginals() {
  for (int n = depth() - 1; n >= 0; --n) {
    auto& parent = levels_[static_cast<std::size_t>(n)];
    const auto& child = levels_[static_cast<std::size_t>(n) + 1];
    for (std::size_t w = 0; w < parent.size(); ++w) parent[w] = child[2 * w] + child[2 * w + 1];
  }
}

FloatTable to_float(const ExactTable& table) {
  std::vector<std::vector<double>> levels(static_cast<std::size_t>(table.depth()) + 1);
  for (int n = 0; n <= table.depth(); ++n) {
    for (const auto& p : table.level(n)) levels[static_cast<std::size_t>(n)].push_back(p.get_d());
  }
  return FloatTable::from_levels(std::move(levels));
}

namespace {

template <class Scalar>
Scalar abs_value(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, double>)
    return std::fabs(x);
  else
    return abs(x);
}

template <class Scalar>
Scalar tolerance_as(double tolerance) {
  if constexpr (std::is_same_v<Scalar, double>)
    return tolerance;
  else
    return exact_rational(tolerance);
}

}  // namespace

template <class Scalar>
ValidationReport validate(const BasicCylinderTable<Scalar>& table, double tolerance) {
  ValidationReport report;
  const Scalar tol = tolerance_as<Scalar>(tolerance);
  auto record = [&](ViolationKind kind, Word w, const Scalar& residual) {
    const double r = to_double(residual);
    report.violations.push_back({kind, w, r});
    report.max_residual = std::max(report.max_residual, std::fabs(r));
  };
  auto check = [&](ViolationKind kind, Word w, const Scalar& residual) {
    const Scalar mag = abs_value(residual);
    if (mag > tol) record(kind, w, residual);
    else report.max_residual = std::max(report.max_residual, std::fabs(to_double(residual)));
  };

  check(ViolationKind::normalization, Word(), Scalar(table.level(0)[0] - Scalar(1)));
  for (int n = 0; n <= table.depth(); ++n) {
    const auto level = table.level(n);
    for (std::size_t w = 0; w < level.size(); ++w) {
      const Scalar& p = level[w];
      if (p < -tol) record(ViolationKind::range, Word(w, n), p);
      else if (p > Scalar(1) + tol) record(ViolationKind::range, Word(w, n), Scalar(p - Scalar(1)));
    }
  }
  for (int n = 0; n < table.depth(); ++n) {
    const auto parent = table.level(n);
    const auto child = table.level(n + 1);
    const std::size_t half = parent.size();
    for (std::size_t w = 0; w < parent.size(); ++w) {
      check(ViolationKind::consistency, Word(w, n), Scalar(child[2 * w] + child[2 * w + 1] - parent[w]));
      // 0w has index w, 1w has index w + 2^n at level n+1.
      check(ViolationKind::invariance, Word(w, n), Scalar(child[w] + child[w + half] - parent[w]));
    }
  }
  return report;
}

ValidationReport validate(const CylinderTable& table, double tolerance) {
  return std::visit([&](const auto& t) { return validate(t, tolerance); }, table);
}

template class BasicCylinderTable<Rational>;
template class BasicCylinderTable<double>;
template ValidationReport validate(const BasicCylinderTable<Rational>&, double);
template ValidationReport validate(const BasicCylinderTable<double>&, double);

}  // namespace shiftmeasure
