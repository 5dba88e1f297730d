#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "shiftmeasure/rational.hpp"
#include "shiftmeasure/word.hpp"

namespace shiftmeasure {

enum class ArithmeticMode { exact, floating };

std::string to_string(ArithmeticMode mode);

/// Thrown when a table is missing words or levels; distinct from numerical
/// violations of the measure laws, which `validate` reports.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr ArithmeticMode mode = ArithmeticMode::exact;
};

template <>
struct ScalarTraits<double> {
  static constexpr ArithmeticMode mode = ArithmeticMode::floating;
};

/// Cylinder probabilities p_w for every word of length 0..depth. Level n is
/// stored in lexicographic word order, so `level(n)[w.bits()]` is p_w.
template <class Scalar>
class BasicCylinderTable {
 public:
  static constexpr ArithmeticMode mode = ScalarTraits<Scalar>::mode;
  static constexpr int max_depth = 26;

  /// All-zero table except p_empty = 1.
  explicit BasicCylinderTable(int depth);

  /// Takes ownership of explicit levels. Throws StructuralError unless there are
  /// depth+1 levels and level n holds exactly 2^n values.
  static BasicCylinderTable from_levels(std::vector<std::vector<Scalar>> levels);

  int depth() const { return static_cast<int>(levels_.size()) - 1; }

  std::span<const Scalar> level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
  std::span<Scalar> level(int n) { return levels_.at(static_cast<std::size_t>(n)); }

  const Scalar& operator[](const Word& w) const { return levels_[static_cast<std::size_t>(w.length())][w.bits()]; }
  Scalar& operator[](const Word& w) { return levels_[static_cast<std::size_t>(w.length())][w.bits()]; }
  const Scalar& at(const Word& w) const;

  /// The same measure restricted to words of length <= depth.
  BasicCylinderTable truncated(int depth) const;

  /// Fills levels 0..depth-1 as prefix marginals of the top level.
  void recompute_marginals();

  friend bool operator==(const BasicCylinderTable&, const BasicCylinderTable&) = default;

 private:
  BasicCylinderTable() = default;
  std::vector<std::vector<Scalar>> levels_;
};

using ExactTable = BasicCylinderTable<Rational>;
using FloatTable = BasicCylinderTable<double>;

/// A table whose arithmetic mode is only known at run time (e.g. read from disk).
using CylinderTable = std::variant<ExactTable, FloatTable>;

FloatTable to_float(const ExactTable& table);

enum class ViolationKind { normalization, consistency, invariance, range };

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  Word word;        // the parent word w of the violated equation (or the offending cylinder for range)
  double residual;  // signed: lhs - rhs for equations, distance outside [0,1] for range
};

struct ValidationReport {
  std::vector<Violation> violations;
  double max_residual = 0.0;
  bool passed() const { return violations.empty(); }
};

/// Checks p_empty = 1, p_w0 + p_w1 = p_w, p_0w + p_1w = p_w and 0 <= p_w <= 1.
/// Exact tables compare residuals exactly; pass tolerance 0 to demand identities.
template <class Scalar>
ValidationReport validate(const BasicCylinderTable<Scalar>& table, double tolerance);

ValidationReport validate(const CylinderTable& table, double tolerance);

extern template class BasicCylinderTable<Rational>;
extern template class BasicCylinderTable<double>;

}  // namespace shiftmeasure
