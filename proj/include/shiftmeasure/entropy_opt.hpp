#pragma once

// Maximizes the conditional entropy h^(n) over depth-n invariant cylinder
// tables subject to interval constraints on cylinder frequencies.

#include <optional>
#include <string>
#include <vector>

#include "shiftmeasure/cylinder_table.hpp"
#include "shiftmeasure/word.hpp"
#include "shiftmeasure/zero_block.hpp"

namespace shiftmeasure::opt {

struct FrequencyConstraint {
  Word word;
  double lo;
  double hi;
};

/// Interval constraints lo <= mu([w]) <= hi; equality when lo == hi.
class ConstraintSet {
 public:
  ConstraintSet() = default;

  /// Throws std::invalid_argument on a duplicate word or bounds outside
  /// 0 <= lo <= hi <= 1.
  ConstraintSet& add(const Word& word, double lo, double hi);
  ConstraintSet& equal(const Word& word, double value) { return add(word, value, value); }

  const std::vector<FrequencyConstraint>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  int max_word_length() const;

  /// Every word and bound with 0 <-> 1 exchanged in the words.
  ConstraintSet flipped() const;

 private:
  std::vector<FrequencyConstraint> entries_;
};

/// JSON list of { "word": "010", "lo": "1/8", "hi": "1/8" }; bounds may be
/// rational strings or numbers.
ConstraintSet constraints_from_json(const std::string& text);
ConstraintSet read_constraints_file(const std::string& path);

struct SolveOptions {
  int max_iterations = 100000;
  double kkt_tolerance = 1e-9;
  /// Values below this are set to exact zero in the returned table.
  double polish_threshold = 1e-14;
};

enum class SolveStatus { optimal, infeasible, max_iter };

std::string to_string(SolveStatus status);

/// Farkas certificate for an empty constraint polytope: multipliers y over the
/// assembled linear rows (labels name each row) with A^T y <= 0 and b^T y > 0.
struct InfeasibilityCertificate {
  std::vector<std::string> row_labels;
  std::vector<double> multipliers;
  double separation = 0.0;  // b^T y
};

struct OptimizationResult {
  std::optional<FloatTable> table;  // absent when infeasible
  double objective = 0.0;           // h^(n) of the table, nats
  double kkt_residual = 0.0;
  SolveStatus status = SolveStatus::max_iter;
  int iterations = 0;
  std::optional<InfeasibilityCertificate> certificate;

  std::string summary() const;  // "objective=<v> kkt=<r> status=<s>"
};

struct CellOptimum {
  double t, u, v, w;
};

/// Maximizer of h(t)+h(u)+h(v)+h(w) on t+v=a, u+w=b, t+u=c:
/// t = ac/(a+b), u = bc/(a+b), v = a(a+b-c)/(a+b), w = b(a+b-c)/(a+b).
CellOptimum cell_maximize(double a, double b, double c);

/// Maximizes h^(depth) over top-level cylinder masses subject to normalization,
/// shift invariance and the constraints.
OptimizationResult solve(int depth, const ConstraintSet& constraints, const SolveOptions& options = {});

/// Largest violation of the constraint bounds by a table's marginals.
double constraint_violation(const FloatTable& table, const ConstraintSet& constraints);

struct ComparisonReport {
  SolveStatus status = SolveStatus::max_iter;
  double max_cylinder_deviation = 0.0;
  double objective_deviation = 0.0;
  double optimizer_objective = 0.0;
  double closed_form_objective = 0.0;  // h^(depth) of the closed-form table
  double kkt_residual = 0.0;
};

/// Solves with mu([0^k]) = a_k, k = 1..depth, and measures the distance to the
/// closed-form maximal-entropy table at the same depth.
ComparisonReport compare_with_closed_form(const zero_block::FrequencySpec& spec, int depth,
                                          const SolveOptions& options = {});

}  // namespace shiftmeasure::opt
