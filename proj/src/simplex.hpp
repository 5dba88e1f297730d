#pragma once

// Dense two-phase simplex over { z : A z = b, z >= 0 }, Bland's rule. Only used
// for the feasibility stage of the entropy optimizer, where problems have at
// most a few thousand columns.

#include <Eigen/Dense>

#include <vector>

namespace shiftmeasure::opt::detail {

class Simplex {
 public:
  /// Runs phase 1. `tolerance` is the pivot/feasibility threshold.
  Simplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tolerance = 1e-10);

  bool feasible() const { return feasible_; }

  /// Minimum total artificial mass found by phase 1 (0 when feasible).
  double infeasibility() const { return infeasibility_; }

  /// When infeasible: y with A^T y <= 0 componentwise and b^T y > 0.
  const Eigen::VectorXd& farkas() const { return farkas_; }

  /// Current basic feasible point, re-solved against the original rows.
  Eigen::VectorXd point() const;

  /// Phase 2 from the current basis; returns false if unbounded.
  bool minimize(const Eigen::VectorXd& cost);

 private:
  void pivot(int row, int col);
  bool iterate(int columns);  // Bland iterations on the objective row; false if unbounded

  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  double tol_;
  int m_ = 0;  // rows still in the tableau
  int n_ = 0;  // structural columns
  Eigen::MatrixXd tableau_;  // m_ constraint rows + objective row; last column is the rhs
  std::vector<int> basis_;
  std::vector<int> rows_;  // original row index of each tableau row
  bool feasible_ = false;
  double infeasibility_ = 0.0;
  Eigen::VectorXd farkas_;
};

}  // namespace shiftmeasure::opt::detail
