#include "simplex.hpp"

#include <cmath>
#include <limits>

namespace shiftmeasure::opt::detail {

Simplex::Simplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tolerance)
    : A_(A), b_(b), tol_(tolerance), m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())) {
  const int m = m_, n = n_;
  Eigen::VectorXd sign(m);
  tableau_ = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  for (int i = 0; i < m; ++i) {
    sign(i) = b(i) < 0 ? -1.0 : 1.0;
    tableau_.row(i).head(n) = sign(i) * A.row(i);
    tableau_(i, n + i) = 1.0;
    tableau_(i, n + m) = sign(i) * b(i);
  }
  for (int j = 0; j < n; ++j) tableau_(m, j) = -tableau_.col(j).head(m).sum();
  tableau_(m, n + m) = -tableau_.col(n + m).head(m).sum();
  basis_.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) basis_[static_cast<std::size_t>(i)] = n + i;

  iterate(n + m);
  infeasibility_ = -tableau_(m, n + m);
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  feasible_ = infeasibility_ <= 1e-9 * scale;
  if (!feasible_) {
    farkas_.resize(m);
    for (int i = 0; i < m; ++i) farkas_(i) = sign(i) * (1.0 - tableau_(m, n + i));
    return;
  }
  infeasibility_ = 0.0;

  // Pivot artificials out of the basis; rows where that is impossible are redundant.
  std::vector<int> keep;
  for (int i = 0; i < m; ++i) {
    if (basis_[static_cast<std::size_t>(i)] >= n) {
      int col = -1;
      double best = tol_;
      for (int j = 0; j < n; ++j) {
        if (std::fabs(tableau_(i, j)) > best) {
          best = std::fabs(tableau_(i, j));
          col = j;
        }
      }
      if (col < 0) continue;
      pivot(i, col);
    }
    keep.push_back(i);
  }
  Eigen::MatrixXd reduced = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(keep.size()) + 1, n + 1);
  std::vector<int> basis;
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const int i = keep[r];
    reduced.row(static_cast<Eigen::Index>(r)).head(n) = tableau_.row(i).head(n);
    reduced(static_cast<Eigen::Index>(r), n) = tableau_(i, n + m);
    basis.push_back(basis_[static_cast<std::size_t>(i)]);
    rows_.push_back(i);
  }
  tableau_ = std::move(reduced);
  basis_ = std::move(basis);
  m_ = static_cast<int>(keep.size());
}

void Simplex::pivot(int row, int col) {
  const Eigen::Index last = tableau_.cols();
  tableau_.row(row) /= tableau_(row, col);
  for (Eigen::Index i = 0; i < tableau_.rows(); ++i) {
    if (i == row) continue;
    const double factor = tableau_(i, col);
    if (factor != 0.0) tableau_.row(i).head(last) -= factor * tableau_.row(row);
  }
  basis_[static_cast<std::size_t>(row)] = col;
}

bool Simplex::iterate(int columns) {
  const int m = m_;
  const Eigen::Index rhs = tableau_.cols() - 1;
  for (;;) {
    int enter = -1;
    for (int j = 0; j < columns; ++j) {
      if (tableau_(m, j) < -tol_) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double a = tableau_(i, enter);
      if (a <= tol_) continue;
      const double ratio = std::max(tableau_(i, rhs), 0.0) / a;
      const bool tie = std::fabs(ratio - best) <= 1e-12;
      if (leave < 0 || (!tie && ratio < best) ||
          (tie && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    if (leave < 0) return false;
    pivot(leave, enter);
  }
}

bool Simplex::minimize(const Eigen::VectorXd& cost) {
  const int m = m_, n = n_;
  tableau_.row(m).setZero();
  tableau_.row(m).head(n) = cost.transpose();
  for (int i = 0; i < m; ++i) {
    const double cb = cost(basis_[static_cast<std::size_t>(i)]);
    if (cb != 0.0) tableau_.row(m) -= cb * tableau_.row(i);
  }
  return iterate(n);
}

Eigen::VectorXd Simplex::point() const {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n_);
  if (!feasible_ || m_ == 0) return z;
  Eigen::MatrixXd AB(m_, m_);
  Eigen::VectorXd rhs(m_);
  for (int r = 0; r < m_; ++r) {
    rhs(r) = b_(rows_[static_cast<std::size_t>(r)]);
    for (int c = 0; c < m_; ++c) AB(r, c) = A_(rows_[static_cast<std::size_t>(r)], basis_[static_cast<std::size_t>(c)]);
  }
  const Eigen::VectorXd zb = AB.colPivHouseholderQr().solve(rhs);
  for (int c = 0; c < m_; ++c) z(basis_[static_cast<std::size_t>(c)]) = std::max(zb(c), 0.0);
  return z;
}

}  // namespace shiftmeasure::opt::detail
