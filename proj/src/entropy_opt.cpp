#include "shiftmeasure/entropy_opt.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "shiftmeasure/measure.hpp"
#include "simplex.hpp"

namespace shiftmeasure::opt {

ConstraintSet& ConstraintSet::add(const Word& word, double lo, double hi) {
  if (!(lo >= 0.0 && lo <= hi && hi <= 1.0))
    throw std::invalid_argument(fmt::format("bounds for '{}' must satisfy 0 <= lo <= hi <= 1, got [{}, {}]",
                                            word.str(), lo, hi));
  for (const auto& e : entries_)
    if (e.word == word) throw std::invalid_argument("duplicate constraint on word '" + word.str() + "'");
  entries_.push_back({word, lo, hi});
  return *this;
}

int ConstraintSet::max_word_length() const {
  int longest = 0;
  for (const auto& e : entries_) longest = std::max(longest, e.word.length());
  return longest;
}

ConstraintSet ConstraintSet::flipped() const {
  ConstraintSet out;
  for (const auto& e : entries_) out.add(e.word.complement(), e.lo, e.hi);
  return out;
}

ConstraintSet constraints_from_json(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("constraint JSON: ") + e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("constraint file must hold a JSON list");
  auto bound = [](const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>()).get_d();
    if (v.is_number()) return v.get<double>();
    throw std::invalid_argument("constraint bound must be a number or rational string, got " + v.dump());
  };
  ConstraintSet set;
  for (const json& entry : doc) {
    try {
      set.add(Word::parse(entry.at("word").get<std::string>()), bound(entry.at("lo")), bound(entry.at("hi")));
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("constraint entry ") + entry.dump() + ": " + e.what());
    }
  }
  return set;
}

ConstraintSet read_constraints_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open constraint file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return constraints_from_json(buffer.str());
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::max_iter: return "max_iter";
  }
  return "unknown";
}

std::string OptimizationResult::summary() const {
  return fmt::format("objective={:.12g} kkt={:.3e} status={}", objective, kkt_residual, to_string(status));
}

CellOptimum cell_maximize(double a, double b, double c) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("cell masses must be nonnegative");
  const double total = a + b;
  if (total < c - 1e-12)
    throw std::invalid_argument(fmt::format("cell constraint violated: a + b = {} < c = {}", total, c));
  if (total == 0.0) return {0, 0, 0, 0};
  const double rest = std::max(total - c, 0.0);
  return {a * c / total, b * c / total, a * rest / total, b * rest / total};
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Linear rows over columns [x_0..x_{2^n-1}, slacks...], z >= 0.
struct Assembly {
  int depth = 0;
  int words = 0;
  MatrixXd A;
  VectorXd b;
  std::vector<std::string> labels;
};

Assembly assemble(int depth, const ConstraintSet& constraints) {
  Assembly out;
  out.depth = depth;
  out.words = 1 << depth;
  struct Row {
    std::vector<std::pair<int, double>> coeffs;
    double rhs;
    std::string label;
  };
  std::vector<Row> rows;
  int slacks = 0;

  Row norm{{}, 1.0, "normalization"};
  for (int i = 0; i < out.words; ++i) norm.coeffs.emplace_back(i, 1.0);
  rows.push_back(std::move(norm));

  const int half = out.words / 2;
  for (int u = 0; u < half; ++u) {
    Row inv{{}, 0.0, "invariance " + Word(static_cast<std::uint64_t>(u), depth - 1).str()};
    inv.coeffs = {{u, 1.0}, {u + half, 1.0}, {2 * u, -1.0}, {2 * u + 1, -1.0}};
    rows.push_back(std::move(inv));
  }

  auto marginal = [&](const Word& w) {
    std::vector<std::pair<int, double>> coeffs;
    const int span = 1 << (depth - w.length());
    const int start = static_cast<int>(w.bits()) * span;
    for (int i = 0; i < span; ++i) coeffs.emplace_back(start + i, 1.0);
    return coeffs;
  };

  for (const auto& c : constraints.entries()) {
    const std::string name = c.word.empty() ? "[]" : "[" + c.word.str() + "]";
    if (c.lo == c.hi) {
      rows.push_back({marginal(c.word), c.lo, "mu" + name + " = " + fmt::format("{:.12g}", c.lo)});
      continue;
    }
    if (c.lo > 0.0) {
      Row r{marginal(c.word), c.lo, "mu" + name + " >= " + fmt::format("{:.12g}", c.lo)};
      r.coeffs.emplace_back(out.words + slacks++, -1.0);
      rows.push_back(std::move(r));
    }
    if (c.hi < 1.0) {
      Row r{marginal(c.word), c.hi, "mu" + name + " <= " + fmt::format("{:.12g}", c.hi)};
      r.coeffs.emplace_back(out.words + slacks++, 1.0);
      rows.push_back(std::move(r));
    }
  }

  out.A = MatrixXd::Zero(static_cast<Index>(rows.size()), out.words + slacks);
  out.b = VectorXd::Zero(static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [col, val] : rows[r].coeffs) out.A(static_cast<Index>(r), col) += val;
    out.b(static_cast<Index>(r)) = rows[r].rhs;
    out.labels.push_back(rows[r].label);
  }
  return out;
}

// Columns that are positive somewhere on the polytope, and a point positive on
// all of them (average of LP vertices).
struct Face {
  std::vector<int> support;
  VectorXd interior;
};

Face find_face(detail::Simplex& lp, int columns) {
  constexpr double positive = 1e-11;
  std::vector<VectorXd> points{lp.point()};
  std::vector<bool> reached(static_cast<std::size_t>(columns), false);
  auto mark = [&](const VectorXd& z) {
    double gained = 0.0;
    for (int i = 0; i < columns; ++i) {
      if (!reached[static_cast<std::size_t>(i)] && z(i) > positive) {
        reached[static_cast<std::size_t>(i)] = true;
        gained += z(i);
      }
    }
    return gained;
  };
  mark(points.front());
  for (;;) {
    VectorXd cost = VectorXd::Zero(columns);
    bool open = false;
    for (int i = 0; i < columns; ++i) {
      if (!reached[static_cast<std::size_t>(i)]) {
        cost(i) = -1.0;
        open = true;
      }
    }
    if (!open) break;
    lp.minimize(cost);
    VectorXd z = lp.point();
    if (mark(z) <= 0.0) break;
    points.push_back(std::move(z));
  }
  Face face;
  VectorXd sum = VectorXd::Zero(columns);
  for (const auto& p : points) sum += p;
  sum /= static_cast<double>(points.size());
  for (int i = 0; i < columns; ++i)
    if (reached[static_cast<std::size_t>(i)]) face.support.push_back(i);
  face.interior = VectorXd(static_cast<Index>(face.support.size()));
  for (std::size_t q = 0; q < face.support.size(); ++q) face.interior(static_cast<Index>(q)) = sum(face.support[q]);
  return face;
}

// Primal-dual interior point for  min g(z)  s.t.  A z = b, z >= 0, with
// g(z) = sum over top-level pairs (w0, w1) of x log(x / (x_w0 + x_w1)) = -h^(n).
class InteriorPoint {
 public:
  InteriorPoint(MatrixXd A, VectorXd b, std::vector<int> columns, int words)
      : A_(std::move(A)), b_(std::move(b)), p_(static_cast<int>(columns.size())) {
    partner_.assign(static_cast<std::size_t>(p_), -1);
    is_x_.assign(static_cast<std::size_t>(p_), false);
    std::vector<int> where(static_cast<std::size_t>(words), -1);
    for (int q = 0; q < p_; ++q) {
      const int c = columns[static_cast<std::size_t>(q)];
      if (c < words) {
        is_x_[static_cast<std::size_t>(q)] = true;
        where[static_cast<std::size_t>(c)] = q;
      }
    }
    for (int q = 0; q < p_; ++q) {
      const int c = columns[static_cast<std::size_t>(q)];
      if (c < words) partner_[static_cast<std::size_t>(q)] = where[static_cast<std::size_t>(c ^ 1)];
    }
  }

  struct Outcome {
    VectorXd z;
    double kkt;
    int iterations;
    bool converged;
  };

  Outcome run(VectorXd z, const SolveOptions& options) {
    const int m = static_cast<int>(A_.rows());
    VectorXd v = VectorXd::Ones(p_);
    VectorXd lambda = VectorXd::Zero(m);
    const double target = options.kkt_tolerance * 0.1;
    double kkt = residual_kkt(z, v, lambda);
    int stalls = 0;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
      if (kkt <= target) return {z, kkt, it, true};
      const double mu = z.dot(v) / p_;
      const double tau = 0.1 * mu;

      VectorXd dz, dv, dl;
      if (!direction(z, v, lambda, tau, dz, dv, dl)) break;

      double alpha = 1.0;
      for (int i = 0; i < p_; ++i) {
        if (dz(i) < 0) alpha = std::min(alpha, -0.995 * z(i) / dz(i));
        if (dv(i) < 0) alpha = std::min(alpha, -0.995 * v(i) / dv(i));
      }
      const double base = merit(z, v, lambda, tau);
      VectorXd zn, vn, ln;
      for (;;) {
        zn = z + alpha * dz;
        vn = v + alpha * dv;
        ln = lambda + alpha * dl;
        if (merit(zn, vn, ln, tau) <= (1.0 - 0.01 * alpha) * base || alpha < 1e-14) break;
        alpha *= 0.5;
      }
      if (alpha < 1e-14) {
        if (++stalls > 5) break;
      } else {
        stalls = 0;
      }
      z = std::move(zn);
      v = std::move(vn);
      lambda = std::move(ln);
      kkt = residual_kkt(z, v, lambda);
    }
    return {z, kkt, it, kkt <= options.kkt_tolerance};
  }

 private:
  VectorXd gradient(const VectorXd& z) const {
    VectorXd g = VectorXd::Zero(p_);
    for (int q = 0; q < p_; ++q) {
      if (!is_x_[static_cast<std::size_t>(q)]) continue;
      const int r = partner_[static_cast<std::size_t>(q)];
      const double s = z(q) + (r >= 0 ? z(r) : 0.0);
      g(q) = std::log(z(q) / s);
    }
    return g;
  }

  double residual_kkt(const VectorXd& z, const VectorXd& v, const VectorXd& lambda) const {
    const VectorXd rd = gradient(z) - A_.transpose() * lambda - v;
    const VectorXd rp = A_ * z - b_;
    const double comp = z.cwiseProduct(v).cwiseAbs().maxCoeff();
    return std::max({rd.cwiseAbs().maxCoeff(), rp.size() ? rp.cwiseAbs().maxCoeff() : 0.0, comp});
  }

  double merit(const VectorXd& z, const VectorXd& v, const VectorXd& lambda, double tau) const {
    const VectorXd rd = gradient(z) - A_.transpose() * lambda - v;
    const VectorXd rp = A_ * z - b_;
    const VectorXd rc = z.cwiseProduct(v).array() - tau;
    return std::sqrt(rd.squaredNorm() + rp.squaredNorm() + rc.squaredNorm());
  }

  // W = Hessian(g) + Z^{-1} V is block diagonal with 1x1 and 2x2 blocks.
  struct Block {
    int first, second;  // second < 0 for 1x1
    double i11, i12, i22;  // inverse entries
  };

  std::vector<Block> factor_w(const VectorXd& z, const VectorXd& v) const {
    constexpr double regularization = 1e-12;
    std::vector<Block> blocks;
    for (int q = 0; q < p_; ++q) {
      const int r = partner_[static_cast<std::size_t>(q)];
      const double dq = v(q) / z(q) + regularization;
      if (is_x_[static_cast<std::size_t>(q)] && r >= 0) {
        if (r < q) continue;
        const double s = z(q) + z(r);
        const double h11 = 1.0 / z(q) - 1.0 / s + dq;
        const double h22 = 1.0 / z(r) - 1.0 / s + v(r) / z(r) + regularization;
        const double h12 = -1.0 / s;
        const double det = h11 * h22 - h12 * h12;
        blocks.push_back({q, r, h22 / det, -h12 / det, h11 / det});
      } else {
        blocks.push_back({q, -1, 1.0 / dq, 0.0, 0.0});
      }
    }
    return blocks;
  }

  template <class Matrix>
  static void apply_inverse(const std::vector<Block>& blocks, Matrix& rows) {
    for (const auto& blk : blocks) {
      if (blk.second < 0) {
        rows.row(blk.first) *= blk.i11;
      } else {
        const auto a = rows.row(blk.first).eval();
        const auto c = rows.row(blk.second).eval();
        rows.row(blk.first) = blk.i11 * a + blk.i12 * c;
        rows.row(blk.second) = blk.i12 * a + blk.i22 * c;
      }
    }
  }

  bool direction(const VectorXd& z, const VectorXd& v, const VectorXd& lambda, double tau, VectorXd& dz,
                 VectorXd& dv, VectorXd& dl) const {
    const auto blocks = factor_w(z, v);
    const VectorXd rd = gradient(z) - A_.transpose() * lambda - v;
    const VectorXd rp = A_ * z - b_;
    const VectorXd rc = (-z.cwiseProduct(v)).array() + tau;
    const VectorXd q = -rd + rc.cwiseQuotient(z);

    MatrixXd winv_at = A_.transpose();
    apply_inverse(blocks, winv_at);
    VectorXd winv_q = q;
    apply_inverse(blocks, winv_q);

    const MatrixXd schur = A_ * winv_at;
    const VectorXd rhs = -rp - A_ * winv_q;
    Eigen::LDLT<MatrixXd> ldlt(schur);
    if (ldlt.info() == Eigen::Success) {
      dl = ldlt.solve(rhs);
    }
    if (ldlt.info() != Eigen::Success || !dl.allFinite()) {
      dl = schur.fullPivLu().solve(rhs);
      if (!dl.allFinite()) return false;
    }
    dz = winv_q + winv_at * dl;
    dv = (rc - v.cwiseProduct(dz)).cwiseQuotient(z);
    return dz.allFinite() && dv.allFinite();
  }

  MatrixXd A_;
  VectorXd b_;
  int p_;
  std::vector<int> partner_;
  std::vector<bool> is_x_;
};

// Keeps a maximal linearly independent subset of rows.
std::vector<int> independent_rows(const MatrixXd& A) {
  if (A.rows() == 0) return {};
  Eigen::ColPivHouseholderQR<MatrixXd> qr(A.transpose());
  qr.setThreshold(1e-10);
  const auto rank = qr.rank();
  std::vector<int> rows;
  for (Index i = 0; i < rank; ++i) rows.push_back(qr.colsPermutation().indices()(i));
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

OptimizationResult solve(int depth, const ConstraintSet& constraints, const SolveOptions& options) {
  if (depth < 2) throw std::invalid_argument("optimization depth must be >= 2");
  if (depth > 14) throw std::invalid_argument("optimization depth above 14 is not supported");
  if (constraints.max_word_length() > depth)
    throw std::invalid_argument(fmt::format("constraint word of length {} exceeds depth {}",
                                            constraints.max_word_length(), depth));

  const Assembly sys = assemble(depth, constraints);
  const int columns = static_cast<int>(sys.A.cols());
  OptimizationResult result;

  detail::Simplex lp(sys.A, sys.b);
  if (!lp.feasible()) {
    result.status = SolveStatus::infeasible;
    InfeasibilityCertificate cert;
    cert.row_labels = sys.labels;
    cert.multipliers.assign(lp.farkas().data(), lp.farkas().data() + lp.farkas().size());
    cert.separation = sys.b.dot(lp.farkas());
    result.certificate = std::move(cert);
    return result;
  }

  const Face face = find_face(lp, columns);
  const int p = static_cast<int>(face.support.size());
  MatrixXd reduced(sys.A.rows(), p);
  for (int q = 0; q < p; ++q) reduced.col(q) = sys.A.col(face.support[static_cast<std::size_t>(q)]);
  const auto rows = independent_rows(reduced);
  MatrixXd A(static_cast<Index>(rows.size()), p);
  VectorXd b(static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    A.row(static_cast<Index>(r)) = reduced.row(rows[r]);
    b(static_cast<Index>(r)) = sys.b(rows[r]);
  }

  InteriorPoint ipm(std::move(A), std::move(b), face.support, sys.words);
  const auto outcome = ipm.run(face.interior, options);

  std::vector<double> top(static_cast<std::size_t>(sys.words), 0.0);
  for (int q = 0; q < p; ++q) {
    const int c = face.support[static_cast<std::size_t>(q)];
    if (c < sys.words) top[static_cast<std::size_t>(c)] = outcome.z(q) < options.polish_threshold ? 0.0 : outcome.z(q);
  }
  FloatTable table(depth);
  std::copy(top.begin(), top.end(), table.level(depth).begin());
  table.recompute_marginals();

  result.objective = conditional_entropy(table, depth);
  result.table = std::move(table);
  result.kkt_residual = outcome.kkt;
  result.iterations = outcome.iterations;
  result.status = outcome.converged ? SolveStatus::optimal : SolveStatus::max_iter;
  return result;
}

double constraint_violation(const FloatTable& table, const ConstraintSet& constraints) {
  double worst = 0.0;
  for (const auto& c : constraints.entries()) {
    const double p = table.at(c.word);
    worst = std::max({worst, c.lo - p, p - c.hi});
  }
  return worst;
}

ComparisonReport compare_with_closed_form(const zero_block::FrequencySpec& spec, int depth,
                                          const SolveOptions& options) {
  const FloatTable closed = to_float(zero_block::build_max_entropy_table<Rational>(spec, depth));
  ConstraintSet constraints;
  for (int k = 1; k <= depth; ++k) constraints.equal(Word::zeros(k), spec.value(k).get_d());
  const auto solved = solve(depth, constraints, options);

  ComparisonReport report;
  report.status = solved.status;
  report.kkt_residual = solved.kkt_residual;
  report.closed_form_objective = conditional_entropy(closed, depth);
  if (!solved.table) {
    report.max_cylinder_deviation = report.objective_deviation = std::numeric_limits<double>::infinity();
    return report;
  }
  report.optimizer_objective = solved.objective;
  report.objective_deviation = std::fabs(solved.objective - report.closed_form_objective);
  for (int n = 0; n <= depth; ++n) {
    const auto a = closed.level(n);
    const auto b = solved.table->level(n);
    for (std::size_t i = 0; i < a.size(); ++i)
      report.max_cylinder_deviation = std::max(report.max_cylinder_deviation, std::fabs(a[i] - b[i]));
  }
  return report;
}

}  // namespace shiftmeasure::opt
