#pragma once

// Prescribed frequencies of the zero blocks 0^k: feasibility, the unique
// maximal-entropy invariant measure, and its entropy in closed form.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shiftmeasure/cylinder_table.hpp"
#include "shiftmeasure/rational.hpp"

namespace shiftmeasure::zero_block {

/// How a_k continues past the given prefix a_1..a_m.
enum class TailPolicy {
  constant,        // a_{m+j} = a_m
  affine_clipped,  // a_{m+j} = max(0, a_m - j (a_{m-1} - a_m))
};

std::string to_string(TailPolicy policy);
TailPolicy parse_tail_policy(const std::string& text);

/// Target frequencies a_k = mu([0^k]), k >= 1, given as a finite prefix plus a
/// tail policy; a_0 = 1 is implicit. Values are held exactly.
class FrequencySpec {
 public:
  /// Throws std::invalid_argument for an empty prefix or values outside [0,1].
  explicit FrequencySpec(std::vector<Rational> prefix, TailPolicy tail = TailPolicy::constant);

  /// a_k = ratio^k for k = 1..terms, then `tail`.
  static FrequencySpec geometric(const Rational& ratio, int terms, TailPolicy tail = TailPolicy::constant);

  const std::vector<Rational>& prefix() const { return prefix_; }
  TailPolicy tail() const { return tail_; }
  int prefix_length() const { return static_cast<int>(prefix_.size()); }

  /// a_k for any k >= 0.
  Rational value(std::int64_t k) const;

 private:
  std::vector<Rational> prefix_;
  TailPolicy tail_;
};

/// a_0..a_upto. Requires upto >= prefix length.
std::vector<Rational> extend_spec(const FrequencySpec& spec, int upto);

/// d_j = a_j - 2 a_{j+1} + a_{j+2}.
struct SecondDifferences {
  std::vector<Rational> values;  // d_0..d_upto
};

SecondDifferences second_differences(const FrequencySpec& spec, int upto);

/// Every (j, d_j) with d_j != 0. Always finite for the supported tail policies.
std::vector<std::pair<std::int64_t, Rational>> nonzero_second_differences(const FrequencySpec& spec);

enum class ViolationKind { normalization, range, monotonicity, second_difference };

std::string to_string(ViolationKind kind);

struct FeasibilityViolation {
  ViolationKind kind;
  int index;        // j of a_j >= a_{j+1} or d_j >= 0; 0 for normalization
  Rational value;   // the offending quantity: a_j - a_{j+1}, d_j, or a_0 - 1
  Rational amount;  // how far it misses (positive)
};

struct FeasibilityReport {
  bool feasible = true;
  int checked_upto = 0;  // last index k of a_k examined
  std::optional<FeasibilityViolation> violation;
  std::string describe() const;
};

/// Checks a_0 = 1, a_j >= a_{j+1} and d_j >= 0 on a_0..a_upto, scanning j upward
/// and reporting the first failure.
FeasibilityReport check_feasible(const FrequencySpec& spec, int upto);

/// Full feasibility: the prefix plus the two tail values that fix every d_j.
FeasibilityReport check_feasible(const FrequencySpec& spec);

/// Same checks on an explicit sequence a_0..a_K.
FeasibilityReport check_sequence(std::span<const Rational> a);

class InfeasibleSpec : public std::invalid_argument {
 public:
  explicit InfeasibleSpec(FeasibilityReport report);
  const FeasibilityReport& report() const { return report_; }

 private:
  FeasibilityReport report_;
};

/// (p_{0 0^n 0}, p_{0 0^n 1}, p_{1 0^n 0}, p_{1 0^n 1}) =
/// (a_{n+2}, a_{n+1} - a_{n+2}, a_{n+1} - a_{n+2}, a_n - 2 a_{n+1} + a_{n+2}).
/// `a` holds a_0.. and must be feasible through index n+2 (else InfeasibleSpec).
std::array<Rational, 4> boundary_values(std::span<const Rational> a, int n);

/// The maximal-entropy invariant measure with mu([0^k]) = a_k, to the given
/// depth. Zero-block cylinders come from boundary_values, every other cell from
/// p_{ewe'} = p_{ew} p_{we'} / p_w (0 when p_w = 0). Throws InfeasibleSpec.
template <class Scalar>
BasicCylinderTable<Scalar> build_max_entropy_table(const FrequencySpec& spec, int depth);

enum class LogBase { nats, bits };

/// h(x) = -x log x with h(0) = 0, natural log.
double entropy_term(double x);

struct ClosedFormEntropy {
  double value = 0.0;            // -h(1 - a_1) + sum_{j <= truncation} h(d_j)
  bool exact = true;             // no nonzero d_j beyond the truncation
  double omitted = 0.0;          // sum of h(d_j) over the dropped tail
  std::int64_t last_nonzero = -1;  // largest j with d_j != 0
};

/// Closed-form entropy of the maximal-entropy measure, truncated at index J.
ClosedFormEntropy entropy_closed_form(const FrequencySpec& spec, std::int64_t truncation,
                                      LogBase base = LogBase::nats);

/// Untruncated closed form (the d_j are finitely supported).
ClosedFormEntropy entropy_closed_form(const FrequencySpec& spec, LogBase base = LogBase::nats);

/// phi(1)..phi(upto), the increments h^(n+2) - h^(n+1) of the maximal-entropy
/// measure written in terms of a_n, a_{n+1}, a_{n+2}.
std::vector<double> telescoping_increments(const FrequencySpec& spec, int upto);

/// h^(2) of the maximal-entropy measure, the first rung of the telescoping sum.
double second_order_entropy(const FrequencySpec& spec);

extern template BasicCylinderTable<Rational> build_max_entropy_table<Rational>(const FrequencySpec&, int);
extern template BasicCylinderTable<double> build_max_entropy_table<double>(const FrequencySpec&, int);

}  // namespace shiftmeasure::zero_block
