// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "shiftmeasure/birkhoff.hpp"
#include "shiftmeasure/entropy_opt.hpp"
#include "shiftmeasure/estimators.hpp"
#include "shiftmeasure/measure.hpp"
#include "shiftmeasure/zero_block.hpp"
#include "support.hpp"

using namespace shiftmeasure;
namespace zb = shiftmeasure::zero_block;
using testing_support::h;

namespace {

// Tolerances and limits, fixed here.
constexpr double tol_geometric = 1e-9;
constexpr double tol_zero_entropy = 1e-12;
constexpr double tol_optimizer = 1e-6;
constexpr double tol_golden = 1e-6;
constexpr double tol_cell = 1e-12;
constexpr double tol_ladder_monotone = 1e-10;
constexpr double tol_telescoping = 1e-9;
constexpr double tol_generic = 0.01;
constexpr double tol_katok = 0.05;
constexpr int katok_n = 14;
constexpr double katok_delta = 0.2;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome geometric() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = zb::FrequencySpec::geometric(Rational(1, 2), 64);
  const double err = std::fabs(zb::entropy_closed_form(spec).value - std::log(2.0));
  const auto table = zb::build_max_entropy_table<Rational>(spec, 10);
  bool bernoulli = true;
  for (int n = 0; n <= 10; ++n)
    for (const auto& p : table.level(n)) bernoulli &= p == Rational(1, 1L << n);
  const double secs = seconds_since(t0);
  return {err <= tol_geometric && bernoulli && secs < 1.0,
          fmt::format("|H-log2|={:.2e} bernoulli(1/2) exact to depth 10: {} time={:.3f}s", err, bernoulli, secs)};
}

Outcome constant() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0;
  for (const Rational a : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
    const zb::FrequencySpec spec({a});
    worst = std::max(worst, std::fabs(zb::entropy_closed_form(spec).value));
    const auto t = zb::build_max_entropy_table<Rational>(spec, 10);
    for (int n = 1; n <= 10; ++n)
      for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
        const Word word(w, n);
        const Rational expect = word == Word::zeros(n) ? a : word == Word::ones(n) ? 1 - a : Rational(0);
        ok &= t[word] == expect;
      }
  }
  const double secs = seconds_since(t0);
  return {ok && worst <= tol_zero_entropy && secs < 1.0,
          fmt::format("max|H|={:.2e} two-point mixture exact: {} time={:.3f}s", worst, ok, secs)};
}

Outcome period_two() {
  const zb::FrequencySpec spec({Rational(1, 2), Rational(0)});
  const double hval = std::fabs(zb::entropy_closed_form(spec).value);
  const auto oracle = testing_support::period_two_depth3();
  const auto t = zb::build_max_entropy_table<Rational>(spec, 3);
  bool match = oracle.size() == 8;
  for (std::size_t i = 0; match && i < 8; ++i) match = t.level(3)[i] == oracle[i];
  const auto low = t.truncated(2);
  match &= validate(t, 0).passed() && low == testing_support::periodic_measure("01", 2);
  return {hval <= tol_zero_entropy && match,
          fmt::format("|H|={:.2e} depth-3 table equals vertex-enumeration oracle: {}", hval, match)};
}

Outcome optimizer_vs_closed_form() {
  const std::vector<std::pair<std::string, zb::FrequencySpec>> specs{
      {"geometric", zb::FrequencySpec::geometric(Rational(1, 2), 64)},
      {"const 0.1", zb::FrequencySpec({Rational(1, 10)})},
      {"const 0.5", zb::FrequencySpec({Rational(1, 2)})},
      {"const 0.9", zb::FrequencySpec({Rational(9, 10)})},
      {"period two", zb::FrequencySpec({Rational(1, 2), Rational(0)})}};
  bool ok = true;
  double cyl = 0, obj = 0, slowest = 0;
  for (const auto& [name, spec] : specs) {
    for (int depth : {3, 4, 5}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = opt::compare_with_closed_form(spec, depth);
      slowest = std::max(slowest, seconds_since(t0));
      ok &= r.status == opt::SolveStatus::optimal;
      cyl = std::max(cyl, r.max_cylinder_deviation);
      obj = std::max(obj, r.objective_deviation);
    }
  }
  return {ok && cyl <= tol_optimizer && obj <= tol_optimizer && slowest < 30.0,
          fmt::format("15 cases optimal: {} max cylinder dev={:.2e} objective dev={:.2e} slowest={:.3f}s", ok, cyl,
                      obj, slowest)};
}

Outcome golden_mean() {
  opt::ConstraintSet cs;
  cs.equal(Word::parse("00"), 0);
  const auto r = opt::solve(2, cs);
  if (r.status != opt::SolveStatus::optimal) return {false, "status=" + opt::to_string(r.status)};
  // 5a^2 - 5a + 1 = 0
  const double a = (5 - std::sqrt(5.0)) / 10;
  const double de = std::fabs(r.objective - std::log((1 + std::sqrt(5.0)) / 2));
  const double da = std::fabs(r.table->at(Word::parse("0")) - a);
  return {de <= tol_golden && da <= tol_golden, fmt::format("objective dev={:.2e} mu[0] dev={:.2e}", de, da)};
}

Outcome cell_formula() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0, 1);
  auto F = [](double t, double uu, double v, double w) { return h(t) + h(uu) + h(v) + h(w); };
  double worst_gap = 0, worst_cross = 0;
  for (int i = 0; i < 100000; ++i) {
    const double a = u(rng), b = u(rng);
    const double c = u(rng) * (a + b);
    const auto m = opt::cell_maximize(a, b, c);
    const double best = F(m.t, m.u, m.v, m.w);
    worst_cross = std::max(worst_cross, std::fabs(m.t * m.w - m.u * m.v));
    const double lo = std::max(0.0, c - b), hi = std::min(a, c);
    for (int j = 0; j < 1000; ++j) {
      const double t = lo + (hi - lo) * u(rng);
      worst_gap = std::max(worst_gap, F(t, c - t, a - t, b - c + t) - best);
    }
  }
  const double secs = seconds_since(t0);
  return {worst_gap <= tol_cell && worst_cross <= tol_cell && secs < 60.0,
          fmt::format("max F(random)-F(formula)={:.2e} max|tw-uv|={:.2e} time={:.1f}s", worst_gap, worst_cross, secs)};
}

Outcome ladder() {
  std::mt19937_64 rng(7);
  double rise = 0, tele = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto spec = testing_support::random_spec(rng);
    const int depth = 10;
    const auto lad = entropy_ladder(zb::build_max_entropy_table<double>(spec, depth));
    const auto phi = zb::telescoping_increments(spec, depth - 2);
    for (std::size_t k = 1; k < lad.size(); ++k) {
      rise = std::max(rise, lad[k].second - lad[k - 1].second);
      // h^(n+2) - h^(n+1) = phi(n), n = 1..depth-2
      tele = std::max(tele, std::fabs((lad[k].second - lad[k - 1].second) - phi[k - 1]));
    }
  }
  return {rise <= tol_ladder_monotone && tele <= tol_telescoping,
          fmt::format("max rise={:.2e} max |increment-phi|={:.2e}", rise, tele)};
}

Outcome exact_marginals() {
  std::mt19937_64 rng(8);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto spec = testing_support::random_spec(rng);
    const auto t = zb::build_max_entropy_table<Rational>(spec, 8);
    for (int k = 1; k <= 8; ++k) bad += t[Word::zeros(k)] != spec.value(k);
  }
  return {bad == 0, fmt::format("mismatched p_0^k: {}", bad)};
}

Outcome generic_point() {
  const bool exact = birkhoff::generic_point_half(20).str() == "01001100011100001111";
  const auto x = birkhoff::generic_point_half(1000000);
  double worst = 0;
  for (int k = 1; k <= 5; ++k) worst = std::max(worst, std::fabs(birkhoff::recurrence(x, Word::zeros(k), 1000000) - 0.5));
  return {exact && worst <= tol_generic, fmt::format("prefix exact: {} max|R(0^k)-1/2|={:.4f}", exact, worst)};
}

Outcome estimators() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (double p : {0.5, 0.1}) {
    const auto samples = sample_orbits(testing_support::bernoulli_table(p), 10000, 200, 99);
    const double k = est::katok_entropy(samples, katok_n, katok_delta);
    const double target = h(p) + h(1 - p);
    ok &= std::fabs(k - target) <= tol_katok;
    detail += fmt::format("p={} katok={:.4f} target={:.4f}; ", p, k, target);
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 60.0, detail + fmt::format("n={} delta={} time={:.2f}s", katok_n, katok_delta, secs)};
}

Outcome infeasibility() {
  opt::ConstraintSet cs;
  cs.equal(Word::parse("0"), 0.3).equal(Word::parse("00"), 0.4);
  const auto r = opt::solve(2, cs);
  const auto report = zb::check_feasible(zb::FrequencySpec({Rational(1, 2), Rational(9, 20), Rational(1, 10)}));
  const bool spec_ok = !report.feasible && report.violation->index == 1 &&
                       report.violation->kind == zb::ViolationKind::second_difference &&
                       report.violation->amount == Rational(3, 10);
  return {r.status == opt::SolveStatus::infeasible && spec_ok,
          fmt::format("optimizer status={} check: {}", opt::to_string(r.status), report.describe())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"geometric spec entropy and Bernoulli table", geometric},
      {"constant specs", constant},
      {"period-two spec", period_two},
      {"optimizer vs closed form", optimizer_vs_closed_form},
      {"golden mean", golden_mean},
      {"cell formula dominance", cell_formula},
      {"ladder monotone and telescoping", ladder},
      {"exact zero-block marginals", exact_marginals},
      {"generic point", generic_point},
      {"entropy estimators", estimators},
      {"infeasibility", infeasibility}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    fmt::print("{} {:>2} {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
