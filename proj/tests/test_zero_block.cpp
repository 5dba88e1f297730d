#include <cmath>
#include <random>

#include "doctest.h"
#include "shiftmeasure/measure.hpp"
#include "shiftmeasure/zero_block.hpp"
#include "support.hpp"

using namespace shiftmeasure;
using namespace shiftmeasure::zero_block;
using testing_support::h;

namespace {

FrequencySpec spec_of(std::initializer_list<const char*> values, TailPolicy tail = TailPolicy::constant) {
  std::vector<Rational> a;
  for (const char* v : values) a.push_back(parse_rational(v));
  return FrequencySpec(std::move(a), tail);
}

}  // namespace

TEST_SUITE("zero_block") {
  TEST_CASE("feasibility examples") {
    CHECK(check_feasible(spec_of({"1/2", "1/4", "1/8"})).feasible);
    const auto r = check_feasible(spec_of({"1/2", "0.45", "0.1"}));
    REQUIRE_FALSE(r.feasible);
    CHECK(r.violation->kind == zero_block::ViolationKind::second_difference);
    CHECK(r.violation->index == 1);
    CHECK(r.violation->value == Rational(-3, 10));
    CHECK(r.describe() == "infeasible at j=1, d=-0.3");

    const auto mono = check_feasible(spec_of({"1/2", "0.6"}));
    REQUIRE_FALSE(mono.feasible);
    CHECK(mono.violation->kind == zero_block::ViolationKind::monotonicity);
    CHECK(mono.violation->index == 1);

    CHECK_THROWS_AS(spec_of({"1.5"}), std::invalid_argument);
    CHECK_THROWS_AS(FrequencySpec({}), std::invalid_argument);
  }

  TEST_CASE("tails") {
    const auto c = spec_of({"1/2", "3/8"});
    CHECK(c.value(0) == 1);
    CHECK(c.value(7) == Rational(3, 8));
    const auto a = spec_of({"1/2", "3/8"}, TailPolicy::affine_clipped);
    CHECK(a.value(3) == Rational(1, 4));
    CHECK(a.value(4) == Rational(1, 8));
    CHECK(a.value(5) == 0);
    CHECK(a.value(50) == 0);
    CHECK(spec_of({"1/3"}, TailPolicy::affine_clipped).value(2) == 0);
    CHECK(parse_tail_policy("affine") == TailPolicy::affine_clipped);
    CHECK_THROWS(parse_tail_policy("linear"));
    CHECK_THROWS(extend_spec(a, 1));
  }

  TEST_CASE("nonzero second differences include the affine kink") {
    const auto a = spec_of({"1/2", "3/8"}, TailPolicy::affine_clipped);
    const auto list = nonzero_second_differences(a);
    Rational total = 0;
    for (const auto& [j, d] : list) {
      CHECK(d == a.value(j) - 2 * a.value(j + 1) + a.value(j + 2));
      total += Rational(j + 1) * d;
    }
    // sum_j (j+1) d_j = a_0 - lim a_k for sequences with finitely many nonzero d_j
    CHECK(total == 1);
    for (std::int64_t j = 0; j < 40; ++j) {
      const Rational d = a.value(j) - 2 * a.value(j + 1) + a.value(j + 2);
      bool listed = false;
      for (const auto& [k, v] : list) listed |= k == j;
      CHECK((d == 0 || listed));
    }
  }

  TEST_CASE("boundary values split a_n and are nonnegative") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
      const auto spec = testing_support::random_spec(rng);
      const auto a = extend_spec(spec, spec.prefix_length() + 8);
      for (int n = 0; n + 2 < static_cast<int>(a.size()); ++n) {
        const auto b = boundary_values(a, n);
        CHECK(b[0] + b[1] + b[2] + b[3] == a[static_cast<std::size_t>(n)]);
        for (const auto& v : b) CHECK(v >= 0);
      }
    }
    const std::vector<Rational> bad{1, Rational(1, 2), Rational(9, 20), Rational(1, 10)};
    CHECK_NOTHROW(boundary_values(bad, 0));
    CHECK_THROWS_AS(boundary_values(bad, 1), InfeasibleSpec);
  }

  TEST_CASE("built tables are exact invariant measures with the prescribed zero blocks") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
      const auto spec = testing_support::random_spec(rng);
      const auto t = build_max_entropy_table<Rational>(spec, 7);
      CHECK(validate(t, 0).passed());
      for (int k = 1; k <= 7; ++k) CHECK(t[Word::zeros(k)] == spec.value(k));
      // cross-ratio identity off the zero stem
      for (int n = 1; n <= 5; ++n) {
        for (std::uint64_t w = 1; w < (std::uint64_t{1} << n); ++w) {
          const Word m(w, n);
          CHECK(t[m.prepend(0).append(0)] * t[m.prepend(1).append(1)] ==
                t[m.prepend(0).append(1)] * t[m.prepend(1).append(0)]);
        }
      }
    }
  }

  TEST_CASE("float build agrees with exact build") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
      const auto spec = testing_support::random_spec(rng);
      const auto e = to_float(build_max_entropy_table<Rational>(spec, 9));
      const auto f = build_max_entropy_table<double>(spec, 9);
      for (int n = 0; n <= 9; ++n)
        for (std::size_t i = 0; i < f.level(n).size(); ++i) CHECK(f.level(n)[i] == doctest::Approx(e.level(n)[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("building an infeasible spec fails with the report") {
    try {
      build_max_entropy_table<Rational>(spec_of({"1/2", "0.45", "0.1"}), 4);
      FAIL("built");
    } catch (const InfeasibleSpec& e) {
      CHECK(e.report().violation->index == 1);
    }
    // the infeasibility sits beyond depth 2, so a depth-2 table is still fine
    CHECK_NOTHROW(build_max_entropy_table<Rational>(spec_of({"1/2", "0.45", "0.1"}), 2));
  }

  TEST_CASE("closed form of a geometric spec") {
    const auto g = FrequencySpec::geometric(Rational(1, 2), 64);
    const auto c = entropy_closed_form(g);
    CHECK(c.exact);
    CHECK(c.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(entropy_closed_form(g, LogBase::bits).value == doctest::Approx(1.0).epsilon(1e-12));
    const auto cut = entropy_closed_form(g, 5);
    CHECK_FALSE(cut.exact);
    CHECK(cut.omitted > 0);
    CHECK(cut.value + cut.omitted == doctest::Approx(c.value).epsilon(1e-14));
  }

  TEST_CASE("constant specs are two-point mixtures with zero entropy") {
    for (const char* a : {"1/10", "1/2", "9/10"}) {
      const auto spec = spec_of({a});
      const Rational av = parse_rational(a);
      CHECK(entropy_closed_form(spec).value == doctest::Approx(0.0).scale(1));
      const auto t = build_max_entropy_table<Rational>(spec, 6);
      for (int n = 1; n <= 6; ++n)
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
          const Word word(w, n);
          const Rational expect = word == Word::zeros(n) ? av : word == Word::ones(n) ? 1 - av : Rational(0);
          CHECK(t[word] == expect);
        }
    }
  }

  TEST_CASE("closed form, telescoped ladder and second-order term agree") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 200; ++trial) {
      const auto spec = testing_support::random_spec(rng);
      const int depth = spec.prefix_length() + 4;
      const auto t = build_max_entropy_table<Rational>(spec, depth);
      const auto ladder = entropy_ladder(t);
      CHECK(second_order_entropy(spec) == doctest::Approx(ladder.front().second).epsilon(1e-12));
      const auto phi = telescoping_increments(spec, depth - 2);
      double sum = second_order_entropy(spec);
      for (std::size_t i = 0; i < phi.size(); ++i) {
        CHECK(ladder[i + 1].second - ladder[i].second == doctest::Approx(phi[i]).epsilon(1e-9).scale(1));
        sum += phi[i];
      }
      CHECK(std::fabs(sum - entropy_closed_form(spec).value) <= 1e-9);
    }
  }

  TEST_CASE("entropy terms") {
    CHECK(entropy_term(0) == 0);
    CHECK(entropy_term(1) == 0);
    CHECK(entropy_term(0.5) == doctest::Approx(0.5 * std::log(2.0)));
  }
}

TEST_SUITE("zero_block") {
  TEST_CASE("period-two spec against the exhaustive depth-3 solution") {
    const auto oracle = testing_support::period_two_depth3();
    REQUIRE(oracle.size() == 8);
    const auto t = build_max_entropy_table<Rational>(FrequencySpec({Rational(1, 2), Rational(0)}), 3);
    for (std::size_t i = 0; i < 8; ++i) CHECK(t.level(3)[i] == oracle[i]);
    CHECK(t == testing_support::periodic_measure("01", 3));
  }
}
