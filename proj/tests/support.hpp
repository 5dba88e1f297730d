#pragma once

// Generators and independent oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "shiftmeasure/cylinder_table.hpp"
#include "shiftmeasure/zero_block.hpp"

namespace testing_support {

using shiftmeasure::Rational;
using shiftmeasure::zero_block::FrequencySpec;

inline double h(double x) { return x > 0 ? -x * std::log(x) : 0.0; }

// Random feasible zero-block spec: pick d_0..d_{m-1} >= 0 and a limit c >= 0,
// set a_k = c + sum_{j>=k} (j-k+1) d_j and divide by a_0. Second differences of
// the result are the scaled d_j, so feasibility holds by construction.
template <class Rng>
FrequencySpec random_spec(Rng& rng, int max_support = 6) {
  std::uniform_int_distribution<int> len(1, max_support), val(0, 12), coin(0, 2);
  for (;;) {
    const int m = len(rng);
    std::vector<Rational> d(static_cast<std::size_t>(m));
    for (auto& x : d) {
      x = Rational(val(rng), 1 + val(rng));
      x.canonicalize();
    }
    Rational c = coin(rng) == 0 ? Rational(val(rng), 7) : Rational(0);
    c.canonicalize();
    std::vector<Rational> a(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
      a[static_cast<std::size_t>(k)] = c;
      for (int j = k; j < m; ++j) a[static_cast<std::size_t>(k)] += Rational(j - k + 1) * d[static_cast<std::size_t>(j)];
    }
    if (a[0] == 0) continue;
    const Rational a0 = a[0];
    std::vector<Rational> prefix;
    for (int k = 1; k <= m; ++k) prefix.push_back(a[static_cast<std::size_t>(k)] / a0);
    return FrequencySpec(std::move(prefix));
  }
}

// Greedy Katok count under the true Bernoulli(p) law on n-words: words with j
// ones form a class of C(n,j) equally likely words.
inline double katok_bernoulli(double p, int n, double delta) {
  struct Cls {
    double prob;
    double size;
  };
  std::vector<Cls> classes;
  for (int j = 0; j <= n; ++j) {
    double binom = 1;
    for (int i = 0; i < j; ++i) binom = binom * (n - i) / (i + 1);
    classes.push_back({std::pow(p, j) * std::pow(1 - p, n - j), binom});
  }
  std::sort(classes.begin(), classes.end(), [](const Cls& x, const Cls& y) { return x.prob > y.prob; });
  const double need = 1 - delta;
  double covered = 0, r = 0;
  for (const auto& c : classes) {
    if (covered + c.prob * c.size >= need) {
      r += std::ceil((need - covered) / c.prob - 1e-12);
      break;
    }
    covered += c.prob * c.size;
    r += c.size;
  }
  return std::log(r) / n;
}

// Depth-3 measure laws together with p_0 = 1/2 and p_00 = p_000 = 0, over the
// 8 top-level masses. Every vertex of this polytope has some set of masses at
// zero and is the unique solution once those are pinned; trying all 256 zero
// sets with exact elimination lists every vertex. Returns the common vertex
// if there is exactly one (the polytope is a point), else an empty vector.
inline std::vector<Rational> period_two_depth3() {
  const int N = 8;
  std::vector<std::vector<Rational>> base;
  auto row = [&](std::vector<int> cols, std::vector<int> coef, Rational rhs) {
    std::vector<Rational> r(N + 1, 0);
    for (std::size_t i = 0; i < cols.size(); ++i) r[static_cast<std::size_t>(cols[i])] += coef[i];
    r[N] = rhs;
    base.push_back(r);
  };
  row({0, 1, 2, 3, 4, 5, 6, 7}, {1, 1, 1, 1, 1, 1, 1, 1}, 1);
  // p_{0u} + p_{1u} = p_{u0} + p_{u1} for |u| = 2
  for (int u = 0; u < 4; ++u) row({u, u + 4, 2 * u, 2 * u + 1}, {1, 1, -1, -1}, 0);
  row({0, 1, 2, 3}, {1, 1, 1, 1}, Rational(1, 2));
  row({0, 1}, {1, 1}, 0);
  row({0}, {1}, 0);

  // Solves rows exactly; empty if inconsistent or not uniquely determined.
  auto solve = [&](std::vector<std::vector<Rational>> rows) -> std::vector<Rational> {
    std::size_t rank = 0;
    std::vector<int> pivots;
    for (int col = 0; col < N; ++col) {
      std::size_t piv = rank;
      while (piv < rows.size() && rows[piv][static_cast<std::size_t>(col)] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[rank], rows[piv]);
      const Rational lead = rows[rank][static_cast<std::size_t>(col)];
      for (auto& v : rows[rank]) v /= lead;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == rank || rows[i][static_cast<std::size_t>(col)] == 0) continue;
        const Rational f = rows[i][static_cast<std::size_t>(col)];
        for (int j = 0; j <= N; ++j) rows[i][static_cast<std::size_t>(j)] -= f * rows[rank][static_cast<std::size_t>(j)];
      }
      pivots.push_back(col);
      ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i)
      if (rows[i][N] != 0) return {};
    if (rank != static_cast<std::size_t>(N)) return {};
    std::vector<Rational> x(N, 0);
    for (std::size_t r = 0; r < rank; ++r) x[static_cast<std::size_t>(pivots[r])] = rows[r][N];
    return x;
  };

  std::vector<std::vector<Rational>> vertices;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    auto rows = base;
    for (int j = 0; j < N; ++j) {
      if (!(mask >> j & 1u)) continue;
      std::vector<Rational> r(N + 1, 0);
      r[static_cast<std::size_t>(j)] = 1;
      rows.push_back(r);
    }
    auto x = solve(rows);
    if (x.empty()) continue;
    bool nonneg = true;
    for (const auto& v : x) nonneg &= v >= 0;
    if (nonneg && std::find(vertices.begin(), vertices.end(), x) == vertices.end()) vertices.push_back(x);
  }
  if (vertices.size() != 1) return {};
  return vertices.front();
}

// Invariant measure of the periodic orbit of `u` (length L): p_w is the share
// of the L cyclic positions where w starts.
inline shiftmeasure::ExactTable periodic_measure(const std::string& u, int depth) {
  shiftmeasure::ExactTable t(depth);
  const std::size_t L = u.size();
  for (int n = 1; n <= depth; ++n) {
    auto level = t.level(n);
    for (std::size_t i = 0; i < L; ++i) {
      std::uint64_t code = 0;
      for (int k = 0; k < n; ++k) code = (code << 1) | static_cast<std::uint64_t>(u[(i + static_cast<std::size_t>(k)) % L] - '0');
      level[code] += Rational(1, static_cast<long>(L));
    }
  }
  return t;
}

// Random convex combination of a few periodic orbit measures: always an exact,
// valid invariant table, often with null cylinders.
template <class Rng>
shiftmeasure::ExactTable random_invariant_table(Rng& rng, int depth) {
  std::uniform_int_distribution<int> parts(1, 4), period(1, 9), bit(0, 1), weight(1, 9);
  const int k = parts(rng);
  std::vector<Rational> w;
  Rational total = 0;
  for (int i = 0; i < k; ++i) {
    w.emplace_back(weight(rng));
    total += w.back();
  }
  shiftmeasure::ExactTable out(depth);
  out.level(0)[0] = 0;
  for (int i = 0; i < k; ++i) {
    std::string u;
    const int L = period(rng);
    for (int j = 0; j < L; ++j) u.push_back(static_cast<char>('0' + bit(rng)));
    const auto part = periodic_measure(u, depth);
    for (int n = 0; n <= depth; ++n)
      for (std::size_t j = 0; j < part.level(n).size(); ++j) out.level(n)[j] += w[static_cast<std::size_t>(i)] / total * part.level(n)[j];
  }
  return out;
}

// Bernoulli(p) as a depth-1 table (p = P(symbol 0)).
inline shiftmeasure::FloatTable bernoulli_table(double p) {
  shiftmeasure::FloatTable t(1);
  t.level(1)[0] = p;
  t.level(1)[1] = 1 - p;
  return t;
}

}  // namespace testing_support
