#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spectree/enumerate.hpp"
#include "spectree/spectra.hpp"
#include "spectree/verify.hpp"

using namespace spectree;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double forest_char_poly(const std::vector<Component>& parts, double x) {
  double p = 1;
  for (const auto& c : parts) p *= char_poly_eval(c.tree, x);
  return p;
}

// Char poly identity for an edge uv: phi(T) = phi(T - uv) - phi(T - u - v).
double deletion_identity_residual(const Tree& t, int u, int v, double x) {
  std::vector<Edge> rest;
  for (const Edge& e : t.edges())
    if (!((e.u == u && e.v == v) || (e.u == v && e.v == u))) rest.push_back(e);
  // T - uv is two trees: split by reachability from u
  std::vector<bool> side(t.order(), false);
  std::vector<int> stack{u};
  side[u] = true;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (int b : t.neighbors(a))
      if (!side[b] && !(a == u && b == v)) {
        side[b] = true;
        stack.push_back(b);
      }
  }
  std::vector<bool> other(t.order());
  for (int i = 0; i < t.order(); ++i) other[i] = !side[i];
  const double minus_edge =
      forest_char_poly(induced_components(t, side), x) * forest_char_poly(induced_components(t, other), x);
  std::vector<bool> keep(t.order(), true);
  keep[u] = keep[v] = false;
  const double minus_both = t.order() == 2 ? 1.0 : forest_char_poly(induced_components(t, keep), x);
  const double lhs = char_poly_eval(t, x);
  const double rhs = minus_edge - minus_both;
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(minus_edge), std::abs(minus_both)});
}

}  // namespace

TEST_CASE("eigenvalue counts") {
  CHECK(count_eigenvalues_above(make_path(2), 0) == SignCount{1, 0, 1});
  CHECK(count_eigenvalues_above(make_star(6), 0) == SignCount{1, 4, 1});
  CHECK(count_eigenvalues_above(make_double_comet({2, 2, 3}), 1.9) == SignCount{1, 0, 6});
  CHECK(count_eigenvalues_above(make_path(1), 0) == SignCount{0, 1, 0});
}

TEST_CASE("double comet counter matches the general counter") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> pick(-6, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const int ell = 1 + trial % 7;
    const DoubleCometParams p{static_cast<int>(rng() % 15), static_cast<int>(rng() % 15), ell};
    const Tree t = make_double_comet(p);
    for (double x : {pick(rng), pick(rng), 0.0, 1.0, -1.0, std::sqrt(2.0)}) {
      CAPTURE(p.label());
      CAPTURE(x);
      const SignCount a = count_eigenvalues_above(p, x);
      const SignCount b = count_eigenvalues_above(t, x);
      CHECK(a.above + a.equal + a.below == p.order());
      CHECK(a == b);
    }
  }
}

TEST_CASE("top two of named trees") {
  const TopTwo p6 = top_two(make_path(6));
  CHECK(p6.lam1() == Approx(2 * std::cos(kPi / 7)).epsilon(1e-12));
  CHECK(p6.lam2() == Approx(2 * std::cos(2 * kPi / 7)).epsilon(1e-12));
  CHECK(p6.lam1() == Approx(1.80193).epsilon(1e-5));
  CHECK(p6.lam2() == Approx(1.24697).epsilon(1e-5));

  const TopTwo dc = top_two(make_double_comet({2, 2, 3}));
  CHECK(dc.lam1() == Approx(2).epsilon(1e-12));
  CHECK(dc.lam2() == Approx(std::sqrt(2.0)).epsilon(1e-12));

  const TopTwo star = top_two(make_star(10));
  CHECK(star.lam1() == Approx(3).epsilon(1e-12));
  CHECK(star.lam2() == Approx(0).epsilon(1e-12));
  CHECK(star.lam1_hi >= 3);

  const TopTwo k2 = top_two(make_path(2));
  CHECK(k2.lam1() == Approx(1));
  CHECK(k2.lam2() == Approx(-1));

  CHECK_THROWS_AS(top_two(make_path(1)), TreeError);
}

TEST_CASE("enclosures are certified and tight") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const Tree t = random_tree(rng, 2 + trial % 30);
    const TopTwo tt = top_two(t);
    const int n = t.order();
    CHECK(tt.lam1_lo <= tt.lam1_hi);
    CHECK(tt.lam2_lo <= tt.lam2_hi);
    CHECK(tt.lam1_hi - tt.lam1_lo <= tt.tol);
    CHECK(tt.lam2_hi - tt.lam2_lo <= tt.tol);
    CHECK(tt.lam1_lo >= tt.lam2_hi - tt.tol);
    CHECK(tt.lam1_hi <= std::sqrt(n - 1.0) + tt.tol);
    CHECK(count_eigenvalues_above(t, tt.lam1_hi).above == 0);
    CHECK(count_eigenvalues_above(t, tt.lam2_hi).above <= 1);
  }
}

TEST_CASE("the path has the smallest spectral radius") {
  for (int n = 2; n <= 12; ++n) {
    const double path = top_two(make_path(n)).lam1();
    for (const auto& t : enumerate_free_trees(n)) CHECK(path <= top_two(t).lam1() + 1e-12);
  }
}

TEST_CASE("double comet top two agrees with the built tree") {
  for (int ell = 1; ell <= 6; ++ell)
    for (int k1 = 0; k1 <= 6; ++k1)
      for (int k2 = 0; k2 <= 6; ++k2) {
        const DoubleCometParams p{k1, k2, ell};
        if (p.order() < 2) continue;
        const TopTwo a = top_two(p), b = top_two(make_double_comet(p));
        CHECK(a.lam1() == Approx(b.lam1()).epsilon(1e-11));
        CHECK(a.lam2() == Approx(b.lam2()).epsilon(1e-11));
      }
}

TEST_CASE("interlacing on vertex deletion") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const Tree t = random_tree(rng, 2 + static_cast<int>(rng() % 11));
    const int v = static_cast<int>(rng() % t.order());
    const auto lam = dense_spectrum_oracle(t);
    const auto theta = dense_spectrum_without(t, v);
    REQUIRE(theta.size() + 1 == lam.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
      CHECK(lam[i] >= theta[i] - 1e-9);
      CHECK(theta[i] >= lam[i + 1] - 1e-9);
    }
  }
}

TEST_CASE("closed forms") {
  const auto [g1, g2] = dc_top_two_closed({1, 1, 2});
  CHECK(g1 == Approx(std::sqrt((3 + std::sqrt(5.0)) / 2)).epsilon(1e-14));
  CHECK(g1 == Approx(2 * std::cos(kPi / 5)).epsilon(1e-14));
  CHECK(g1 == Approx(path_eigenvalue(4, 1)).epsilon(1e-14));
  CHECK(g2 == Approx(path_eigenvalue(4, 2)).epsilon(1e-14));

  const auto [a1, a2] = dc_top_two_closed({1, 2, 3});
  CHECK(a1 == Approx(1.90211).epsilon(1e-5));
  CHECK(a2 == Approx(1.17557).epsilon(1e-5));

  const auto [b1, b2] = dc_top_two_closed({12, 12, 2});
  CHECK(b1 == Approx(4).epsilon(1e-14));
  CHECK(b2 == Approx(3).epsilon(1e-14));

  CHECK_THROWS_AS(dc_top_two_closed({2, 2, 4}), TreeError);
  CHECK_THROWS_AS(dc_char_quartic({2, 2, 1}), TreeError);
}

TEST_CASE("quartic factors") {
  using Q = std::array<long long, 5>;
  CHECK(dc_char_quartic({2, 2, 3}) == Q{8, 0, -6, 0, 1});
  CHECK(dc_char_quartic({12, 12, 2}) == Q{144, 0, -25, 0, 1});
  CHECK(dc_char_quartic({0, 1, 3}) == Q{1, 0, -3, 0, 1});
  // the quartic times x^(n-4) is the characteristic polynomial
  for (const DoubleCometParams p : {DoubleCometParams{3, 2, 3}, DoubleCometParams{4, 1, 2}, DoubleCometParams{5, 3, 2}}) {
    const auto c = dc_char_quartic(p);
    const Tree t = make_double_comet(p);
    for (double x : {0.3, 1.1, 2.7}) {
      const double q = c[0] + c[2] * x * x + c[4] * x * x * x * x;
      const double full = q * std::pow(x, p.order() - 4);
      CHECK(char_poly_eval(t, x) == Approx(full).epsilon(1e-10));
    }
  }
}

TEST_CASE("characteristic polynomial evaluation") {
  CHECK(char_poly_eval(make_path(2), 2) == Approx(3));
  CHECK(char_poly_eval(make_path(4), 0) == Approx(1));
  CHECK(char_poly_eval(make_path(1), 0.5) == Approx(0.5));
  CHECK(char_poly_eval(make_star(6), 0) == 0);
  CHECK(char_poly_eval(make_path(2), 1) == 0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pick(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const Tree t = random_tree(rng, 2 + static_cast<int>(rng() % 8));
    const auto edges = t.edges();
    const Edge e = edges[rng() % edges.size()];
    CHECK(deletion_identity_residual(t, e.u, e.v, pick(rng)) <= 1e-8);
  }
}

TEST_CASE("path eigenvalues") {
  CHECK(path_eigenvalue(2, 1) == Approx(1));
  CHECK(path_eigenvalue(6, 1) == Approx(1.80193).epsilon(1e-5));
  CHECK(path_eigenvalue(6, 2) == Approx(1.24697).epsilon(1e-5));
  CHECK_THROWS_AS(path_eigenvalue(6, 0), TreeError);
  CHECK_THROWS_AS(path_eigenvalue(6, 7), TreeError);
}

TEST_CASE("dense oracle") {
  const auto star = dense_spectrum_oracle(make_star(6));
  REQUIRE(star.size() == 6);
  CHECK(star[0] == Approx(std::sqrt(5.0)).epsilon(1e-12));
  for (int i = 1; i <= 4; ++i) CHECK(std::abs(star[i]) < 1e-12);
  CHECK(star[5] == Approx(-std::sqrt(5.0)).epsilon(1e-12));

  const auto p6 = dense_spectrum_oracle(make_path(6));
  for (int j = 1; j <= 6; ++j) CHECK(p6[j - 1] == Approx(2 * std::cos(kPi * j / 7)).epsilon(1e-12));

  const auto dc = dense_spectrum_oracle(make_double_comet({2, 2, 3}));
  const double want[] = {2, std::sqrt(2.0), 0, 0, 0, -std::sqrt(2.0), -2};
  for (int i = 0; i < 7; ++i) CHECK(std::abs(dc[i] - want[i]) < 1e-12);

  CHECK(dense_eigensystem(make_path(30)).off_norm < 1e-12);
  CHECK_THROWS_AS(dense_spectrum_oracle(make_path(kMaxOracleOrder + 1)), TreeError);
}

TEST_CASE("eigenvectors") {
  const EigenvectorData perron = eigenvector(make_star(4), 1);
  const double s6 = std::sqrt(6.0);
  CHECK(perron.entries[0] == Approx(std::sqrt(3.0) / s6).epsilon(1e-10));
  for (int v = 1; v < 4; ++v) CHECK(perron.entries[v] == Approx(1 / s6).epsilon(1e-10));

  const EigenvectorData dc = eigenvector(make_double_comet({2, 2, 3}), 2);
  CHECK(std::abs(dc.entries[1]) < 1e-10);
  CHECK(dc.zero == std::vector<int>{1});
  CHECK(dc.entries[0] * dc.entries[2] < 0);
  CHECK(dc.entries[0] > 0);  // smallest supported vertex is positive

  const EigenvectorData p3 = eigenvector(make_path(3), 2);
  CHECK(p3.lambda == Approx(0).epsilon(1e-12));
  CHECK(p3.entries[0] == Approx(1 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(std::abs(p3.entries[1]) < 1e-10);
  CHECK(p3.entries[2] == Approx(-1 / std::sqrt(2.0)).epsilon(1e-10));

  CHECK(eigenvector(make_star(6), 2).multiplicity == 4);
}

TEST_CASE("eigenvector invariants on random trees") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 150; ++trial) {
    const Tree t = random_tree(rng, 2 + trial % 40);
    for (int which : {1, 2}) {
      const EigenvectorData ev = eigenvector(t, which);
      double norm = 0;
      for (double z : ev.entries) norm += z * z;
      CHECK(std::sqrt(norm) == Approx(1).epsilon(1e-12));
      CHECK(ev.residual <= 1e-8);
      CHECK(ev.positive.size() + ev.negative.size() + ev.zero.size() == ev.entries.size());
      if (which == 1) {
        CHECK(ev.negative.empty());
        CHECK(ev.zero.empty());
        for (double z : ev.entries) CHECK(z > 0);
      }
    }
  }
}

TEST_CASE("spectral center examples") {
  const CenterReport dc = spectral_center(make_double_comet({2, 2, 3}));
  CHECK(dc.kind == CenterKind::vertex);
  CHECK(dc.vertex == 1);
  CHECK(dc.lam1_h1 == Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(dc.lam1_h2 == Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(dc.holds);

  const CenterReport p4 = spectral_center(make_path(4));
  CHECK(p4.kind == CenterKind::edge);
  CHECK(std::min(p4.a, p4.b) == 1);
  CHECK(std::max(p4.a, p4.b) == 2);
  CHECK(p4.holds);
  CHECK(p4.lam1_h1_minus_a < p4.lambda2);
  CHECK(p4.lambda2 < p4.lam1_h1);

  const CenterReport p5 = spectral_center(make_path(5));
  CHECK(p5.kind == CenterKind::vertex);
  CHECK(p5.vertex == 2);
  CHECK(p5.lambda2 == Approx(1).epsilon(1e-10));
  CHECK(p5.lam1_h1 == Approx(1).epsilon(1e-9));
  CHECK(p5.holds);

  const CenterReport star = spectral_center(make_star(6));
  CHECK(star.kind == CenterKind::degenerate);
  CHECK(star.multiplicity == 4);
}

TEST_CASE("spectral center sets are disjoint subtrees") {
  for (int n = 3; n <= 9; ++n)
    for (const auto& t : enumerate_free_trees(n)) {
      const CenterReport c = spectral_center(t);
      if (c.kind == CenterKind::degenerate) continue;
      std::vector<bool> seen(n, false);
      for (int v : c.h1) seen[v] = true;
      for (int v : c.h2) CHECK_FALSE(seen[v]);
      std::vector<bool> k1(n, false), k2(n, false);
      for (int v : c.h1) k1[v] = true;
      for (int v : c.h2) k2[v] = true;
      CHECK(induced_components(t, k1).size() == 1);
      CHECK(induced_components(t, k2).size() == 1);
    }
}

TEST_CASE("local eigen-equations") {
  const Tree star = make_star(8);
  const auto [r1, r2] = local_equation_residuals(star, eigenvector(star, 1));
  CHECK(r1 < 1e-12);
  CHECK(r2 < 1e-12);

  for (const auto& t : enumerate_free_trees(9)) {
    const auto es = dense_eigensystem(t);
    for (std::size_t j = 0; j < es.values.size(); ++j) {
      EigenvectorData ev;
      ev.lambda = es.values[j];
      ev.entries = es.vectors[j];
      const auto [a, b] = local_equation_residuals(t, ev);
      CHECK(a <= 1e-8);
      CHECK(b <= 1e-8);
    }
  }

  const Tree p = make_path(7);
  EigenvectorData bad = eigenvector(p, 2);
  bad.entries[3] += 0.01;
  CHECK(local_equation_residuals(p, bad).first > 1e-3);
}

TEST_CASE("eigenvector-eigenvalue identity") {
  CHECK(ev_ev_identity_residual(make_star(4), 1, 0) <= 1e-10);
  CHECK(ev_ev_identity_residual(make_path(3), 1, 0) <= 1e-10);
  // a vertex where the lambda2 vector vanishes: both sides are zero
  CHECK(ev_ev_identity_residual(make_double_comet({2, 2, 3}), 2, 1) <= 1e-10);
  CHECK_THROWS_AS(ev_ev_identity_residual(make_star(5), 2, 0), TreeError);
}

TEST_CASE("quadratic form bound") {
  const Tree t = make_double_comet({3, 3, 2});
  const auto es = dense_eigensystem(t);
  const double top = es.values[0] + es.values[1];
  CHECK(spectral_sum_lower_bound(t, es.vectors[0], es.vectors[1]) == Approx(top).epsilon(1e-10));

  // one star half and the other, as unit indicators
  const int n = t.order();
  std::vector<double> x(n, 0), y(n, 0);
  const std::vector<int> left = {0, 2, 3, 4}, right = {1, 5, 6, 7};
  for (int v : left) x[v] = 0.5;
  for (int v : right) y[v] = 0.5;
  const double bound = spectral_sum_lower_bound(t, x, y);
  CHECK(std::isfinite(bound));
  CHECK(bound <= top + 1e-8);

  std::vector<double> not_unit(n, 1.0);
  CHECK_THROWS_AS(spectral_sum_lower_bound(t, not_unit, y), TreeError);
  CHECK_THROWS_AS(spectral_sum_lower_bound(t, x, x), TreeError);
}
