#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spectree/tree.hpp"

namespace spectree {

inline constexpr double kDefaultTol = 1e-12;
inline constexpr int kMaxOracleOrder = 64;

struct SignCount {
  int above = 0;
  int equal = 0;
  int below = 0;
  friend bool operator==(const SignCount&, const SignCount&) = default;
};

/// Inertia of A - xI by leaf-to-root elimination. Exact for the double x
/// actually used, up to rounding in the pivots.
SignCount count_eigenvalues_above(const Tree& t, double x);
/// O(ell) pass specialized to double comets (falls back to the general
/// pass on a zero pivot).
SignCount count_eigenvalues_above(const DoubleCometParams& p, double x);

/// Reusable elimination order for repeated counts on one tree. Holds a
/// scratch buffer, so one instance must not be shared across threads.
class TreeEliminator {
 public:
  explicit TreeEliminator(const Tree& t);
  int order() const noexcept { return static_cast<int>(order_.size()); }
  SignCount count(double x) const;
  /// Product of the pivots of A - xI (det(A - xI)).
  double pivot_product(double x) const;

 private:
  void eliminate(double x) const;

  std::vector<int> order_;   // BFS order from vertex 0
  std::vector<int> parent_;
  mutable std::vector<double> pivot_;
  mutable std::vector<char> cut_;  // edge to parent severed
  mutable std::vector<int> zero_child_;
};

struct TopTwo {
  double lam1_lo = 0, lam1_hi = 0;
  double lam2_lo = 0, lam2_hi = 0;
  double tol = kDefaultTol;

  double lam1() const noexcept { return 0.5 * (lam1_lo + lam1_hi); }
  double lam2() const noexcept { return 0.5 * (lam2_lo + lam2_hi); }
};

TopTwo top_two(const Tree& t, double tol = kDefaultTol);
TopTwo top_two(const DoubleCometParams& p, double tol = kDefaultTol);

/// Largest eigenvalue; 0 for a single vertex.
double spectral_radius(const Tree& t, double tol = kDefaultTol);
/// Largest eigenvalue of a forest given as components.
double spectral_radius(const std::vector<Component>& forest, double tol = kDefaultTol);

/// Multiplicity of lambda2 given an enclosure from top_two.
int lambda2_multiplicity(const Tree& t, const TopTwo& tt);

/// Closed forms for ell in {2, 3}: returns (lambda1, lambda2).
std::pair<double, double> dc_top_two_closed(const DoubleCometParams& p);

/// Coefficients c[0..4] (ascending) of the degree-4 factor of the
/// characteristic polynomial; the rest of the spectrum is zero.
std::array<long long, 5> dc_char_quartic(const DoubleCometParams& p);

/// det(xI - A).
double char_poly_eval(const Tree& t, double x);

/// 2cos(pi j / (n+1)), the j-th largest eigenvalue of the path on n vertices.
double path_eigenvalue(int n, int j);

struct DenseEigensystem {
  std::vector<double> values;                // descending
  std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i]
  double off_norm = 0;                       // final off-diagonal Frobenius norm
};

/// Cyclic Jacobi on a dense symmetric row-major matrix.
DenseEigensystem jacobi_eigensystem(std::vector<double> a, int n);
DenseEigensystem dense_eigensystem(const Tree& t);
std::vector<double> dense_spectrum_oracle(const Tree& t);
/// Spectrum of T - v (a forest), descending.
std::vector<double> dense_spectrum_without(const Tree& t, int v);

struct EigenvectorData {
  double lambda = 0;
  std::vector<double> entries;
  std::vector<int> positive, negative, zero;
  double tau = 0;
  double residual = 0;  // max |(A z - lambda z)_v|
  int multiplicity = 1;
};

/// which = 1: Perron vector (all entries > 0). which = 2: lambda2 vector,
/// oriented so the smallest supported vertex is positive. Support
/// threshold tau = 1e-8 * max|entry|.
EigenvectorData eigenvector(const Tree& t, int which, double tol = kDefaultTol);

/// Recomputes support sets and orientation of an arbitrary vector.
void classify_support(EigenvectorData& ev, bool orient);

enum class CenterKind { vertex, edge, degenerate };

struct CenterReport {
  CenterKind kind = CenterKind::degenerate;
  int vertex = -1;  // spectral vertex
  int a = -1;       // root of H1
  int b = -1;       // root of H2
  std::vector<int> h1, h2;
  double lambda2 = 0;
  double lam1_h1 = 0, lam1_h2 = 0;
  double lam1_h1_minus_a = 0, lam1_h2_minus_b = 0;
  int multiplicity = 1;
  double tau = 0;
  bool holds = false;  // the vertex equalities or the edge sandwich
  std::string note;
};

CenterReport spectral_center(const Tree& t);

/// Max residuals of the distance-2 and distance-3 eigen-equations.
std::pair<double, double> local_equation_residuals(const Tree& t, const EigenvectorData& ev);

/// |x_v|^2 prod_{i != k}(l_k - l_i) against prod_i (l_k - theta_i) with
/// theta the spectrum of T - v; difference scaled by prod_{i != k}|l_k - l_i|.
double ev_ev_identity_residual(const Tree& t, int k, int v);

/// x'Ax + y'Ay for orthonormal x, y.
double spectral_sum_lower_bound(const Tree& t, std::span<const double> x, std::span<const double> y);

/// Dense adjacency matrix, row-major.
std::vector<double> adjacency_matrix(const Tree& t);

}  // namespace spectree
