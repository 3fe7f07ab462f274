#include "spectree/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace spectree {

namespace {

bool is_star(const Tree& t) { return t.order() >= 2 && max_degree(t) == t.order() - 1; }

void tally(SignCount& c, double d, int times = 1) {
  if (d > 0)
    c.above += times;
  else if (d < 0)
    c.below += times;
  else
    c.equal += times;
}

// Interval bisection for the two largest eigenvalues driven by an
// eigenvalue counter. Counts are the only source of truth: an update is
// applied only in the direction the count certifies.
template <class Above>
TopTwo bisect_top_two(int n, Above&& above, double tol) {
  double lo1 = 0;
  double hi1 = std::sqrt(static_cast<double>(n - 1));
  // The bracket must be certified; rounding in sqrt can land just below.
  while (above(hi1) > 0) hi1 += 1e-12 * (1 + hi1);
  double lo2 = 0;
  double hi2 = hi1;
  if (above(0.0) < 2) lo2 = -hi1;  // lambda2 <= 0: stars and K2

  auto probe = [&](double m) {
    const int a = above(m);
    if (a == 0) hi1 = std::min(hi1, m);
    if (a >= 1) lo1 = std::max(lo1, m);
    if (a <= 1) hi2 = std::min(hi2, m);
    if (a >= 2) lo2 = std::max(lo2, m);
  };
  while (hi1 - lo1 > tol) {
    const double m = lo1 + 0.5 * (hi1 - lo1);
    if (m <= lo1 || m >= hi1) break;
    probe(m);
  }
  hi2 = std::min(hi2, hi1);
  while (hi2 - lo2 > tol) {
    const double m = lo2 + 0.5 * (hi2 - lo2);
    if (m <= lo2 || m >= hi2) break;
    probe(m);
  }
  TopTwo r;
  r.lam1_lo = lo1;
  r.lam1_hi = hi1;
  r.lam2_lo = lo2;
  r.lam2_hi = hi2;
  r.tol = std::max({tol, hi1 - lo1, hi2 - lo2});
  return r;
}

TopTwo star_top_two(int n) {
  TopTwo r;
  if (n == 2) {
    r.lam1_lo = r.lam1_hi = 1;
    r.lam2_lo = r.lam2_hi = -1;
  } else {
    const double s = std::sqrt(static_cast<double>(n - 1));
    r.lam1_lo = std::nextafter(s, 0.0);
    r.lam1_hi = std::nextafter(s, 2 * s);
    r.lam2_lo = r.lam2_hi = 0;
  }
  r.tol = r.lam1_hi - r.lam1_lo;
  return r;
}

void check_oracle_order(int n) {
  if (n > kMaxOracleOrder)
    throw TreeError(TreeErrorKind::bad_parameters,
                    "dense oracle limited to order " + std::to_string(kMaxOracleOrder));
}

}  // namespace

TreeEliminator::TreeEliminator(const Tree& t) {
  const int n = t.order();
  parent_.assign(n, -1);
  order_.reserve(n);
  std::vector<char> seen(n, 0);
  order_.push_back(0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const int v = order_[i];
    for (int w : t.neighbors(v)) {
      if (seen[w]) continue;
      seen[w] = 1;
      parent_[w] = v;
      order_.push_back(w);
    }
  }
  pivot_.resize(n);
  cut_.resize(n);
  zero_child_.resize(n);
}

void TreeEliminator::eliminate(double x) const {
  const int n = order();
  auto& zero_child = zero_child_;  // some child whose pivot came out exactly zero
  std::fill(zero_child.begin(), zero_child.end(), -1);
  std::fill(pivot_.begin(), pivot_.end(), -x);
  std::fill(cut_.begin(), cut_.end(), 0);
  for (int i = n - 1; i >= 0; --i) {
    const int v = order_[i];
    if (zero_child[v] >= 0) {
      pivot_[zero_child[v]] = 2;
      pivot_[v] = -0.5;
      cut_[v] = 1;
    }
    const int p = parent_[v];
    if (p < 0 || cut_[v]) continue;
    if (pivot_[v] == 0)
      zero_child[p] = v;
    else
      pivot_[p] -= 1.0 / pivot_[v];
  }
}

SignCount TreeEliminator::count(double x) const {
  eliminate(x);
  SignCount c;
  for (double d : pivot_) tally(c, d);
  return c;
}

double TreeEliminator::pivot_product(double x) const {
  eliminate(x);
  double prod = 1;
  for (double d : pivot_) prod *= d;
  return prod;
}

SignCount count_eigenvalues_above(const Tree& t, double x) { return TreeEliminator(t).count(x); }

SignCount count_eigenvalues_above(const DoubleCometParams& p, double x) {
  validate(p);
  if (p.ell == 1 || x == 0.0) return count_eigenvalues_above(make_double_comet(p), x);
  SignCount c;
  tally(c, -x, p.k1 + p.k2);
  // path vertex 1 carries k1 leaves, path vertex ell carries k2
  double a = -x + p.k1 / x;
  for (int i = 2; i <= p.ell; ++i) {
    if (a == 0.0) return count_eigenvalues_above(make_double_comet(p), x);
    tally(c, a);
    a = -x - 1.0 / a;
  }
  a += p.k2 / x;
  tally(c, a);
  return c;
}

TopTwo top_two(const Tree& t, double tol) {
  const int n = t.order();
  if (n < 2) throw TreeError(TreeErrorKind::bad_parameters, "lambda2 needs at least two vertices");
  if (!(tol > 0)) throw TreeError(TreeErrorKind::bad_parameters, "tolerance must be positive");
  if (is_star(t)) return star_top_two(n);
  TreeEliminator e(t);
  return bisect_top_two(n, [&](double x) { return e.count(x).above; }, tol);
}

TopTwo top_two(const DoubleCometParams& p, double tol) {
  validate(p);
  const int n = p.order();
  if (n < 2) throw TreeError(TreeErrorKind::bad_parameters, "lambda2 needs at least two vertices");
  if (!(tol > 0)) throw TreeError(TreeErrorKind::bad_parameters, "tolerance must be positive");
  const DoubleCometParams q = normalize(p);
  if (q.ell == 1) return star_top_two(n);
  return bisect_top_two(n, [&](double x) { return count_eigenvalues_above(q, x).above; }, tol);
}

double spectral_radius(const Tree& t, double tol) {
  if (t.order() == 1) return 0;
  return top_two(t, tol).lam1();
}

double spectral_radius(const std::vector<Component>& forest, double tol) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : forest) best = std::max(best, spectral_radius(c.tree, tol));
  return best;
}

int lambda2_multiplicity(const Tree& t, const TopTwo& tt) {
  TreeEliminator e(t);
  return e.count(tt.lam2_lo - 1e-9).above - e.count(tt.lam2_hi + 1e-9).above;
}

std::pair<double, double> dc_top_two_closed(const DoubleCometParams& p) {
  validate(p);
  if (p.ell != 2 && p.ell != 3)
    throw TreeError(TreeErrorKind::bad_parameters, "closed form only for path order 2 or 3");
  if (p.k1 + p.k2 < 1) throw TreeError(TreeErrorKind::bad_parameters, "closed form needs a leaf");
  const auto c = dc_char_quartic(p);
  // x^4 + c2 x^2 + c0 with c2 = -(n-1)
  const double b = static_cast<double>(-c[2]);
  const double c0 = static_cast<double>(c[0]);
  const double disc = std::sqrt(b * b - 4 * c0);
  const double big = 0.5 * (b + disc);
  const double small = big > 0 ? c0 / big : 0;  // avoids cancellation
  return {std::sqrt(big), std::sqrt(std::max(0.0, small))};
}

std::array<long long, 5> dc_char_quartic(const DoubleCometParams& p) {
  validate(p);
  if (p.ell != 2 && p.ell != 3)
    throw TreeError(TreeErrorKind::bad_parameters, "quartic factor only for path order 2 or 3");
  const long long k1 = p.k1, k2 = p.k2, n = p.order();
  const long long c0 = p.ell == 2 ? k1 * k2 : k1 * k2 + k1 + k2;
  return {c0, 0, -(n - 1), 0, 1};
}

double char_poly_eval(const Tree& t, double x) {
  const double det = TreeEliminator(t).pivot_product(x);
  return t.order() % 2 == 0 ? det : -det;
}

double path_eigenvalue(int n, int j) {
  if (n < 1 || j < 1 || j > n)
    throw TreeError(TreeErrorKind::out_of_range, "path eigenvalue index out of range");
  return 2 * std::cos(M_PI * j / (n + 1));
}

std::vector<double> adjacency_matrix(const Tree& t) {
  const int n = t.order();
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (const Edge& e : t.edges()) {
    a[e.u * n + e.v] = 1;
    a[e.v * n + e.u] = 1;
  }
  return a;
}

DenseEigensystem jacobi_eigensystem(std::vector<double> a, int n) {
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1;
  auto off_norm = [&] {
    double s = 0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (p != q) s += a[p * n + q] * a[p * n + q];
    return std::sqrt(s);
  };
  double off = off_norm();
  for (int sweep = 0; sweep < 100 && off >= 1e-12; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0) continue;
        const double app = a[p * n + p], aqq = a[q * n + q];
        const double theta = (aqq - app) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = a[p * n + k] = c * akp - s * akq;
          a[k * n + q] = a[q * n + k] = s * akp + c * akq;
        }
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
    off = off_norm();
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return a[i * n + i] > a[j * n + j]; });
  DenseEigensystem es;
  es.off_norm = off;
  for (int i : idx) {
    es.values.push_back(a[i * n + i]);
    std::vector<double> col(n);
    for (int k = 0; k < n; ++k) col[k] = v[k * n + i];
    es.vectors.push_back(std::move(col));
  }
  return es;
}

DenseEigensystem dense_eigensystem(const Tree& t) {
  check_oracle_order(t.order());
  return jacobi_eigensystem(adjacency_matrix(t), t.order());
}

std::vector<double> dense_spectrum_oracle(const Tree& t) { return dense_eigensystem(t).values; }

std::vector<double> dense_spectrum_without(const Tree& t, int v) {
  t.check_vertex(v);
  check_oracle_order(t.order());
  const int n = t.order();
  const int m = n - 1;
  std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
  auto idx = [v](int u) { return u < v ? u : u - 1; };
  for (const Edge& e : t.edges()) {
    if (e.u == v || e.v == v) continue;
    a[idx(e.u) * m + idx(e.v)] = 1;
    a[idx(e.v) * m + idx(e.u)] = 1;
  }
  return jacobi_eigensystem(std::move(a), m).values;
}

void classify_support(EigenvectorData& ev, bool orient) {
  double mx = 0;
  for (double z : ev.entries) mx = std::max(mx, std::abs(z));
  ev.tau = 1e-8 * mx;
  if (orient) {
    for (double z : ev.entries) {
      if (std::abs(z) <= ev.tau) continue;
      if (z < 0)
        for (double& w : ev.entries) w = -w;
      break;
    }
  }
  ev.positive.clear();
  ev.negative.clear();
  ev.zero.clear();
  for (int v = 0; v < static_cast<int>(ev.entries.size()); ++v) {
    const double z = ev.entries[v];
    if (z > ev.tau)
      ev.positive.push_back(v);
    else if (z < -ev.tau)
      ev.negative.push_back(v);
    else
      ev.zero.push_back(v);
  }
}

namespace {

// Solves (A - sigma I) y = b by elimination toward vertex 0.
std::vector<double> shifted_solve(const Tree& t, const std::vector<int>& order,
                                  const std::vector<int>& parent, double sigma,
                                  const std::vector<double>& b) {
  const int n = t.order();
  std::vector<double> d(n, -sigma), r(b);
  for (int i = n - 1; i >= 0; --i) {
    const int v = order[i];
    if (d[v] == 0) d[v] = std::numeric_limits<double>::min();
    const int p = parent[v];
    if (p < 0) continue;
    d[p] -= 1.0 / d[v];
    r[p] -= r[v] / d[v];
  }
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    const int p = parent[v];
    y[v] = ((p < 0 ? r[v] : r[v] - y[p])) / d[v];
  }
  return y;
}

double normalize_vec(std::vector<double>& y) {
  double s = 0;
  for (double z : y) s += z * z;
  s = std::sqrt(s);
  if (s > 0 && std::isfinite(s))
    for (double& z : y) z /= s;
  return s;
}

void finish_eigenpair(const Tree& t, EigenvectorData& ev) {
  const int n = t.order();
  double rq = 0;
  for (const Edge& e : t.edges()) rq += 2 * ev.entries[e.u] * ev.entries[e.v];
  ev.lambda = rq;
  ev.residual = 0;
  for (int v = 0; v < n; ++v) {
    double s = -ev.lambda * ev.entries[v];
    for (int w : t.neighbors(v)) s += ev.entries[w];
    ev.residual = std::max(ev.residual, std::abs(s));
  }
}

}  // namespace

EigenvectorData eigenvector(const Tree& t, int which, double tol) {
  const int n = t.order();
  if (which != 1 && which != 2) throw TreeError(TreeErrorKind::bad_parameters, "which must be 1 or 2");
  const TopTwo tt = top_two(t, tol);
  EigenvectorData ev;
  ev.multiplicity = which == 1 ? 1 : lambda2_multiplicity(t, tt);
  const double target = which == 1 ? tt.lam1() : tt.lam2();

  std::vector<int> order, parent(n, -1);
  {
    std::vector<char> seen(n, 0);
    order.push_back(0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int w : t.neighbors(order[i]))
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = order[i];
          order.push_back(w);
        }
  }

  std::mt19937_64 rng(0x5eed + which);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  std::vector<double> y(n);
  for (int v = 0; v < n; ++v) y[v] = which == 1 ? 1.0 : unif(rng) * (v % 2 ? -1 : 1);
  normalize_vec(y);

  double sigma = target;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<double> cur = y;
    bool ok = true;
    for (int it = 0; it < 4 && ok; ++it) {
      cur = shifted_solve(t, order, parent, sigma, cur);
      ok = std::isfinite(normalize_vec(cur));
    }
    if (ok) {
      y = std::move(cur);
      break;
    }
    sigma = target + (attempt + 1) * std::max(tol, 1e-13);
  }
  ev.entries = std::move(y);
  classify_support(ev, true);
  finish_eigenpair(t, ev);

  // An ill-conditioned elimination (tiny interior pivots) can spoil the
  // solve; the dense system is a dependable fallback at oracle sizes.
  if (ev.residual > 1e-9 && n <= kMaxOracleOrder) {
    const auto es = dense_eigensystem(t);
    ev.entries = es.vectors[which - 1];
    classify_support(ev, true);
    finish_eigenpair(t, ev);
  }
  return ev;
}

CenterReport spectral_center(const Tree& t) {
  CenterReport r;
  const EigenvectorData ev = eigenvector(t, 2);
  r.lambda2 = ev.lambda;
  r.multiplicity = ev.multiplicity;
  r.tau = ev.tau;
  if (ev.multiplicity > 1) {
    r.note = "lambda2 has multiplicity " + std::to_string(ev.multiplicity);
    return r;
  }
  const int n = t.order();
  r.h1 = ev.positive;
  r.h2 = ev.negative;
  std::vector<bool> in1(n, false), in2(n, false);
  for (int v : r.h1) in1[v] = true;
  for (int v : r.h2) in2[v] = true;

  if (ev.zero.empty()) {
    for (int a : r.h1)
      for (int b : t.neighbors(a))
        if (in2[b] && r.a < 0) {
          r.a = a;
          r.b = b;
        }
    if (r.a >= 0) r.kind = CenterKind::edge;
  } else {
    for (int v : ev.zero) {
      int a = -1, b = -1;
      for (int w : t.neighbors(v)) {
        if (in1[w] && a < 0) a = w;
        if (in2[w] && b < 0) b = w;
      }
      if (a >= 0 && b >= 0) {
        r.kind = CenterKind::vertex;
        r.vertex = v;
        r.a = a;
        r.b = b;
        break;
      }
    }
  }
  if (r.kind == CenterKind::degenerate) {
    r.note = "no separating vertex or edge found";
    return r;
  }

  const auto c1 = induced_components(t, in1);
  const auto c2 = induced_components(t, in2);
  if (c1.size() != 1 || c2.size() != 1) {
    r.note = "supports are not connected";
    return r;
  }
  r.lam1_h1 = spectral_radius(c1);
  r.lam1_h2 = spectral_radius(c2);
  in1[r.a] = false;
  in2[r.b] = false;
  r.lam1_h1_minus_a = spectral_radius(induced_components(t, in1));
  r.lam1_h2_minus_b = spectral_radius(induced_components(t, in2));

  const double l2 = r.lambda2;
  if (r.kind == CenterKind::vertex) {
    r.holds = std::abs(r.lam1_h1 - l2) <= 1e-7 && std::abs(r.lam1_h2 - l2) <= 1e-7;
  } else {
    constexpr double m = 1e-9;
    r.holds = r.lam1_h1_minus_a < l2 - m && l2 < r.lam1_h1 - m && r.lam1_h2_minus_b < l2 - m &&
              l2 < r.lam1_h2 - m;
  }
  return r;
}

std::pair<double, double> local_equation_residuals(const Tree& t, const EigenvectorData& ev) {
  const int n = t.order();
  if (static_cast<int>(ev.entries.size()) != n)
    throw TreeError(TreeErrorKind::bad_parameters, "eigenvector length does not match tree order");
  const double lam = ev.lambda;
  const auto& z = ev.entries;
  double r1 = 0, r2 = 0;
  for (int u = 0; u < n; ++u) {
    const auto dist = bfs_distances(t, u);
    double two = 0, three = 0, nb = 0;
    for (int w = 0; w < n; ++w) {
      if (dist[w] == 2) two += z[w];
      if (dist[w] == 3) three += z[w];
      if (dist[w] == 1) nb += z[w] * (t.degree(w) - 1);
    }
    const double du = t.degree(u);
    r1 = std::max(r1, std::abs(lam * lam * z[u] - (du * z[u] + two)));
    r2 = std::max(r2, std::abs(lam * (lam * lam - du) * z[u] - (nb + three)));
  }
  return {r1, r2};
}

double ev_ev_identity_residual(const Tree& t, int k, int v) {
  const int n = t.order();
  if (n < 2) throw TreeError(TreeErrorKind::bad_parameters, "identity needs at least two vertices");
  if (k < 1 || k > n) throw TreeError(TreeErrorKind::out_of_range, "eigenvalue index out of range");
  t.check_vertex(v);
  const auto es = dense_eigensystem(t);
  const auto& lam = es.values;
  const double lk = lam[k - 1];
  if ((k > 1 && std::abs(lam[k - 2] - lk) < 1e-8) || (k < n && std::abs(lam[k] - lk) < 1e-8))
    throw TreeError(TreeErrorKind::bad_parameters, "eigenvalue is not simple");
  const auto theta = dense_spectrum_without(t, v);
  const double xv = es.vectors[k - 1][v];
  double lhs = xv * xv, scale = 1, rhs = 1;
  for (int i = 0; i < n; ++i) {
    if (i == k - 1) continue;
    lhs *= lk - lam[i];
    scale *= std::abs(lk - lam[i]);
  }
  for (double th : theta) rhs *= lk - th;
  return std::abs(lhs - rhs) / scale;
}

double spectral_sum_lower_bound(const Tree& t, std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<std::size_t>(t.order());
  if (x.size() != n || y.size() != n)
    throw TreeError(TreeErrorKind::bad_parameters, "vector length does not match tree order");
  double xx = 0, yy = 0, xy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    xx += x[i] * x[i];
    yy += y[i] * y[i];
    xy += x[i] * y[i];
  }
  if (std::abs(xx - 1) > 1e-10 || std::abs(yy - 1) > 1e-10 || std::abs(xy) > 1e-10)
    throw TreeError(TreeErrorKind::bad_parameters, "vectors must be orthonormal");
  double s = 0;
  for (const Edge& e : t.edges()) s += 2 * (x[e.u] * x[e.v] + y[e.u] * y[e.v]);
  return s;
}

}  // namespace spectree
