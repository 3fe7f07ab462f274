#include "spectree/transforms.hpp"

#include <algorithm>

#include "spectree/spectra.hpp"

namespace spectree {

namespace {

TreeError bad(const std::string& what) { return TreeError(TreeErrorKind::bad_parameters, what); }

void fill_spectra(TransformOutcome& out) {
  const TopTwo b = top_two(out.before);
  const TopTwo a = top_two(out.after);
  out.quantities["lambda1_before"] = b.lam1();
  out.quantities["lambda2_before"] = b.lam2();
  out.quantities["lambda1_after"] = a.lam1();
  out.quantities["lambda2_after"] = a.lam2();
}

// Free end of the pendant path that starts at w and leads away from root,
// with its order; order 0 when the branch is not a bare path.
std::pair<int, int> pendant_path(const Tree& t, int root, int w) {
  int prev = root, cur = w, len = 1;
  while (true) {
    const int d = t.degree(cur);
    if (d == 1) return {cur, len};
    if (d != 2) return {-1, 0};
    const auto nb = t.neighbors(cur);
    const int next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
    ++len;
  }
}

}  // namespace

TransformOutcome kelmans(const Tree& t, int u, int v) {
  t.check_vertex(u);
  t.check_vertex(v);
  if (u == v) throw bad("kelmans needs two distinct vertices");
  if (distance(t, u, v) > 2)
    throw bad("kelmans on vertices at distance > 2 does not produce a tree");

  bool subset = true;
  std::vector<Edge> edges;
  for (const Edge& e : t.edges()) {
    const bool touches_u = e.u == u || e.v == u;
    const int a = e.u == u ? e.v : e.u;
    if (touches_u && a != v && !t.adjacent(a, v)) {
      subset = false;
      edges.push_back({v, a});
    } else {
      edges.push_back(e);
    }
  }
  // With v's side contained in u's the result is isomorphic to t, so
  // strictness needs non-containment in both directions.
  bool v_subset = true;
  for (int b : t.neighbors(v))
    if (b != u && !t.adjacent(b, u)) v_subset = false;
  TransformOutcome out{t, Tree::from_edges(t.order(), edges), {}, !subset && !v_subset};
  fill_spectra(out);
  out.quantities["u_side_not_contained"] = subset ? 0 : 1;
  out.quantities["v_side_not_contained"] = v_subset ? 0 : 1;
  return out;
}

TransformOutcome rotate(const Tree& t, int u, int v, int w) {
  t.check_vertex(u);
  t.check_vertex(v);
  t.check_vertex(w);
  if (u == w || !t.adjacent(u, v) || !t.adjacent(v, w))
    throw bad("rotation needs a path u - v - w");
  std::vector<Edge> edges;
  for (const Edge& e : t.edges()) {
    if ((e.u == v && e.v == w) || (e.u == w && e.v == v))
      edges.push_back({u, w});
    else
      edges.push_back(e);
  }
  TransformOutcome out{t, Tree::from_edges(t.order(), edges), {}, true};
  fill_spectra(out);
  return out;
}

double rotation_gain(const Tree& t, double alpha, int u, int v, int w) {
  if (!(alpha >= 0.5 && alpha <= 1)) throw bad("rotation gain needs alpha in [1/2, 1]");
  t.check_vertex(u);
  t.check_vertex(v);
  t.check_vertex(w);
  if (u == w || !t.adjacent(u, v) || !t.adjacent(v, w))
    throw bad("rotation needs a path u - v - w");
  const EigenvectorData x = eigenvector(t, 1);
  const EigenvectorData y = eigenvector(t, 2);
  if (y.multiplicity > 1) throw bad("lambda2 is not simple");
  const auto& xe = x.entries;
  const auto& ye = y.entries;
  return alpha * xe[w] * (xe[u] - xe[v]) + (1 - alpha) * ye[w] * (ye[u] - ye[v]);
}

bool on_internal_path(const Tree& t, int u, int v) {
  t.check_vertex(u);
  t.check_vertex(v);
  if (!t.adjacent(u, v)) return false;
  // walk across degree-2 vertices; the end reached must have degree >= 3
  auto end_degree = [&](int from, int start) {
    int prev = from, cur = start;
    while (t.degree(cur) == 2) {
      const auto nb = t.neighbors(cur);
      const int next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
    }
    return t.degree(cur);
  };
  return end_degree(v, u) >= 3 && end_degree(u, v) >= 3;
}

TransformOutcome contract_internal_edge(const Tree& t, int u, int v) {
  if (!on_internal_path(t, u, v)) throw bad("edge is not on an internal path");

  const int n = t.order();
  auto id = [u](int x) { return x < u ? x : x - 1; };
  std::vector<Edge> edges;
  for (const Edge& e : t.edges()) {
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) continue;
    int a = e.u == u ? v : e.u;
    int b = e.v == u ? v : e.v;
    edges.push_back({id(a), id(b)});
  }
  TransformOutcome out{t, Tree::from_edges(n - 1, edges), {}, true};
  fill_spectra(out);
  return out;
}

TransformOutcome hanging_path_shift(const Tree& t, int root, int k, int l) {
  t.check_vertex(root);
  if (!(k >= l && l >= 1)) throw bad("hanging path shift needs k >= l >= 1");
  int k_end = -1, l_end = -1;
  for (int w : t.neighbors(root)) {
    const auto [end, len] = pendant_path(t, root, w);
    if (len == l && l_end < 0)
      l_end = end;
    else if (len == k && k_end < 0)
      k_end = end;
  }
  if (k_end < 0 || l_end < 0) throw bad("no pendant paths of the requested orders at root");

  // the l-path loses its free end, which is hung below the k-path's end
  const int parent = t.neighbors(l_end)[0];
  std::vector<Edge> edges;
  for (const Edge& e : t.edges()) {
    if ((e.u == l_end && e.v == parent) || (e.v == l_end && e.u == parent))
      edges.push_back({k_end, l_end});
    else
      edges.push_back(e);
  }
  TransformOutcome out{t, Tree::from_edges(t.order(), edges), {}, t.order() - k - l >= 2};
  out.quantities["base_order"] = t.order() - k - l;
  fill_spectra(out);
  return out;
}

}  // namespace spectree
