#pragma once

#include <map>
#include <string>

#include "spectree/tree.hpp"

namespace spectree {

struct TransformOutcome {
  Tree before;
  Tree after;
  std::map<std::string, double> quantities;
  bool precondition = true;  // the hypothesis under which the inequality is strict

  double at(const std::string& key) const { return quantities.at(key); }
};

/// Moves every edge ua to va when a is not adjacent to v. On a tree this
/// only stays a tree for d(u, v) <= 2; farther pairs are rejected.
/// precondition: neither N(u) - {v} nor N(v) - {u} contains the other.
TransformOutcome kelmans(const Tree& t, int u, int v);

/// T - vw + uw, for u ~ v ~ w and u != w.
TransformOutcome rotate(const Tree& t, int u, int v, int w);

/// alpha x_w (x_u - x_v) + (1 - alpha) y_w (y_u - y_v) with unit Perron
/// vector x and unit lambda2 vector y. Throws when lambda2 is not simple.
double rotation_gain(const Tree& t, double alpha, int u, int v, int w);

/// True when edge uv lies on a path whose ends have degree >= 3 and whose
/// interior vertices have degree 2.
bool on_internal_path(const Tree& t, int u, int v);

/// Contracts edge uv, which must lie on a path whose ends have degree >= 3
/// and whose interior vertices have degree 2. u's other neighbors move to
/// v; vertex ids above u shift down by one.
TransformOutcome contract_internal_edge(const Tree& t, int u, int v);

/// t must carry pendant paths of orders k >= l >= 1 at root; the free end
/// of the l-path is moved to the end of the k-path. precondition: the
/// remaining base graph has at least two vertices.
TransformOutcome hanging_path_shift(const Tree& t, int root, int k, int l);

}  // namespace spectree
