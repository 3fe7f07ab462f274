#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spectree {

enum class TreeErrorKind {
  out_of_range,
  self_loop,
  duplicate_edge,
  cyclic,
  disconnected,
  bad_parameters,
  bad_spec,
  io,
};

std::string_view to_string(TreeErrorKind kind);

class TreeError : public std::invalid_argument {
 public:
  TreeError(TreeErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  TreeErrorKind kind() const noexcept { return kind_; }

 private:
  TreeErrorKind kind_;
};

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable simple tree on vertices 0..n-1, stored as sorted adjacency in
/// compressed rows. Construction always validates: n-1 edges, connected,
/// no loops or parallel edges.
class Tree {
 public:
  /// The single-vertex tree.
  Tree();

  static Tree from_edges(int n, std::span<const Edge> edges);

  int order() const noexcept { return static_cast<int>(offsets_.size()) - 1; }
  int edge_count() const noexcept { return order() - 1; }

  std::span<const int> neighbors(int v) const {
    check_vertex(v);
    return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
  }
  int degree(int v) const {
    check_vertex(v);
    return offsets_[v + 1] - offsets_[v];
  }
  bool adjacent(int u, int v) const;

  /// Edges with u < v, in increasing (u, v) order.
  std::vector<Edge> edges() const;

  void check_vertex(int v) const {
    if (v < 0 || v >= order())
      throw TreeError(TreeErrorKind::out_of_range, "vertex " + std::to_string(v) + " out of range");
  }

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  Tree(std::vector<int> offsets, std::vector<int> nbrs)
      : offsets_(std::move(offsets)), nbrs_(std::move(nbrs)) {}

  std::vector<int> offsets_;
  std::vector<int> nbrs_;
};

/// DC(k1, k2, ell): a path on ell vertices with k1 leaves on its first
/// terminal and k2 on its last. ell == 1 puts all leaves on one vertex.
struct DoubleCometParams {
  int k1 = 0;
  int k2 = 0;
  int ell = 1;

  int order() const noexcept { return k1 + k2 + ell; }
  std::string label() const;
  friend bool operator==(const DoubleCometParams&, const DoubleCometParams&) = default;
  friend auto operator<=>(const DoubleCometParams&, const DoubleCometParams&) = default;
};

void validate(const DoubleCometParams& p);

/// Unique representative of the isomorphism class of DC(k1,k2,ell):
/// stars map to (n-1, 0, 1), k1 >= k2, and neither side carries exactly one
/// leaf (a single leaf is absorbed into the path).
DoubleCometParams normalize(DoubleCometParams p);

Tree make_path(int n);
Tree make_star(int n);
Tree make_double_comet(const DoubleCometParams& p);
Tree from_edge_list(int n, std::span<const Edge> edges);

/// Isomorphism-invariant key. Equal codes iff isomorphic trees; the string
/// is a balanced-parenthesis encoding of the centroid-rooted tree.
struct CanonicalCode {
  std::string code;
  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

CanonicalCode canonical_code(const Tree& t);
std::vector<int> centroids(const Tree& t);
bool isomorphic(const Tree& a, const Tree& b);

int degree(const Tree& t, int v);
int max_degree(const Tree& t);
int distance(const Tree& t, int u, int v);
std::vector<int> bfs_distances(const Tree& t, int source);

/// Relabels vertex v as perm[v].
Tree relabel(const Tree& t, std::span<const int> perm);

/// Connected components of the subgraph induced by the vertices with
/// keep[v] set. Each component lists its original vertex ids in increasing
/// order; component.tree uses 0-based ids in that order.
struct Component {
  Tree tree;
  std::vector<int> vertices;
};
std::vector<Component> induced_components(const Tree& t, const std::vector<bool>& keep);
std::vector<Component> remove_vertex(const Tree& t, int v);

/// Some DC(k1,k2,ell) isomorphic to t, normalized; nullopt if t is not a
/// double comet.
std::optional<DoubleCometParams> recognize_double_comet(const Tree& t);

/// Trees on a Pruefer sequence (labels 0..n-1, length n-2).
Tree from_pruefer(int n, std::span<const int> seq);

// Text format: first line n, then n-1 lines "u v".
Tree read_tree_text(std::istream& in);
void write_tree_text(std::ostream& out, const Tree& t);

/// "path:n", "star:n", "dc:k1,k2,l" or "file:PATH".
Tree parse_tree_spec(std::string_view spec);

}  // namespace spectree
