#include "spectree/tree.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

namespace spectree {

std::string_view to_string(TreeErrorKind kind) {
  switch (kind) {
    case TreeErrorKind::out_of_range: return "out-of-range";
    case TreeErrorKind::self_loop: return "self-loop";
    case TreeErrorKind::duplicate_edge: return "duplicate-edge";
    case TreeErrorKind::cyclic: return "cyclic";
    case TreeErrorKind::disconnected: return "disconnected";
    case TreeErrorKind::bad_parameters: return "bad-parameters";
    case TreeErrorKind::bad_spec: return "bad-spec";
    case TreeErrorKind::io: return "io";
  }
  return "unknown";
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

Tree::Tree() : offsets_{0, 0} {}

Tree Tree::from_edges(int n, std::span<const Edge> edges) {
  if (n < 1) throw TreeError(TreeErrorKind::bad_parameters, "tree order must be at least 1");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw TreeError(TreeErrorKind::out_of_range,
                      "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
    if (e.u == e.v)
      throw TreeError(TreeErrorKind::self_loop, "self-loop at vertex " + std::to_string(e.u));
  }
  std::vector<std::pair<int, int>> keyed;
  keyed.reserve(edges.size());
  for (const Edge& e : edges) keyed.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(keyed.begin(), keyed.end());
  if (auto dup = std::adjacent_find(keyed.begin(), keyed.end()); dup != keyed.end())
    throw TreeError(TreeErrorKind::duplicate_edge, "duplicate edge (" + std::to_string(dup->first) +
                                                       "," + std::to_string(dup->second) + ")");

  DisjointSets sets(n);
  int merges = 0;
  for (const Edge& e : edges) {
    if (!sets.unite(e.u, e.v))
      throw TreeError(TreeErrorKind::cyclic, "edge (" + std::to_string(e.u) + "," +
                                                 std::to_string(e.v) + ") closes a cycle");
    ++merges;
  }
  if (merges != n - 1)
    throw TreeError(TreeErrorKind::disconnected,
                    "graph has " + std::to_string(n - merges) + " components");

  std::vector<int> offsets(n + 1, 0);
  for (const Edge& e : edges) {
    ++offsets[e.u + 1];
    ++offsets[e.v + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<int> nbrs(offsets.back());
  std::vector<int> fill(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    nbrs[fill[e.u]++] = e.v;
    nbrs[fill[e.v]++] = e.u;
  }
  for (int v = 0; v < n; ++v) std::sort(nbrs.begin() + offsets[v], nbrs.begin() + offsets[v + 1]);
  return Tree(std::move(offsets), std::move(nbrs));
}

bool Tree::adjacent(int u, int v) const {
  auto nb = neighbors(u);
  check_vertex(v);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Tree::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  for (int u = 0; u < order(); ++u)
    for (int v : neighbors(u))
      if (u < v) out.push_back({u, v});
  return out;
}

std::string DoubleCometParams::label() const {
  return "DC(" + std::to_string(k1) + "," + std::to_string(k2) + "," + std::to_string(ell) + ")";
}

void validate(const DoubleCometParams& p) {
  if (p.ell < 1 || p.k1 < 0 || p.k2 < 0)
    throw TreeError(TreeErrorKind::bad_parameters, "invalid double comet " + p.label());
}

DoubleCometParams normalize(DoubleCometParams p) {
  validate(p);
  const int n = p.order();
  const DoubleCometParams star{n - 1, 0, 1};
  if (p.ell == 1) return star;
  if (p.k1 < p.k2) std::swap(p.k1, p.k2);
  if (p.k2 == 1) {
    p.k2 = 0;
    ++p.ell;
  }
  if (p.k1 == 1) {
    p.k1 = 0;
    ++p.ell;
  }
  if (p.k2 == 0 && p.ell == 2) return star;
  if (p.k1 == 0 && n <= 3) return star;
  return p;
}

Tree make_path(int n) {
  if (n < 1) throw TreeError(TreeErrorKind::bad_parameters, "path order must be at least 1");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Tree::from_edges(n, edges);
}

Tree make_star(int n) {
  if (n < 2) throw TreeError(TreeErrorKind::bad_parameters, "star order must be at least 2");
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.push_back({0, i});
  return Tree::from_edges(n, edges);
}

Tree make_double_comet(const DoubleCometParams& p) {
  validate(p);
  // Path vertices 0..ell-1, then the k1 leaves, then the k2 leaves.
  const int n = p.order();
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i + 1 < p.ell; ++i) edges.push_back({i, i + 1});
  int next = p.ell;
  for (int i = 0; i < p.k1; ++i) edges.push_back({0, next++});
  for (int i = 0; i < p.k2; ++i) edges.push_back({p.ell - 1, next++});
  return Tree::from_edges(n, edges);
}

Tree from_edge_list(int n, std::span<const Edge> edges) { return Tree::from_edges(n, edges); }

std::vector<int> centroids(const Tree& t) {
  const int n = t.order();
  if (n == 1) return {0};
  std::vector<int> order{0}, parent(n, -1);
  order.reserve(n);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int w : t.neighbors(order[i]))
      if (w != parent[order[i]]) {
        parent[w] = order[i];
        order.push_back(w);
      }
  std::vector<int> size(n, 1);
  for (int i = n - 1; i > 0; --i) size[parent[order[i]]] += size[order[i]];
  std::vector<int> result;
  for (int v = 0; v < n; ++v) {
    int heaviest = n - size[v];
    for (int w : t.neighbors(v))
      if (w != parent[v]) heaviest = std::max(heaviest, size[w]);
    if (2 * heaviest <= n) result.push_back(v);
  }
  return result;
}

namespace {

std::string rooted_code(const Tree& t, int root) {
  const int n = t.order();
  std::vector<int> order{root}, parent(n, -1);
  order.reserve(n);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int w : t.neighbors(order[i]))
      if (w != parent[order[i]]) {
        parent[w] = order[i];
        order.push_back(w);
      }
  std::vector<std::string> code(n);
  std::vector<std::string> kids;
  for (int i = n - 1; i >= 0; --i) {
    const int v = order[i];
    kids.clear();
    for (int w : t.neighbors(v))
      if (w != parent[v]) kids.push_back(std::move(code[w]));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto& k : kids) s += k;
    s += ')';
    code[v] = std::move(s);
  }
  return std::move(code[root]);
}

}  // namespace

CanonicalCode canonical_code(const Tree& t) {
  auto roots = centroids(t);
  std::string best = rooted_code(t, roots.front());
  if (roots.size() == 2) best = std::min(best, rooted_code(t, roots.back()));
  return {std::move(best)};
}

bool isomorphic(const Tree& a, const Tree& b) {
  return a.order() == b.order() && canonical_code(a) == canonical_code(b);
}

int degree(const Tree& t, int v) { return t.degree(v); }

int max_degree(const Tree& t) {
  int best = 0;
  for (int v = 0; v < t.order(); ++v) best = std::max(best, t.degree(v));
  return best;
}

std::vector<int> bfs_distances(const Tree& t, int source) {
  t.check_vertex(source);
  std::vector<int> dist(t.order(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : t.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

int distance(const Tree& t, int u, int v) {
  t.check_vertex(v);
  return bfs_distances(t, u)[v];
}

Tree relabel(const Tree& t, std::span<const int> perm) {
  const int n = t.order();
  if (static_cast<int>(perm.size()) != n)
    throw TreeError(TreeErrorKind::bad_parameters, "permutation size mismatch");
  std::vector<Edge> edges;
  for (const Edge& e : t.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return Tree::from_edges(n, edges);
}

std::vector<Component> induced_components(const Tree& t, const std::vector<bool>& keep) {
  const int n = t.order();
  std::vector<int> comp(n, -1);
  std::vector<Component> out;
  for (int s = 0; s < n; ++s) {
    if (!keep[s] || comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> members{s};
    comp[s] = id;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int w : t.neighbors(members[i]))
        if (keep[w] && comp[w] < 0) {
          comp[w] = id;
          members.push_back(w);
        }
    std::sort(members.begin(), members.end());
    std::vector<int> local(n, -1);
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (int v : members)
      for (int w : t.neighbors(v))
        if (v < w && local[w] >= 0) edges.push_back({local[v], local[w]});
    out.push_back({Tree::from_edges(static_cast<int>(members.size()), edges), std::move(members)});
  }
  return out;
}

std::vector<Component> remove_vertex(const Tree& t, int v) {
  t.check_vertex(v);
  std::vector<bool> keep(t.order(), true);
  keep[v] = false;
  return induced_components(t, keep);
}

std::optional<DoubleCometParams> recognize_double_comet(const Tree& t) {
  const int n = t.order();
  if (n == 1) return std::nullopt;
  if (n == 2) return DoubleCometParams{1, 0, 1};
  std::vector<int> spine;
  for (int v = 0; v < n; ++v)
    if (t.degree(v) > 1) spine.push_back(v);
  if (spine.size() == 1) return DoubleCometParams{n - 1, 0, 1};

  auto leaves_at = [&](int v) {
    int c = 0;
    for (int w : t.neighbors(v)) c += t.degree(w) == 1;
    return c;
  };
  std::vector<int> ends;
  for (int v : spine) {
    const int inner = t.degree(v) - leaves_at(v);
    if (inner > 2) return std::nullopt;
    if (inner == 1) ends.push_back(v);
    else if (leaves_at(v) != 0) return std::nullopt;
  }
  if (ends.size() != 2) return std::nullopt;
  const int ell = static_cast<int>(spine.size());
  return normalize({leaves_at(ends[0]), leaves_at(ends[1]), ell});
}

Tree from_pruefer(int n, std::span<const int> seq) {
  if (n < 2 || static_cast<int>(seq.size()) != n - 2)
    throw TreeError(TreeErrorKind::bad_parameters, "Pruefer sequence length must be n-2");
  std::vector<int> deg(n, 1);
  for (int x : seq) {
    if (x < 0 || x >= n) throw TreeError(TreeErrorKind::out_of_range, "Pruefer label out of range");
    ++deg[x];
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int x : seq) {
    edges.push_back({leaf, x});
    if (--deg[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back({leaf, n - 1});
  return Tree::from_edges(n, edges);
}

Tree read_tree_text(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n < 1)
    throw TreeError(TreeErrorKind::bad_spec, "tree text: expected vertex count on first line");
  std::vector<Edge> edges;
  for (long long i = 0; i + 1 < n; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v))
      throw TreeError(TreeErrorKind::bad_spec, "tree text: expected " + std::to_string(n - 1) + " edges");
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  return Tree::from_edges(static_cast<int>(n), edges);
}

void write_tree_text(std::ostream& out, const Tree& t) {
  out << t.order() << '\n';
  for (const Edge& e : t.edges()) out << e.u << ' ' << e.v << '\n';
}

namespace {

int parse_int(std::string_view s, std::string_view spec) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw TreeError(TreeErrorKind::bad_spec, "bad integer in tree spec '" + std::string(spec) + "'");
  return value;
}

}  // namespace

Tree parse_tree_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw TreeError(TreeErrorKind::bad_spec, "tree spec needs a kind prefix: '" + std::string(spec) + "'");
  const auto kind = spec.substr(0, colon);
  const auto rest = spec.substr(colon + 1);
  if (kind == "path") return make_path(parse_int(rest, spec));
  if (kind == "star") return make_star(parse_int(rest, spec));
  if (kind == "dc") {
    std::vector<int> parts;
    std::size_t start = 0;
    while (true) {
      auto comma = rest.find(',', start);
      parts.push_back(parse_int(rest.substr(start, comma - start), spec));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (parts.size() != 3)
      throw TreeError(TreeErrorKind::bad_spec, "dc spec needs k1,k2,l: '" + std::string(spec) + "'");
    return make_double_comet({parts[0], parts[1], parts[2]});
  }
  if (kind == "file") {
    std::ifstream in{std::string(rest)};
    if (!in) throw TreeError(TreeErrorKind::io, "cannot open tree file '" + std::string(rest) + "'");
    return read_tree_text(in);
  }
  throw TreeError(TreeErrorKind::bad_spec, "unknown tree spec kind '" + std::string(kind) + "'");
}

}  // namespace spectree
