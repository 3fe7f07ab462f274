#include "spectree/enumerate.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>

namespace spectree {

namespace {

void check_order(int n, StreamMode mode) {
  if (n < 1) throw TreeError(TreeErrorKind::bad_parameters, "tree order must be at least 1");
  if (mode == StreamMode::free_trees && n > kMaxExhaustiveOrder)
    throw TreeError(TreeErrorKind::bad_parameters,
                    "exhaustive enumeration supports n <= " + std::to_string(kMaxExhaustiveOrder));
  if (mode == StreamMode::labeled_oracle && n > kMaxPrueferOrder)
    throw TreeError(TreeErrorKind::bad_parameters,
                    "Pruefer oracle supports n <= " + std::to_string(kMaxPrueferOrder));
  if (mode == StreamMode::double_comets && n < 2)
    throw TreeError(TreeErrorKind::bad_parameters, "double comets need n >= 2");
}

// ---- level sequences -------------------------------------------------------
//
// A rooted tree is a preorder list of depths (root depth 0). The successor
// step below walks canonical rooted sequences in decreasing order; the
// free-tree filter keeps exactly the sequences rooted at a centroid whose
// first subtree is no larger than the rest.

// Successor of a rooted level sequence, restarting from position p.
bool next_rooted(std::vector<int>& seq, int p) {
  if (p == 0) return false;
  int q = p - 1;
  while (seq[q] != seq[p] - 1) --q;
  for (std::size_t i = static_cast<std::size_t>(p); i < seq.size(); ++i) seq[i] = seq[i - p + q];
  return true;
}

bool next_rooted(std::vector<int>& seq) {
  int p = static_cast<int>(seq.size()) - 1;
  while (p > 0 && seq[p] == 1) --p;
  return next_rooted(seq, p);
}

// Splits at the second depth-1 vertex: the first subtree of the root
// (depths shifted up by one) and the remainder with the root.
struct Split {
  std::vector<int> left;
  std::vector<int> rest;
};

Split split_first_subtree(const std::vector<int>& seq) {
  std::size_t m = seq.size();
  bool seen = false;
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (seq[i] == 1) {
      if (seen) {
        m = i;
        break;
      }
      seen = true;
    }
  Split s;
  for (std::size_t i = 1; i < m; ++i) s.left.push_back(seq[i] - 1);
  s.rest.push_back(0);
  for (std::size_t i = m; i < seq.size(); ++i) s.rest.push_back(seq[i]);
  return s;
}

// Moves seq to the first free-tree-canonical sequence at or after it.
void to_free_canonical(std::vector<int>& seq) {
  Split s = split_first_subtree(seq);
  const int left_height = *std::max_element(s.left.begin(), s.left.end());
  const int rest_height = *std::max_element(s.rest.begin(), s.rest.end());
  bool valid = rest_height >= left_height;
  if (valid && rest_height == left_height) {
    if (s.left.size() > s.rest.size()) valid = false;
    else if (s.left.size() == s.rest.size() && s.left > s.rest) valid = false;
  }
  if (valid) return;
  const int p = static_cast<int>(s.left.size());
  const int old = seq[p];
  next_rooted(seq, p);
  if (old > 2) {
    Split t = split_first_subtree(seq);
    const int h = *std::max_element(t.left.begin(), t.left.end());
    for (int i = 0; i <= h; ++i) seq[seq.size() - 1 - h + i] = i + 1;
  }
}

Tree tree_from_levels(const std::vector<int>& seq) {
  std::vector<Edge> edges;
  std::vector<int> stack;
  for (int i = 0; i < static_cast<int>(seq.size()); ++i) {
    while (!stack.empty() && seq[stack.back()] >= seq[i]) stack.pop_back();
    if (!stack.empty()) edges.push_back({stack.back(), i});
    stack.push_back(i);
  }
  return Tree::from_edges(static_cast<int>(seq.size()), edges);
}

// ---- Pruefer brute force ----------------------------------------------------

// Small-n canonical key: AHU bit strings packed into an integer, rooted at
// each centroid, minimum taken. Only used to deduplicate inside the oracle.
struct PackedCode {
  std::uint32_t bits = 0;
  int len = 0;
  bool operator<(const PackedCode& o) const {
    return len != o.len ? len < o.len : bits < o.bits;
  }
};

class SmallTreeKeyer {
 public:
  explicit SmallTreeKeyer(int n) : n_(n) {}

  std::uint32_t key(const std::array<int, 2 * kMaxPrueferOrder>& eu,
                    const std::array<int, 2 * kMaxPrueferOrder>& ev) {
    deg_.fill(0);
    for (int i = 0; i < n_ - 1; ++i) {
      adj_[eu[i]][deg_[eu[i]]++] = ev[i];
      adj_[ev[i]][deg_[ev[i]]++] = eu[i];
    }
    // subtree sizes rooted at 0
    int order[kMaxPrueferOrder], parent[kMaxPrueferOrder], size[kMaxPrueferOrder];
    int head = 0, tail = 0;
    order[tail++] = 0;
    parent[0] = -1;
    while (head < tail) {
      int v = order[head++];
      for (int j = 0; j < deg_[v]; ++j)
        if (adj_[v][j] != parent[v]) {
          parent[adj_[v][j]] = v;
          order[tail++] = adj_[v][j];
        }
    }
    for (int v = 0; v < n_; ++v) size[v] = 1;
    for (int i = n_ - 1; i > 0; --i) size[parent[order[i]]] += size[order[i]];
    std::uint32_t best = UINT32_MAX;
    for (int v = 0; v < n_; ++v) {
      int heaviest = n_ - size[v];
      for (int j = 0; j < deg_[v]; ++j)
        if (adj_[v][j] != parent[v]) heaviest = std::max(heaviest, size[adj_[v][j]]);
      if (2 * heaviest <= n_) best = std::min(best, rooted(v, -1).bits);
    }
    return best;
  }

 private:
  PackedCode rooted(int v, int from) {
    PackedCode kids[kMaxPrueferOrder];
    int k = 0;
    for (int j = 0; j < deg_[v]; ++j)
      if (adj_[v][j] != from) kids[k++] = rooted(adj_[v][j], v);
    std::sort(kids, kids + k);
    PackedCode out{1u, 1};
    for (int i = 0; i < k; ++i) {
      out.bits = (out.bits << kids[i].len) | kids[i].bits;
      out.len += kids[i].len;
    }
    out.bits <<= 1;
    out.len += 1;
    return out;
  }

  int n_;
  std::array<int, kMaxPrueferOrder> deg_{};
  std::array<std::array<int, kMaxPrueferOrder>, kMaxPrueferOrder> adj_{};
};

std::vector<Tree> pruefer_classes(int n) {
  if (n <= 2) return {n == 1 ? Tree() : make_path(2)};
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
  std::vector<Tree> reps;
  std::vector<char> seen(std::size_t{1} << (2 * n), 0);
  SmallTreeKeyer keyer(n);
  std::array<int, 2 * kMaxPrueferOrder> eu{}, ev{};
  std::array<int, kMaxPrueferOrder> deg{};
  while (true) {
    deg.fill(1);
    for (int x : seq) ++deg[x];
    int ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr, e = 0;
    for (int x : seq) {
      eu[e] = leaf;
      ev[e++] = x;
      if (--deg[x] == 1 && x < ptr) {
        leaf = x;
      } else {
        ++ptr;
        while (deg[ptr] != 1) ++ptr;
        leaf = ptr;
      }
    }
    eu[e] = leaf;
    ev[e] = n - 1;
    const std::uint32_t key = keyer.key(eu, ev);
    if (!seen[key]) {
      seen[key] = 1;
      reps.push_back(from_pruefer(n, seq));
    }
    // odometer
    int i = n - 3;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  std::vector<std::pair<CanonicalCode, Tree>> keyed;
  for (auto& t : reps) keyed.emplace_back(canonical_code(t), std::move(t));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Tree> out;
  for (auto& [code, t] : keyed) out.push_back(std::move(t));
  return out;
}

}  // namespace

TreeStream::TreeStream(int n, StreamMode mode) : n_(n), mode_(mode) {
  check_order(n, mode);
  if (mode == StreamMode::labeled_oracle) classes_ = pruefer_classes(n);
}

bool TreeStream::advance() {
  if (done_) return false;
  switch (mode_) {
    case StreamMode::free_trees: {
      if (n_ <= 2) {
        if (started_) {
          done_ = true;
          return false;
        }
        levels_.assign(static_cast<std::size_t>(n_), 0);
        if (n_ == 2) levels_[1] = 1;
        break;
      }
      if (!started_) {
        // the path rooted at its center
        levels_.clear();
        for (int i = 0; i <= n_ / 2; ++i) levels_.push_back(i);
        for (int i = 1; i < (n_ + 1) / 2; ++i) levels_.push_back(i);
      } else if (!next_rooted(levels_)) {
        done_ = true;
        return false;
      }
      to_free_canonical(levels_);
      break;
    }
    case StreamMode::labeled_oracle:
      if (started_) ++class_index_;
      if (class_index_ >= classes_.size()) {
        done_ = true;
        return false;
      }
      break;
    case StreamMode::double_comets: {
      // stage 0: star, stage 1: path, stage 2: the l >= 2 sweep
      if (!started_) {
        dc_stage_ = 0;
        dc_ = {n_ - 1, 0, 1};
        break;
      }
      if (dc_stage_ == 0) {
        dc_stage_ = 1;
        if (n_ >= 4) {
          dc_ = {0, 0, n_};
          break;
        }
      }
      if (dc_stage_ == 1) {
        dc_stage_ = 2;
        dc_ = {0, (n_ - 2) / 2 + 1, 2};
      }
      int l = dc_.ell;
      int k2 = dc_.k2 - 1;
      while (true) {
        if (l > n_ - 2) {
          done_ = true;
          return false;
        }
        if (k2 < 0) {
          ++l;
          k2 = (n_ - l) / 2;
          continue;
        }
        const int k1 = n_ - l - k2;
        if (k1 >= k2 && k1 >= 2 && k2 != 1 && !(l == 2 && k2 == 0)) {
          dc_ = {k1, k2, l};
          break;
        }
        --k2;
      }
      break;
    }
  }
  started_ = true;
  ++position_;
  return true;
}

Tree TreeStream::current_tree() const {
  switch (mode_) {
    case StreamMode::free_trees:
      return n_ == 1 ? Tree() : tree_from_levels(levels_);
    case StreamMode::labeled_oracle:
      return classes_[class_index_];
    case StreamMode::double_comets:
      return make_double_comet(dc_);
  }
  return Tree();
}

std::optional<Tree> TreeStream::next() {
  if (!advance()) return std::nullopt;
  return current_tree();
}

std::optional<DoubleCometParams> TreeStream::next_params() {
  if (mode_ != StreamMode::double_comets)
    throw TreeError(TreeErrorKind::bad_parameters, "next_params needs the double-comet stream");
  if (!advance()) return std::nullopt;
  return dc_;
}

std::uint64_t TreeStream::skip(std::uint64_t k) {
  std::uint64_t done = 0;
  while (done < k && advance()) ++done;
  return done;
}

std::vector<Tree> enumerate_free_trees(int n) {
  TreeStream s(n, StreamMode::free_trees);
  std::vector<Tree> out;
  while (auto t = s.next()) out.push_back(std::move(*t));
  return out;
}

std::uint64_t count_free_trees(int n) {
  TreeStream s(n, StreamMode::free_trees);
  return s.skip(UINT64_MAX);
}

std::vector<Tree> enumerate_labeled_oracle(int n) {
  check_order(n, StreamMode::labeled_oracle);
  return pruefer_classes(n);
}

std::vector<DoubleCometParams> enumerate_double_comets(int n) {
  TreeStream s(n, StreamMode::double_comets);
  std::vector<DoubleCometParams> out;
  while (auto p = s.next_params()) out.push_back(*p);
  return out;
}

}  // namespace spectree
