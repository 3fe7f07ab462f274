#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "spectree/tree.hpp"
#include "spectree/verify.hpp"

using namespace spectree;

namespace {

std::vector<int> sorted_degrees(const Tree& t) {
  std::vector<int> d;
  for (int v = 0; v < t.order(); ++v) d.push_back(t.degree(v));
  std::sort(d.rbegin(), d.rend());
  return d;
}

TreeErrorKind error_of(int n, std::vector<Edge> edges) {
  try {
    Tree::from_edges(n, edges);
  } catch (const TreeError& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return TreeErrorKind::io;
}

}  // namespace

TEST_CASE("paths") {
  CHECK(make_path(1).order() == 1);
  CHECK(make_path(1).edge_count() == 0);
  const Tree p4 = make_path(4);
  std::vector<int> deg;
  for (int v = 0; v < 4; ++v) deg.push_back(p4.degree(v));
  CHECK(deg == std::vector<int>{1, 2, 2, 1});
  CHECK(distance(make_path(6), 0, 5) == 5);
}

TEST_CASE("stars") {
  const Tree k2 = make_star(2);
  CHECK(k2.order() == 2);
  CHECK(k2.edges() == std::vector<Edge>{{0, 1}});
  CHECK(make_star(6).degree(0) == 5);
  CHECK(max_degree(make_star(6)) == 5);
}

TEST_CASE("double comets") {
  CHECK(isomorphic(make_double_comet({0, 0, 5}), make_path(5)));
  CHECK(isomorphic(make_double_comet({1, 1, 2}), make_path(4)));
  CHECK(isomorphic(make_double_comet({3, 2, 1}), make_star(6)));
  const Tree dc = make_double_comet({2, 2, 3});
  CHECK(dc.order() == 7);
  CHECK(sorted_degrees(dc) == std::vector<int>{3, 3, 2, 1, 1, 1, 1});
  int hubs[2], h = 0;
  for (int v = 0; v < 7; ++v)
    if (dc.degree(v) == 3) hubs[h++] = v;
  CHECK(distance(dc, hubs[0], hubs[1]) == 2);
  // terminal degrees k1 + 1 and k2 + 1
  CHECK(sorted_degrees(make_double_comet({4, 1, 5})).front() == 5);
  CHECK_THROWS_AS(make_double_comet({1, 1, 0}), TreeError);
  CHECK_THROWS_AS(make_double_comet({-1, 1, 3}), TreeError);
}

TEST_CASE("normalize picks one representative per class") {
  CHECK(normalize({2, 3, 3}) == normalize({3, 2, 3}));
  CHECK(normalize({1, 1, 2}) == normalize({0, 0, 4}));
  CHECK(normalize({2, 3, 1}) == normalize({4, 0, 2}));
  for (int k1 = 0; k1 <= 4; ++k1)
    for (int k2 = 0; k2 <= 4; ++k2)
      for (int l = 1; l <= 4; ++l) {
        const DoubleCometParams p{k1, k2, l};
        CHECK(isomorphic(make_double_comet(p), make_double_comet(normalize(p))));
      }
}

TEST_CASE("edge list validation reports each failure distinctly") {
  CHECK(Tree::from_edges(2, std::vector<Edge>{{0, 1}}).order() == 2);
  CHECK(error_of(3, {{0, 1}, {1, 2}, {0, 2}}) == TreeErrorKind::cyclic);
  CHECK(error_of(4, {{0, 1}, {2, 3}}) == TreeErrorKind::disconnected);
  CHECK(error_of(3, {{0, 1}, {0, 1}}) == TreeErrorKind::duplicate_edge);
  CHECK(error_of(3, {{0, 0}, {1, 2}}) == TreeErrorKind::self_loop);
  CHECK(error_of(3, {{0, 1}, {1, 5}}) == TreeErrorKind::out_of_range);
  CHECK_THROWS_AS(make_path(3).degree(7), TreeError);
}

TEST_CASE("canonical codes") {
  CHECK(canonical_code(make_path(4)) == canonical_code(make_double_comet({1, 1, 2})));
  CHECK(canonical_code(make_star(5)) != canonical_code(make_path(5)));
  CHECK(canonical_code(make_double_comet({2, 3, 3})) == canonical_code(make_double_comet({3, 2, 3})));
}

TEST_CASE("canonical code survives random relabeling") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Tree t = random_tree(rng, 2 + trial % 15);
    const CanonicalCode code = canonical_code(t);
    std::vector<int> perm(t.order());
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < 100; ++k) {
      std::shuffle(perm.begin(), perm.end(), rng);
      const Tree r = relabel(t, perm);
      REQUIRE(r.order() == t.order());
      CHECK(canonical_code(r) == code);
    }
  }
}

TEST_CASE("adjacency is symmetric and sorted") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Tree t = random_tree(rng, 1 + trial % 20);
    CHECK(static_cast<int>(t.edges().size()) == t.order() - 1);
    for (int v = 0; v < t.order(); ++v) {
      const auto nb = t.neighbors(v);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      for (int w : nb) CHECK(t.adjacent(w, v));
    }
  }
}

TEST_CASE("centroids") {
  CHECK(centroids(make_path(5)) == std::vector<int>{2});
  CHECK(centroids(make_path(4)) == std::vector<int>{1, 2});
  CHECK(centroids(make_star(7)) == std::vector<int>{0});
}

TEST_CASE("vertex removal splits into components") {
  const auto parts = remove_vertex(make_double_comet({2, 2, 3}), 0);
  int total = 0;
  for (const auto& c : parts) total += c.tree.order();
  CHECK(total == 6);
  const auto mid = remove_vertex(make_path(5), 2);
  REQUIRE(mid.size() == 2);
  CHECK(mid[0].vertices == std::vector<int>{0, 1});
  CHECK(mid[1].vertices == std::vector<int>{3, 4});
}

TEST_CASE("double comet recognition") {
  CHECK(recognize_double_comet(make_double_comet({4, 3, 5})) == DoubleCometParams{4, 3, 5});
  CHECK(recognize_double_comet(make_path(7)) == normalize({0, 0, 7}));
  CHECK(recognize_double_comet(make_star(7)) == normalize({6, 0, 1}));
  // a vertex of degree 3 in the middle of a path is not a double comet
  const Tree spider = Tree::from_edges(7, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}});
  CHECK_FALSE(recognize_double_comet(spider).has_value());
}

TEST_CASE("text format and spec strings") {
  const Tree t = make_double_comet({2, 1, 4});
  std::stringstream ss;
  write_tree_text(ss, t);
  CHECK(read_tree_text(ss) == t);
  CHECK(isomorphic(parse_tree_spec("path:6"), make_path(6)));
  CHECK(isomorphic(parse_tree_spec("star:6"), make_star(6)));
  CHECK(isomorphic(parse_tree_spec("dc:2,2,3"), make_double_comet({2, 2, 3})));
  CHECK_THROWS_AS(parse_tree_spec("cycle:5"), TreeError);
  CHECK_THROWS_AS(parse_tree_spec("dc:2,x,3"), TreeError);

  const std::string path = "tree_test_roundtrip.txt";
  {
    std::ofstream out(path);
    write_tree_text(out, t);
  }
  CHECK(parse_tree_spec("file:" + path) == t);
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_tree_spec("file:/nonexistent/tree.txt"), TreeError);
}

TEST_CASE("pruefer decoding") {
  const std::vector<int> seq = {3, 3, 3};
  const Tree t = from_pruefer(5, seq);
  CHECK(t.degree(3) == 4);
  CHECK(isomorphic(t, make_star(5)));
}
