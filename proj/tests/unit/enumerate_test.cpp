#include <set>

#include "doctest.h"
#include "spectree/enumerate.hpp"
#include "spectree/spectra.hpp"

using namespace spectree;

namespace {

std::set<CanonicalCode> codes(const std::vector<Tree>& trees) {
  std::set<CanonicalCode> s;
  for (const auto& t : trees) s.insert(canonical_code(t));
  return s;
}

}  // namespace

TEST_CASE("free tree counts") {
  const std::uint64_t expected[] = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159};
  for (int n = 1; n <= 14; ++n) {
    CAPTURE(n);
    const auto trees = enumerate_free_trees(n);
    CHECK(trees.size() == expected[n - 1]);
    CHECK(count_free_trees(n) == expected[n - 1]);
    CHECK(codes(trees).size() == trees.size());
  }
}

TEST_CASE("pruefer oracle agrees with the generator") {
  CHECK(enumerate_labeled_oracle(3).size() == 1);
  CHECK(codes(enumerate_labeled_oracle(4)) == codes({make_path(4), make_star(4)}));
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(codes(enumerate_labeled_oracle(n)) == codes(enumerate_free_trees(n)));
  }
  CHECK_THROWS_AS(enumerate_labeled_oracle(11), TreeError);
}

TEST_CASE("range limits") {
  CHECK_THROWS_AS(enumerate_free_trees(0), TreeError);
  CHECK_THROWS_AS(TreeStream(kMaxExhaustiveOrder + 1, StreamMode::free_trees), TreeError);
}

TEST_CASE("double comet stream") {
  const auto four = enumerate_double_comets(4);
  std::vector<Tree> trees;
  for (const auto& p : four) trees.push_back(make_double_comet(p));
  CHECK(codes(trees) == codes({make_path(4), make_star(4)}));
  CHECK(trees.size() == 2);

  const auto seven = enumerate_double_comets(7);
  CHECK(std::find(seven.begin(), seven.end(), DoubleCometParams{2, 2, 3}) != seven.end());

  const auto big = enumerate_double_comets(26);
  CHECK(std::find(big.begin(), big.end(), DoubleCometParams{12, 12, 2}) != big.end());
  std::vector<Tree> big_trees;
  for (const auto& p : big) big_trees.push_back(make_double_comet(p));
  CHECK(codes(big_trees).size() == big.size());
  // quadratic growth: roughly n^2 / 4 classes
  CHECK(big.size() > 100);
  CHECK(big.size() < 26 * 26);

  // star first, then the path
  CHECK(isomorphic(make_double_comet(big[0]), make_star(26)));
  CHECK(isomorphic(make_double_comet(big[1]), make_path(26)));
}

TEST_CASE("every double comet of order n is found among all trees") {
  for (int n = 2; n <= 12; ++n) {
    std::vector<Tree> dcs;
    for (const auto& p : enumerate_double_comets(n)) dcs.push_back(make_double_comet(p));
    const auto all = codes(enumerate_free_trees(n));
    std::uint64_t recognized = 0;
    for (const auto& t : enumerate_free_trees(n)) recognized += recognize_double_comet(t).has_value();
    CHECK(recognized == dcs.size());
    for (const auto& c : codes(dcs)) CHECK(all.count(c) == 1);
  }
}

TEST_CASE("streams are resumable and split across workers") {
  for (StreamMode mode : {StreamMode::free_trees, StreamMode::double_comets}) {
    const int n = 11;
    std::multiset<CanonicalCode> whole, merged;
    TreeStream full(n, mode);
    while (auto t = full.next()) whole.insert(canonical_code(*t));
    const int workers = 4;
    for (int w = 0; w < workers; ++w) {
      TreeStream s(n, mode);
      s.skip(w);
      while (auto t = s.next()) {
        merged.insert(canonical_code(*t));
        s.skip(workers - 1);
      }
    }
    CHECK(merged == whole);
    CHECK(full.position() == whole.size());
  }
}

TEST_CASE("stream order is deterministic") {
  const auto a = enumerate_free_trees(10);
  const auto b = enumerate_free_trees(10);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
