#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spectree/report.hpp"

namespace spectree {

inline constexpr std::uint64_t kDefaultSeed = 20250611;

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  bool quick = false;  // smaller orders and sample counts, for unit tests
  int jobs = 1;
};

/// figure2, figure3, max-sum, min-sum, lambda2-max, lambda2-second,
/// closed-forms, lemmas, identity, center, asymptotics, envelope-oracle,
/// enum-counts
const std::vector<std::string>& suite_names();

VerifyReport run_suite(std::string_view name, const VerifyOptions& opts = {});

/// Uniform labeled tree on n vertices from a random Pruefer sequence.
template <class Rng>
Tree random_tree(Rng& rng, int n);

}  // namespace spectree

#include <random>

namespace spectree {

template <class Rng>
Tree random_tree(Rng& rng, int n) {
  if (n <= 1) return Tree();
  if (n == 2) return make_path(2);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> seq(n - 2);
  for (int& s : seq) s = pick(rng);
  return from_pruefer(n, seq);
}

}  // namespace spectree
