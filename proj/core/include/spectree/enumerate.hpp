#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spectree/tree.hpp"

namespace spectree {

inline constexpr int kMaxExhaustiveOrder = 24;
inline constexpr int kMaxPrueferOrder = 10;

enum class StreamMode { free_trees, labeled_oracle, double_comets };

/// Resumable, deterministic stream over one representative per
/// isomorphism class. position() counts items already yielded; skip()
/// advances without materializing trees, so W workers can each take the
/// positions congruent to their index modulo W.
///
/// free_trees: level-sequence successor generation restricted to
///   centroid-rooted canonical sequences (one per free tree).
/// labeled_oracle: every Pruefer sequence decoded and deduplicated; the
///   classes are then yielded in canonical-code order. Brute force, n <= 10.
/// double_comets: the star, the path (n >= 4), then DC(k1,k2,l) with
///   l >= 2, k1 >= k2, k1 >= 2, k2 != 1, ordered by l then decreasing k2.
class TreeStream {
 public:
  TreeStream(int n, StreamMode mode);

  int order() const noexcept { return n_; }
  StreamMode mode() const noexcept { return mode_; }
  std::uint64_t position() const noexcept { return position_; }

  std::optional<Tree> next();
  /// Double-comet mode only.
  std::optional<DoubleCometParams> next_params();
  /// Advances by up to k items; returns how many were skipped.
  std::uint64_t skip(std::uint64_t k);

 private:
  bool advance();  // moves the cursor onto the next item; false at the end
  Tree current_tree() const;

  int n_;
  StreamMode mode_;
  std::uint64_t position_ = 0;
  bool started_ = false;
  bool done_ = false;

  std::vector<int> levels_;       // free_trees
  std::vector<Tree> classes_;     // labeled_oracle
  std::size_t class_index_ = 0;   // labeled_oracle
  DoubleCometParams dc_{};        // double_comets
  int dc_stage_ = 0;
};

std::vector<Tree> enumerate_free_trees(int n);
std::uint64_t count_free_trees(int n);
/// One representative per class, sorted by canonical code.
std::vector<Tree> enumerate_labeled_oracle(int n);
std::vector<DoubleCometParams> enumerate_double_comets(int n);

}  // namespace spectree
