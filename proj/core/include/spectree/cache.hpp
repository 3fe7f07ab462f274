#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "spectree/spectra.hpp"
#include "spectree/tree.hpp"

namespace spectree {

inline constexpr const char* kCacheEnvVar = "SPECTREE_CACHE";

/// JSON-lines store of certified (lambda1, lambda2) enclosures keyed by
/// canonical code. Entries are advisory: a hit is used only if its width
/// meets the requested tolerance and four eigenvalue counts on the actual
/// tree confirm both enclosures. Thread-safe.
class ResultCache {
 public:
  explicit ResultCache(std::string path);

  /// Path from the environment variable, if set and non-empty.
  static std::optional<std::string> path_from_env();

  std::optional<TopTwo> lookup(const CanonicalCode& code, const Tree& t, double tol);
  void store(const CanonicalCode& code, const TopTwo& tt);
  /// Appends entries added since the last flush.
  void flush();

  std::size_t size() const;
  std::uint64_t hits() const { return hits_; }
  std::uint64_t rejected() const { return rejected_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, TopTwo> entries_;
  std::map<std::string, TopTwo> pending_;  // ordered so flushes are reproducible
  std::uint64_t hits_ = 0;
  std::uint64_t rejected_ = 0;
};

/// True when the enclosures are consistent with eigenvalue counts of t.
bool confirm_top_two(const Tree& t, const TopTwo& tt);

}  // namespace spectree
