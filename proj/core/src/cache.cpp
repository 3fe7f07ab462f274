#include "spectree/cache.hpp"

#include <cstdlib>
#include <fstream>

#include "json.hpp"

namespace spectree {

using nlohmann::json;

ResultCache::ResultCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;  // a missing cache is simply empty
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // malformed lines are skipped; the cache is never authoritative
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("code") || !j.contains("lambda1") || !j.contains("lambda2"))
      continue;
    try {
      TopTwo tt;
      tt.lam1_lo = j["lambda1"].at(0).get<double>();
      tt.lam1_hi = j["lambda1"].at(1).get<double>();
      tt.lam2_lo = j["lambda2"].at(0).get<double>();
      tt.lam2_hi = j["lambda2"].at(1).get<double>();
      tt.tol = j.value("tol", 1.0);
      entries_[j["code"].get<std::string>()] = tt;
    } catch (const json::exception&) {
      continue;
    }
  }
}

std::optional<std::string> ResultCache::path_from_env() {
  const char* p = std::getenv(kCacheEnvVar);
  if (p == nullptr || *p == '\0') return std::nullopt;
  return std::string(p);
}

bool confirm_top_two(const Tree& t, const TopTwo& tt) {
  if (!(tt.lam1_lo <= tt.lam1_hi && tt.lam2_lo <= tt.lam2_hi)) return false;
  TreeEliminator e(t);
  const int n = t.order();
  auto above = [&](double x) { return e.count(x).above; };
  // a degenerate enclosure (lo == hi) is checked with the equal count
  auto contains = [&](double lo, double hi, int k) {
    if (lo == hi) {
      const SignCount c = e.count(lo);
      return c.above < k && c.above + c.equal >= k;
    }
    return above(hi) < k && above(lo) >= k;
  };
  return n >= 2 && contains(tt.lam1_lo, tt.lam1_hi, 1) && contains(tt.lam2_lo, tt.lam2_hi, 2);
}

std::optional<TopTwo> ResultCache::lookup(const CanonicalCode& code, const Tree& t, double tol) {
  TopTwo tt;
  {
    std::lock_guard lock(mu_);
    auto it = entries_.find(code.code);
    if (it == entries_.end()) return std::nullopt;
    tt = it->second;
  }
  if (tt.lam1_hi - tt.lam1_lo > tol || tt.lam2_hi - tt.lam2_lo > tol || !confirm_top_two(t, tt)) {
    std::lock_guard lock(mu_);
    ++rejected_;
    return std::nullopt;
  }
  std::lock_guard lock(mu_);
  ++hits_;
  return tt;
}

void ResultCache::store(const CanonicalCode& code, const TopTwo& tt) {
  std::lock_guard lock(mu_);
  entries_[code.code] = tt;
  pending_[code.code] = tt;
}

void ResultCache::flush() {
  std::lock_guard lock(mu_);
  if (pending_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw TreeError(TreeErrorKind::io, "cannot write cache file " + path_);
  for (const auto& [code, tt] : pending_) {
    json j;
    j["code"] = code;
    j["tol"] = tt.tol;
    j["lambda1"] = {tt.lam1_lo, tt.lam1_hi};
    j["lambda2"] = {tt.lam2_lo, tt.lam2_hi};
    out << j.dump() << '\n';
  }
  pending_.clear();
}

std::size_t ResultCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace spectree
