#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectree/enumerate.hpp"
#include "spectree/spectra.hpp"
#include "spectree/tree.hpp"

namespace spectree {

class ResultCache;

struct Interval {
  double lo = 0;
  double hi = 0;
  double mid() const noexcept { return 0.5 * (lo + hi); }
  double width() const noexcept { return hi - lo; }
  bool overlaps(const Interval& o) const noexcept { return lo <= o.hi && o.lo <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// c1 * lambda1 + c2 * lambda2 over enclosures, endpoints chosen by sign.
Interval linear_enclosure(double c1, double c2, const TopTwo& tt);

struct PsiValue {
  double alpha = 0;
  Interval lam1, lam2;
  Interval value;
};

PsiValue psi(const TopTwo& tt, double alpha);
PsiValue psi(const Tree& t, double alpha, double tol = kDefaultTol);

enum class Objective { max, min };
enum class Family { all, dc };

std::string to_string(Objective o);
std::string to_string(Family f);
Objective parse_objective(std::string_view s);
Family parse_family(std::string_view s);

struct LinearScore {
  double c1 = 1;
  double c2 = 1;
  std::string name = "sum";

  static LinearScore psi(double alpha);
  static LinearScore sum() { return {1, 1, "sum"}; }
  static LinearScore gap() { return {1, -1, "gap"}; }
  static LinearScore lambda1() { return {1, 0, "lambda1"}; }
  static LinearScore lambda2() { return {0, 1, "lambda2"}; }
};

struct SearchOptions {
  int jobs = 1;
  double tol = kDefaultTol;
  double min_tol = 1e-14;
  int keep = 8;                     // leaders retained beyond ties
  ResultCache* cache = nullptr;     // family=all only
};

struct Candidate {
  CanonicalCode code;
  Tree tree;
  std::optional<DoubleCometParams> dc;  // set when the tree is a double comet
  TopTwo spectra;
  Interval score;
  std::string label() const;
};

struct ExtremalResult {
  int n = 0;
  double alpha = -1;  // negative when the score is not a psi combination
  Objective objective = Objective::max;
  Family family = Family::all;
  std::string score_name;
  std::vector<Candidate> winners;  // one unless a tie set is reported
  std::vector<Candidate> leaders;  // best first, winners included
  bool unique = false;
  bool tie_proven = false;      // equality shown by identical quartic factors
  bool tie_unresolved = false;  // overlap persisted at the minimal tolerance
  double runner_up_gap = 0;     // min winner bound minus best loser bound
  std::uint64_t examined = 0;
  std::uint64_t pruned = 0;     // skipped by a rigorous upper bound

  /// Equality of the reported outcome (ignores pruning statistics).
  bool same_outcome(const ExtremalResult& o) const;
};

ExtremalResult search(int n, const LinearScore& score, Objective objective, Family family,
                      const SearchOptions& opts = {});
ExtremalResult search_extremal(int n, double alpha, Objective objective, Family family,
                               const SearchOptions& opts = {});

// ---- envelopes

struct Line {
  double lambda1 = 0;
  double lambda2 = 0;
  CanonicalCode witness;
  std::string label;
  double at(double alpha) const noexcept { return lambda2 + alpha * (lambda1 - lambda2); }
};

struct Segment {
  double alpha_lo = 0;
  double alpha_hi = 1;
  Line line;
};

struct PiecewiseLinear {
  std::vector<double> breakpoints;  // 0 = a0 < a1 < ... < ak = 1
  std::vector<Segment> segments;
  double scale = 1;  // applied by evaluate
  double evaluate(double alpha) const;
};

/// One line per isomorphism class, deduplicated on (lambda1, lambda2)
/// rounded to 1e-12 with the smallest canonical code as witness.
std::vector<Line> collect_lines(int n, Family family, const SearchOptions& opts = {});
PiecewiseLinear upper_envelope(std::vector<Line> lines);
PiecewiseLinear envelope(int n, Family family, const SearchOptions& opts = {});
PiecewiseLinear normalized_envelope(int n, Family family, const SearchOptions& opts = {});

/// alpha grid 0, 0.01, ..., 1 merged with the envelope breakpoints.
std::vector<double> report_grid(const PiecewiseLinear& env);

// ---- asymptotics

/// sqrt(1/2) for alpha <= 1/2, else sqrt(alpha^2 + (1 - alpha)^2).
double limit_curve(double alpha);

struct AsymptoticParams {
  double alpha = 0;
  double t = 0;
  double q = 0;
  int n = 0;
  double eps = 0;
  double d = 0;
};

AsymptoticParams asymptotic_params(int n, double alpha);
/// DC(ceil(t(n-3)), floor((1-t)(n-3)), 3)
DoubleCometParams special_comet_D(int n, double alpha);
/// DC(ceil(t(n-3)) + 1, floor((1-t)(n-3)), 2)
DoubleCometParams special_comet_C(int n, double alpha);
double expansion_D(int n, double alpha);
double expansion_C(int n, double alpha);
/// alpha * lambda1 + (1 - alpha) * lambda2 from the closed forms.
double psi_closed(const DoubleCometParams& p, double alpha);

struct StructureProbe {
  int n = 0;
  double alpha = 0;
  DoubleCometParams winner;
  double value = 0;
  std::vector<DoubleCometParams> predicted;  // shapes the structure results name
  bool matches = false;
  double t = 0;  // alpha > 1/2 only
  double k1_fraction = 0;
  std::string note;
};

/// Double-comet family winner of psi(., alpha) and its structural check.
/// For alpha > 1/2 the check is path order 2 with |k1/n - t| <= band.
StructureProbe dc_structure_probe(int n, double alpha, double band = 0.05,
                                  const SearchOptions& opts = {});

struct GapReport {
  ExtremalResult minimum;
  bool all_balanced_dc = false;  // every minimizer is DC(k, k, l)
  ExtremalResult maximum;
  bool max_is_star = false;
};

GapReport spectral_gap_min(int n, Family family, const SearchOptions& opts = {});

}  // namespace spectree
