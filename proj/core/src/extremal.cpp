#include "spectree/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "spectree/cache.hpp"

namespace spectree {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TreeError bad(const std::string& what) { return TreeError(TreeErrorKind::bad_parameters, what); }

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

// Search bookkeeping. key is the score oriented so that larger is better.
struct Entry {
  std::optional<Tree> tree;
  std::optional<DoubleCometParams> dc;
  TopTwo tt;
  Interval key;
  CanonicalCode code;  // filled during finalization
};

struct Worker {
  std::vector<Entry> kept;
  double floor_lo = -kInf;  // key.lo of the keep-th best so far
  std::uint64_t examined = 0;
  std::uint64_t pruned = 0;
};

bool by_key(const Entry& a, const Entry& b) {
  if (a.key.lo != b.key.lo) return a.key.lo > b.key.lo;
  return a.key.hi > b.key.hi;
}

// Keeps the best `keep` entries plus anything that still overlaps them.
void trim(std::vector<Entry>& v, int keep, double* floor_lo) {
  std::sort(v.begin(), v.end(), by_key);
  if (static_cast<int>(v.size()) < keep) return;
  const double thr = v[keep - 1].key.lo;
  if (floor_lo) *floor_lo = std::max(*floor_lo, thr);
  auto it = std::remove_if(v.begin() + keep, v.end(), [&](const Entry& e) { return e.key.hi < thr; });
  v.erase(it, v.end());
}

// Rigorous upper bounds for a double comet with path order >= 4:
// lambda1^2 is at most the largest row sum of A^2, and lambda2 is at most
// lambda1 of the tree with one terminal removed (interlacing).
std::pair<double, double> dc_upper_bounds(const DoubleCometParams& p) {
  const double m1 = std::max({p.k1 + 3, p.k2 + 3, 4});
  const double m2 = std::max(std::min(p.k1, p.k2) + 3, 4);
  return {std::sqrt(m1) + 1e-9, std::sqrt(m2) + 1e-9};
}

void offer(Worker& w, Entry e, int keep) {
  if (static_cast<int>(w.kept.size()) >= keep && e.key.hi < w.floor_lo) return;
  w.kept.push_back(std::move(e));
  if (static_cast<int>(w.kept.size()) > 4 * keep) trim(w.kept, keep, &w.floor_lo);
}

void run_worker(Worker& w, int index, int jobs, int n, double c1, double c2, Family family,
                const SearchOptions& opts) {
  const int keep = std::max(1, opts.keep);
  if (family == Family::all) {
    TreeStream s(n, StreamMode::free_trees);
    s.skip(index);
    while (auto t = s.next()) {
      ++w.examined;
      std::optional<TopTwo> tt;
      CanonicalCode code;
      if (opts.cache) {
        code = canonical_code(*t);
        tt = opts.cache->lookup(code, *t, opts.tol);
      }
      if (!tt) {
        tt = top_two(*t, opts.tol);
        if (opts.cache) opts.cache->store(code, *tt);
      }
      Entry e{std::move(t), std::nullopt, *tt, linear_enclosure(c1, c2, *tt), std::move(code)};
      offer(w, std::move(e), keep);
      s.skip(jobs - 1);
    }
  } else {
    TreeStream s(n, StreamMode::double_comets);
    s.skip(index);
    const bool can_prune = c1 >= 0 && c2 >= 0;
    while (auto p = s.next_params()) {
      ++w.examined;
      bool skip_item = false;
      if (can_prune && p->ell >= 4 && static_cast<int>(w.kept.size()) >= keep) {
        const auto [b1, b2] = dc_upper_bounds(*p);
        if (c1 * b1 + c2 * b2 < w.floor_lo) {
          ++w.pruned;
          skip_item = true;
        }
      }
      if (!skip_item) {
        const TopTwo tt = top_two(*p, opts.tol);
        offer(w, Entry{std::nullopt, *p, tt, linear_enclosure(c1, c2, tt), {}}, keep);
      }
      s.skip(jobs - 1);
    }
  }
  trim(w.kept, keep, &w.floor_lo);
}

void refresh(Entry& e, double c1, double c2, double tol) {
  e.tt = e.dc ? top_two(*e.dc, tol) : top_two(*e.tree, tol);
  e.key = linear_enclosure(c1, c2, e.tt);
}

// Winners: the best entry plus everything overlapping the running minimum
// of their lower bounds, so every loser sits strictly below every winner.
std::size_t winner_count(const std::vector<Entry>& v) {
  if (v.empty()) return 0;
  double floor_lo = v[0].key.lo;
  std::size_t count = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = count; i < v.size(); ++i) {
      if (v[i].key.hi >= floor_lo) {
        count = i + 1;
        for (std::size_t j = 0; j < count; ++j) floor_lo = std::min(floor_lo, v[j].key.lo);
        grew = true;
      }
    }
  }
  return count;
}

void sort_entries(std::vector<Entry>& v) {
  std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) {
    if (a.key.lo != b.key.lo) return a.key.lo > b.key.lo;
    if (a.key.hi != b.key.hi) return a.key.hi > b.key.hi;
    return a.code < b.code;
  });
}

Candidate to_candidate(const Entry& e, bool flip) {
  Candidate c;
  c.code = e.code;
  c.tree = *e.tree;
  c.dc = e.dc;
  c.spectra = e.tt;
  c.score = flip ? Interval{-e.key.hi, -e.key.lo} : e.key;
  return c;
}

}  // namespace

Interval linear_enclosure(double c1, double c2, const TopTwo& tt) {
  const double lo = (c1 >= 0 ? c1 * tt.lam1_lo : c1 * tt.lam1_hi) + (c2 >= 0 ? c2 * tt.lam2_lo : c2 * tt.lam2_hi);
  const double hi = (c1 >= 0 ? c1 * tt.lam1_hi : c1 * tt.lam1_lo) + (c2 >= 0 ? c2 * tt.lam2_hi : c2 * tt.lam2_lo);
  // one ulp outward for the rounding of the combination itself
  return {down(lo), up(hi)};
}

PsiValue psi(const TopTwo& tt, double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) throw bad("alpha must lie in [0, 1]");
  PsiValue v;
  v.alpha = alpha;
  v.lam1 = {tt.lam1_lo, tt.lam1_hi};
  v.lam2 = {tt.lam2_lo, tt.lam2_hi};
  if (alpha == 1)
    v.value = v.lam1;
  else if (alpha == 0)
    v.value = v.lam2;
  else
    v.value = linear_enclosure(alpha, 1 - alpha, tt);
  return v;
}

PsiValue psi(const Tree& t, double alpha, double tol) { return psi(top_two(t, tol), alpha); }

std::string to_string(Objective o) { return o == Objective::max ? "max" : "min"; }
std::string to_string(Family f) { return f == Family::all ? "all" : "dc"; }

Objective parse_objective(std::string_view s) {
  if (s == "max") return Objective::max;
  if (s == "min") return Objective::min;
  throw bad("objective must be max or min");
}

Family parse_family(std::string_view s) {
  if (s == "all") return Family::all;
  if (s == "dc") return Family::dc;
  throw bad("family must be all or dc");
}

LinearScore LinearScore::psi(double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) throw bad("alpha must lie in [0, 1]");
  return {alpha, 1 - alpha, "psi"};
}

std::string Candidate::label() const {
  if (dc) return dc->label();
  return code.code;
}

bool ExtremalResult::same_outcome(const ExtremalResult& o) const {
  auto same_list = [](const std::vector<Candidate>& a, const std::vector<Candidate>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].code != b[i].code || !(a[i].score == b[i].score)) return false;
    return true;
  };
  return n == o.n && alpha == o.alpha && objective == o.objective && family == o.family &&
         score_name == o.score_name && unique == o.unique && tie_proven == o.tie_proven &&
         tie_unresolved == o.tie_unresolved && examined == o.examined &&
         same_list(winners, o.winners) && same_list(leaders, o.leaders);
}

ExtremalResult search(int n, const LinearScore& score, Objective objective, Family family,
                      const SearchOptions& opts) {
  if (n < 2) throw bad("search needs n >= 2");
  if (family == Family::all && n > kMaxExhaustiveOrder)
    throw bad("exhaustive search supports n <= " + std::to_string(kMaxExhaustiveOrder));
  if (!(opts.tol > 0) || !(opts.min_tol > 0)) throw bad("tolerances must be positive");
  const bool flip = objective == Objective::min;
  const double c1 = flip ? -score.c1 : score.c1;
  const double c2 = flip ? -score.c2 : score.c2;
  const int jobs = std::max(1, opts.jobs);
  const int keep = std::max(1, opts.keep);

  std::vector<Worker> workers(jobs);
  if (jobs == 1) {
    run_worker(workers[0], 0, 1, n, c1, c2, family, opts);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(jobs);
    for (int w = 0; w < jobs; ++w)
      threads.emplace_back([&, w] {
        try {
          run_worker(workers[w], w, jobs, n, c1, c2, family, opts);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : threads) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ExtremalResult r;
  r.n = n;
  r.objective = objective;
  r.family = family;
  r.score_name = score.name;
  if (score.name == "psi") r.alpha = score.c1;
  std::vector<Entry> all;
  for (auto& w : workers) {
    r.examined += w.examined;
    r.pruned += w.pruned;
    for (auto& e : w.kept) all.push_back(std::move(e));
  }
  trim(all, keep, nullptr);
  for (auto& e : all) {
    if (!e.tree) e.tree = make_double_comet(*e.dc);
    if (e.code.code.empty()) e.code = canonical_code(*e.tree);
    if (!e.dc) e.dc = recognize_double_comet(*e.tree);
  }
  sort_entries(all);

  double tol = opts.tol;
  std::size_t wc = winner_count(all);
  while (wc > 1 && tol > opts.min_tol) {
    tol = std::max(opts.min_tol, tol * 1e-2);
    for (std::size_t i = 0; i < wc; ++i) refresh(all[i], c1, c2, tol);
    sort_entries(all);
    wc = winner_count(all);
  }

  r.unique = wc == 1;
  if (wc > 1) {
    const auto& first = all[0];
    bool proven = true;
    for (std::size_t i = 0; i < wc && proven; ++i) {
      const auto& e = all[i];
      proven = e.dc && (e.dc->ell == 2 || e.dc->ell == 3) && first.dc &&
               (first.dc->ell == 2 || first.dc->ell == 3) &&
               dc_char_quartic(*e.dc) == dc_char_quartic(*first.dc);
    }
    r.tie_proven = proven;
    r.tie_unresolved = !proven;
  }

  double win_lo = kInf, lose_hi = -kInf;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i < wc)
      win_lo = std::min(win_lo, all[i].key.lo);
    else
      lose_hi = std::max(lose_hi, all[i].key.hi);
  }
  r.runner_up_gap = wc < all.size() ? win_lo - lose_hi : kInf;

  for (std::size_t i = 0; i < wc; ++i) r.winners.push_back(to_candidate(all[i], flip));
  std::sort(r.winners.begin(), r.winners.end(),
            [](const Candidate& a, const Candidate& b) { return a.code < b.code; });
  const std::size_t nlead = std::max<std::size_t>(wc, std::min<std::size_t>(keep, all.size()));
  for (std::size_t i = 0; i < nlead; ++i) r.leaders.push_back(to_candidate(all[i], flip));
  if (opts.cache) opts.cache->flush();
  return r;
}

ExtremalResult search_extremal(int n, double alpha, Objective objective, Family family,
                               const SearchOptions& opts) {
  return search(n, LinearScore::psi(alpha), objective, family, opts);
}

// ---- envelopes

double PiecewiseLinear::evaluate(double alpha) const {
  if (segments.empty()) throw bad("empty envelope");
  if (!(alpha >= 0 && alpha <= 1)) throw bad("alpha must lie in [0, 1]");
  auto it = std::upper_bound(breakpoints.begin() + 1, breakpoints.end() - 1, alpha);
  const auto idx = static_cast<std::size_t>(it - (breakpoints.begin() + 1));
  return scale * segments[idx].line.at(alpha);
}

namespace {

struct RawLine {
  double l1 = 0, l2 = 0;
  std::optional<Tree> tree;
  std::optional<DoubleCometParams> dc;
  CanonicalCode code;

  const CanonicalCode& witness() {
    if (code.code.empty()) {
      if (!tree) tree = make_double_comet(*dc);
      code = canonical_code(*tree);
    }
    return code;
  }
};

using LineKey = std::pair<long long, long long>;

LineKey line_key(double l1, double l2) { return {std::llround(l1 * 1e12), std::llround(l2 * 1e12)}; }

void add_line(std::map<LineKey, RawLine>& lines, RawLine l) {
  const LineKey k = line_key(l.l1, l.l2);
  auto it = lines.find(k);
  if (it == lines.end()) {
    lines.emplace(k, std::move(l));
  } else if (l.witness() < it->second.witness()) {
    it->second = std::move(l);
  }
}

}  // namespace

std::vector<Line> collect_lines(int n, Family family, const SearchOptions& opts) {
  if (n < 2) throw bad("envelope needs n >= 2");
  if (family == Family::all && n > kMaxExhaustiveOrder)
    throw bad("exhaustive envelope supports n <= " + std::to_string(kMaxExhaustiveOrder));
  const int jobs = std::max(1, opts.jobs);
  std::vector<std::map<LineKey, RawLine>> parts(jobs);
  auto work = [&](int w) {
    if (family == Family::all) {
      TreeStream s(n, StreamMode::free_trees);
      s.skip(w);
      while (auto t = s.next()) {
        const TopTwo tt = top_two(*t, opts.tol);
        auto dc = recognize_double_comet(*t);
        add_line(parts[w], RawLine{tt.lam1(), tt.lam2(), std::move(t), dc, {}});
        s.skip(jobs - 1);
      }
    } else {
      TreeStream s(n, StreamMode::double_comets);
      s.skip(w);
      while (auto p = s.next_params()) {
        const TopTwo tt = top_two(*p, opts.tol);
        add_line(parts[w], RawLine{tt.lam1(), tt.lam2(), std::nullopt, *p, {}});
        s.skip(jobs - 1);
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  std::map<LineKey, RawLine> merged;
  for (auto& part : parts)
    for (auto& [k, l] : part) add_line(merged, std::move(l));

  std::vector<Line> out;
  for (auto& [k, l] : merged) {
    Line line;
    line.lambda1 = l.l1;
    line.lambda2 = l.l2;
    line.witness = l.witness();
    line.label = l.dc ? l.dc->label() : line.witness.code;
    out.push_back(std::move(line));
  }
  return out;
}

PiecewiseLinear upper_envelope(std::vector<Line> lines) {
  if (lines.empty()) throw bad("no lines");
  auto slope = [](const Line& l) { return l.lambda1 - l.lambda2; };
  // first line: highest at alpha = 0, then steepest
  std::size_t cur = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double a = lines[i].at(0), b = lines[cur].at(0);
    if (a > b || (a == b && slope(lines[i]) > slope(lines[cur]))) cur = i;
  }
  PiecewiseLinear env;
  env.breakpoints.push_back(0);
  double pos = 0;
  while (true) {
    const Line& L = lines[cur];
    std::size_t next = lines.size();
    double best = kInf;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const double ds = slope(lines[i]) - slope(L);
      if (ds <= 0) continue;
      double x = (L.lambda2 - lines[i].lambda2) / ds;
      if (x >= 1) continue;
      x = std::max(x, pos);
      if (x < best || (x == best && slope(lines[i]) > slope(lines[next]))) {
        best = x;
        next = i;
      }
    }
    if (next == lines.size()) {
      env.segments.push_back({pos, 1.0, L});
      env.breakpoints.push_back(1.0);
      break;
    }
    if (best > pos) {
      env.segments.push_back({pos, best, L});
      env.breakpoints.push_back(best);
      pos = best;
    }
    cur = next;
  }
  return env;
}

PiecewiseLinear envelope(int n, Family family, const SearchOptions& opts) {
  return upper_envelope(collect_lines(n, family, opts));
}

PiecewiseLinear normalized_envelope(int n, Family family, const SearchOptions& opts) {
  PiecewiseLinear env = envelope(n, family, opts);
  env.scale = 1 / std::sqrt(static_cast<double>(n - 1));
  return env;
}

std::vector<double> report_grid(const PiecewiseLinear& env) {
  std::vector<double> g;
  for (int i = 0; i <= 100; ++i) g.push_back(i / 100.0);
  g.insert(g.end(), env.breakpoints.begin(), env.breakpoints.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

// ---- asymptotics

double limit_curve(double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) throw bad("alpha must lie in [0, 1]");
  if (alpha <= 0.5) return std::sqrt(0.5);
  return std::sqrt(alpha * alpha + (1 - alpha) * (1 - alpha));
}

AsymptoticParams asymptotic_params(int n, double alpha) {
  if (!(alpha > 0.5 && alpha < 1)) throw bad("expansions need alpha in (1/2, 1)");
  AsymptoticParams a;
  a.alpha = alpha;
  a.n = n;
  const double s = alpha * alpha + (1 - alpha) * (1 - alpha);
  a.t = alpha * alpha / s;
  a.q = std::pow(s, 1.5) * (2 * alpha - 1) / (alpha * alpha * (1 - alpha) * (1 - alpha));
  const double x = a.t * (n - 3);
  a.eps = std::ceil(x) - x;
  a.d = 1 + a.eps - 2 * a.t;
  return a;
}

DoubleCometParams special_comet_D(int n, double alpha) {
  const AsymptoticParams a = asymptotic_params(n, alpha);
  const int k1 = static_cast<int>(std::ceil(a.t * (n - 3)));
  if (k1 > n - 3 || n < 4) throw bad("n too small for the special comet");
  return {k1, n - 3 - k1, 3};
}

DoubleCometParams special_comet_C(int n, double alpha) {
  const DoubleCometParams d = special_comet_D(n, alpha);
  return {d.k1 + 1, d.k2, 2};
}

double expansion_D(int n, double alpha) {
  const AsymptoticParams a = asymptotic_params(n, alpha);
  const double s = alpha * alpha + (1 - alpha) * (1 - alpha);
  const double m = n - 1.0;
  return std::sqrt(s * m) + a.q * a.d / (8 * std::pow(m, 1.5));
}

double expansion_C(int n, double alpha) {
  const AsymptoticParams a = asymptotic_params(n, alpha);
  const double s = alpha * alpha + (1 - alpha) * (1 - alpha);
  const double m = n - 1.0;
  return std::sqrt(s * m) + a.q / (8 * std::pow(m, 1.5)) * (a.t / (2 * a.t - 1) + a.d);
}

double psi_closed(const DoubleCometParams& p, double alpha) {
  const auto [l1, l2] = dc_top_two_closed(p);
  return alpha * l1 + (1 - alpha) * l2;
}

StructureProbe dc_structure_probe(int n, double alpha, double band, const SearchOptions& opts) {
  if (!(alpha > 0 && alpha < 1)) throw bad("probe needs alpha in (0, 1)");
  StructureProbe pr;
  pr.n = n;
  pr.alpha = alpha;
  const ExtremalResult r = search_extremal(n, alpha, Objective::max, Family::dc, opts);
  const Candidate& w = r.winners.front();
  pr.winner = *w.dc;
  pr.value = w.score.mid();
  if (!r.unique) pr.note = "winner is part of a tie set of size " + std::to_string(r.winners.size());

  if (alpha > 0.5) {
    const double s = alpha * alpha + (1 - alpha) * (1 - alpha);
    pr.t = alpha * alpha / s;
    pr.k1_fraction = static_cast<double>(std::max(pr.winner.k1, pr.winner.k2)) / n;
    pr.matches = pr.winner.ell == 2 && std::abs(pr.k1_fraction - pr.t) <= band;
    return pr;
  }
  const double threshold = (std::sqrt(5.0) - 1) / (2 * std::sqrt(5.0));
  if (n % 2 == 1 || alpha == 0.5) {
    pr.predicted.push_back(normalize({(n - 2) / 2, (n - 3) / 2, 3}));
  } else if (alpha < threshold) {
    pr.predicted.push_back(normalize({(n - 4) / 2, (n - 4) / 2, 4}));
  } else if (alpha > threshold) {
    pr.predicted.push_back(normalize({(n - 2) / 2, (n - 4) / 2, 3}));
  } else {
    pr.predicted.push_back(normalize({(n - 4) / 2, (n - 4) / 2, 4}));
    pr.predicted.push_back(normalize({(n - 2) / 2, (n - 4) / 2, 3}));
  }
  pr.matches = std::find(pr.predicted.begin(), pr.predicted.end(), pr.winner) != pr.predicted.end();
  return pr;
}

GapReport spectral_gap_min(int n, Family family, const SearchOptions& opts) {
  GapReport g;
  g.minimum = search(n, LinearScore::gap(), Objective::min, family, opts);
  g.all_balanced_dc = std::all_of(g.minimum.winners.begin(), g.minimum.winners.end(),
                                  [](const Candidate& c) { return c.dc && c.dc->k1 == c.dc->k2; });
  g.maximum = search(n, LinearScore::gap(), Objective::max, family, opts);
  g.max_is_star = g.maximum.unique && max_degree(g.maximum.winners.front().tree) == n - 1;
  return g;
}

}  // namespace spectree
