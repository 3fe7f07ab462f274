#include <algorithm>
#include <atomic>
#include <iostream>
#include <memory>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "spectree/cache.hpp"
#include "spectree/enumerate.hpp"
#include "spectree/extremal.hpp"
#include "spectree/report.hpp"
#include "spectree/spectra.hpp"
#include "spectree/verify.hpp"

using namespace spectree;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  double tol = kDefaultTol;
  int jobs = 1;
  std::uint64_t seed = kDefaultSeed;
  bool json = false;
  std::string out = "-";
};

json interval_json(double lo, double hi) { return {{"lo", lo}, {"hi", hi}}; }

json candidate_json(const Candidate& c) {
  json j;
  j["label"] = c.label();
  j["code"] = c.code.code;
  j["lambda1"] = interval_json(c.spectra.lam1_lo, c.spectra.lam1_hi);
  j["lambda2"] = interval_json(c.spectra.lam2_lo, c.spectra.lam2_hi);
  j["score"] = interval_json(c.score.lo, c.score.hi);
  return j;
}

json result_json(const ExtremalResult& r) {
  json j;
  j["n"] = r.n;
  if (r.alpha >= 0) j["alpha"] = r.alpha;
  j["score"] = r.score_name;
  j["objective"] = to_string(r.objective);
  j["family"] = to_string(r.family);
  j["unique"] = r.unique;
  j["tie_proven"] = r.tie_proven;
  j["tie_unresolved"] = r.tie_unresolved;
  j["runner_up_gap"] = r.runner_up_gap;
  j["examined"] = r.examined;
  j["pruned"] = r.pruned;
  auto& w = j["winners"] = json::array();
  for (const auto& c : r.winners) w.push_back(candidate_json(c));
  return j;
}

void print_result(std::ostream& out, const ExtremalResult& r) {
  out << to_string(r.objective) << ' ' << r.score_name << " n=" << r.n;
  if (r.alpha >= 0) out << " alpha=" << fmt15(r.alpha);
  out << " family=" << to_string(r.family) << '\n';
  for (const auto& c : r.winners)
    out << "  " << c.label() << "  score=" << fmt15(c.score.mid()) << "  lambda1=" << fmt15(c.spectra.lam1())
        << "  lambda2=" << fmt15(c.spectra.lam2()) << "  code=" << c.code.code << '\n';
  if (r.unique)
    out << "  unique, separated from the runner-up by " << fmt15(r.runner_up_gap) << '\n';
  else if (r.tie_proven)
    out << "  exact tie (identical characteristic factors)\n";
  else if (r.tie_unresolved)
    out << "  overlap persisted at the minimal tolerance; tie not resolved\n";
  out << "  examined " << r.examined << ", pruned " << r.pruned << '\n';
}

// Holds the cache named by the environment, if any, and flushes it on exit.
struct CacheScope {
  std::unique_ptr<ResultCache> cache;
  CacheScope() {
    if (auto p = ResultCache::path_from_env()) cache = std::make_unique<ResultCache>(*p);
  }
  ~CacheScope() {
    if (!cache) return;
    try {
      cache->flush();
    } catch (const std::exception& e) {
      std::cerr << "warning: " << e.what() << '\n';
    }
  }
};

SearchOptions search_options(const Globals& g, ResultCache* cache) {
  SearchOptions o;
  o.jobs = std::max(1, g.jobs);
  o.tol = g.tol;
  o.cache = cache;
  return o;
}

int run_enumerate(const Globals& g, int n, const std::string& family, bool count_only) {
  const Family fam = parse_family(family);
  if (n < 1) throw TreeError(TreeErrorKind::bad_parameters, "n must be positive");
  if (count_only) {
    const std::uint64_t count =
        fam == Family::dc ? enumerate_double_comets(n).size() : count_free_trees(n);
    write_output(g.out, [&](std::ostream& os) {
      if (g.json)
        os << json{{"n", n}, {"family", family}, {"count", count}}.dump(2) << '\n';
      else
        os << count << '\n';
    });
    return 0;
  }
  write_output(g.out, [&](std::ostream& os) {
    TreeStream s(n, fam == Family::dc ? StreamMode::double_comets : StreamMode::free_trees);
    bool first = true;
    while (auto t = s.next()) {
      if (!first) os << '\n';
      first = false;
      write_tree_text(os, *t);
    }
  });
  return 0;
}

int run_spectrum(const Globals& g, const std::string& spec, bool full) {
  const Tree t = parse_tree_spec(spec);
  const TopTwo tt = top_two(t, g.tol);
  std::vector<double> all;
  if (full) all = dense_spectrum_oracle(t);
  write_output(g.out, [&](std::ostream& os) {
    if (g.json) {
      json j;
      j["n"] = t.order();
      j["lambda1"] = interval_json(tt.lam1_lo, tt.lam1_hi);
      j["lambda2"] = interval_json(tt.lam2_lo, tt.lam2_hi);
      if (full) j["spectrum"] = all;
      os << j.dump(2) << '\n';
    } else if (full) {
      write_spectrum_csv(os, all);
    } else {
      os << "lambda1 " << fmt15(tt.lam1_lo) << ' ' << fmt15(tt.lam1_hi) << '\n';
      os << "lambda2 " << fmt15(tt.lam2_lo) << ' ' << fmt15(tt.lam2_hi) << '\n';
    }
  });
  return 0;
}

int run_extremal(const Globals& g, int n, std::optional<double> alpha, const std::string& score,
                 const std::string& objective, const std::string& family) {
  CacheScope cache;
  const auto opts = search_options(g, cache.cache.get());
  const Objective obj = parse_objective(objective);
  const Family fam = parse_family(family);
  ExtremalResult r;
  if (alpha) {
    r = search_extremal(n, *alpha, obj, fam, opts);
  } else {
    LinearScore s;
    if (score == "sum") s = LinearScore::sum();
    else if (score == "gap") s = LinearScore::gap();
    else if (score == "lambda1") s = LinearScore::lambda1();
    else if (score == "lambda2") s = LinearScore::lambda2();
    else throw TreeError(TreeErrorKind::bad_parameters, "unknown score: " + score);
    r = search(n, s, obj, fam, opts);
  }
  write_output(g.out, [&](std::ostream& os) {
    if (g.json)
      os << result_json(r).dump(2) << '\n';
    else
      print_result(os, r);
  });
  return 0;
}

int run_envelope(const Globals& g, int n, const std::string& family, bool normalized) {
  CacheScope cache;
  const auto opts = search_options(g, cache.cache.get());
  const Family fam = parse_family(family);
  const PiecewiseLinear env = normalized ? normalized_envelope(n, fam, opts) : envelope(n, fam, opts);
  write_output(g.out, [&](std::ostream& os) {
    if (!g.json) {
      write_envelope_csv(os, env);
      return;
    }
    json j;
    j["n"] = n;
    j["family"] = family;
    j["scale"] = env.scale;
    auto& segs = j["segments"] = json::array();
    for (const auto& s : env.segments)
      segs.push_back({{"alpha_lo", s.alpha_lo},
                      {"alpha_hi", s.alpha_hi},
                      {"lambda1", s.line.lambda1},
                      {"lambda2", s.line.lambda2},
                      {"witness", s.line.label},
                      {"witness_code", s.line.witness.code}});
    os << j.dump(2) << '\n';
  });
  return 0;
}

int run_gap(const Globals& g, int n, const std::string& family) {
  CacheScope cache;
  const GapReport rep = spectral_gap_min(n, parse_family(family), search_options(g, cache.cache.get()));
  write_output(g.out, [&](std::ostream& os) {
    if (g.json) {
      json j;
      j["minimum"] = result_json(rep.minimum);
      j["all_balanced_dc"] = rep.all_balanced_dc;
      j["maximum"] = result_json(rep.maximum);
      j["max_is_star"] = rep.max_is_star;
      os << j.dump(2) << '\n';
      return;
    }
    print_result(os, rep.minimum);
    os << "  every minimizer is a balanced double comet: " << (rep.all_balanced_dc ? "yes" : "no") << '\n';
    print_result(os, rep.maximum);
    os << "  maximizer is the star: " << (rep.max_is_star ? "yes" : "no") << '\n';
  });
  return 0;
}

int run_verify(const Globals& g, const std::vector<std::string>& suites, bool quick) {
  std::vector<std::string> names;
  for (const auto& s : suites) {
    if (s == "all")
      names.insert(names.end(), suite_names().begin(), suite_names().end());
    else
      names.push_back(s);
  }
  for (const auto& n : names)
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
      throw TreeError(TreeErrorKind::bad_parameters, "unknown suite: " + n);

  VerifyOptions vo;
  vo.seed = g.seed;
  vo.quick = quick;
  const int jobs = std::max(1, g.jobs);
  std::vector<VerifyReport> reports(names.size());
  if (names.size() > 1 && jobs > 1) {
    // suites run side by side, each single-threaded; results keep suite order
    vo.jobs = 1;
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(names.size());
    for (int w = 0; w < std::min<int>(jobs, static_cast<int>(names.size())); ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < names.size();) {
          try {
            reports[i] = run_suite(names[i], vo);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    vo.jobs = jobs;
    for (std::size_t i = 0; i < names.size(); ++i) reports[i] = run_suite(names[i], vo);
  }

  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.ok();
    std::cerr << (r.ok() ? "PASS " : "FAIL ") << r.suite << "  " << r.passed() << '/' << r.cases.size()
              << "  " << fmt15(r.runtime_seconds) << "s\n";
    for (const auto& c : r.cases)
      if (!c.pass)
        std::cerr << "  failed " << c.id << ": expected " << c.expected << ", got " << c.got
                  << (c.note.empty() ? "" : "  (" + c.note + ")") << '\n';
  }
  write_output(g.out, [&](std::ostream& os) {
    if (g.json) {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(json::parse(report_json(r)));
      os << (arr.size() == 1 ? arr[0] : arr).dump(2) << '\n';
    } else {
      for (std::size_t i = 0; i < reports.size(); ++i) write_report_csv(os, reports[i], i == 0);
    }
  });
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top two adjacency eigenvalues of trees and their extremal problems"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Enclosure width for lambda1 and lambda2")->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--seed", g.seed, "Seed for randomized suites");
  app.add_flag("--json", g.json, "JSON instead of text/CSV");
  app.add_option("--out", g.out, "Output file, '-' for stdout");

  int n = 0;
  std::string family = "all";
  const auto family_check = CLI::IsMember({"all", "dc"});

  auto* en = app.add_subcommand("enumerate", "List all trees of order n (one per isomorphism class)");
  bool count_only = false;
  en->add_option("--n", n, "Order")->required();
  en->add_option("--family", family)->check(family_check);
  en->add_flag("--count-only", count_only, "Print only the number of trees");

  auto* sp = app.add_subcommand("spectrum", "Certified lambda1, lambda2 of one tree");
  std::string tree_spec;
  bool full = false;
  sp->add_option("--tree", tree_spec, "path:N, star:N, dc:K1,K2,L or file:PATH")->required();
  sp->add_flag("--full", full, "Full spectrum from the dense solver (n <= 64)");

  auto* ex = app.add_subcommand("extremal", "Extremal tree for alpha*lambda1 + (1-alpha)*lambda2");
  std::optional<double> alpha;
  std::string objective = "max", score = "sum";
  ex->add_option("--n", n, "Order")->required();
  auto* alpha_opt = ex->add_option("--alpha", alpha, "Weight on lambda1")->check(CLI::Range(0.0, 1.0));
  ex->add_option("--score", score, "Score when --alpha is absent")
      ->check(CLI::IsMember({"sum", "gap", "lambda1", "lambda2"}))
      ->excludes(alpha_opt);
  ex->add_option("--objective", objective)->check(CLI::IsMember({"max", "min"}));
  ex->add_option("--family", family)->check(family_check);

  auto* ev = app.add_subcommand("envelope", "Upper envelope of the lines alpha -> psi(T, alpha)");
  bool normalized = false;
  ev->add_option("--n", n, "Order")->required();
  ev->add_option("--family", family)->check(family_check);
  ev->add_flag("--normalized", normalized, "Divide by sqrt(n-1)");

  auto* gp = app.add_subcommand("gap", "Minimum and maximum of lambda1 - lambda2");
  gp->add_option("--n", n, "Order")->required();
  gp->add_option("--family", family)->check(family_check);

  auto* vf = app.add_subcommand("verify", "Run verification suites; exit status 0 iff every case passes");
  std::vector<std::string> suites;
  bool quick = false;
  vf->add_option("--suite", suites, "Suite names (comma separated) or 'all'")->required()->delimiter(',');
  vf->add_flag("--quick", quick, "Smaller orders and sample counts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*en) return run_enumerate(g, n, family, count_only);
    if (*sp) return run_spectrum(g, tree_spec, full);
    if (*ex) return run_extremal(g, n, alpha, score, objective, family);
    if (*ev) return run_envelope(g, n, family, normalized);
    if (*gp) return run_gap(g, n, family);
    if (*vf) return run_verify(g, suites, quick);
  } catch (const TreeError& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
