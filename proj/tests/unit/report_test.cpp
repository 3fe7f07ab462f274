#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "spectree/cache.hpp"
#include "spectree/report.hpp"
#include "spectree/verify.hpp"

using namespace spectree;

namespace {

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("number formatting") {
  CHECK(fmt15(0.1) == "0.1");
  CHECK(fmt15(-0.0) == "0");
  CHECK(fmt15(1.0 / 3) == "0.333333333333333");
  CHECK(fmt15(2.23606797749979) == "2.23606797749979");
}

TEST_CASE("report cases") {
  VerifyReport r;
  r.suite = "demo";
  r.numeric("close", 1.0, 1.0 + 5e-11, 1e-10);
  r.numeric("far", 1.0, 1.1, 1e-10);
  r.numeric("nan", 1.0, std::nan(""), 1e-10);
  r.exact("same", "x", "x");
  r.flag("bad", "true", "false", false);
  CHECK(r.passed() == 2);
  CHECK(r.failed() == 3);
  CHECK_FALSE(r.ok());

  std::stringstream csv;
  write_report_csv(csv, r);
  const std::string text = csv.str();
  CHECK(text.rfind("suite,seed,id,expected,got,tolerance,pass\n", 0) == 0);
  CHECK(count_lines(text) == 6);

  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["summary"]["failed"] == 3);
  CHECK(j["cases"].size() == 5);
}

TEST_CASE("csv quoting") {
  VerifyReport r;
  r.suite = "q";
  r.exact("id,with,commas", "a\"b", "a\"b");
  std::stringstream csv;
  write_report_csv(csv, r, false);
  CHECK(csv.str() == "q,0,\"id,with,commas\",\"a\"\"b\",\"a\"\"b\",exact,true\n");
}

TEST_CASE("envelope and spectrum csv shapes") {
  const PiecewiseLinear env = envelope(6, Family::all);
  std::stringstream e;
  write_envelope_csv(e, env);
  CHECK(count_lines(e.str()) == static_cast<int>(env.segments.size()) + 1);
  CHECK(e.str().rfind("alpha_lo,alpha_hi,lambda1,lambda2,witness_code\n", 0) == 0);

  std::stringstream s;
  write_spectrum_csv(s, dense_spectrum_oracle(make_double_comet({2, 2, 3})));
  CHECK(count_lines(s.str()) == 8);
}

TEST_CASE("output errors name the path") {
  try {
    write_output("/nonexistent-dir/out.csv", [](std::ostream& os) { os << "x"; });
    FAIL("expected an error");
  } catch (const TreeError& e) {
    CHECK(e.kind() == TreeErrorKind::io);
    CHECK(std::string(e.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
  }
}

TEST_CASE("result cache") {
  const std::string path = "report_test_cache.jsonl";
  std::remove(path.c_str());
  const Tree t = make_double_comet({3, 2, 4});
  const CanonicalCode code = canonical_code(t);
  const TopTwo tt = top_two(t);
  {
    ResultCache c(path);
    CHECK_FALSE(c.lookup(code, t, 1e-12).has_value());
    c.store(code, tt);
    c.flush();
  }
  {
    ResultCache c(path);
    CHECK(c.size() == 1);
    const auto hit = c.lookup(code, t, 1e-12);
    REQUIRE(hit.has_value());
    CHECK(hit->lam1_lo == tt.lam1_lo);
    CHECK(c.hits() == 1);
    // a tighter tolerance than stored cannot be served
    CHECK_FALSE(c.lookup(code, t, 1e-16).has_value());
  }
  {
    // a corrupted entry is rejected by the count check, junk lines are skipped
    std::ofstream out(path, std::ios::app);
    out << "not json\n";
    nlohmann::json bad;
    bad["code"] = canonical_code(make_path(9)).code;
    bad["lambda1"] = {3.0, 3.0};
    bad["lambda2"] = {1.0, 1.0};
    bad["tol"] = 1e-12;
    out << bad.dump() << '\n';
  }
  {
    ResultCache c(path);
    const Tree p9 = make_path(9);
    CHECK_FALSE(c.lookup(canonical_code(p9), p9, 1e-12).has_value());
    CHECK(c.rejected() == 1);
  }
  std::remove(path.c_str());
}

TEST_CASE("cached searches give the same outcome") {
  const std::string path = "report_test_search_cache.jsonl";
  std::remove(path.c_str());
  const auto plain = search_extremal(10, 0.5, Objective::max, Family::all);
  for (int round = 0; round < 2; ++round) {
    ResultCache c(path);
    SearchOptions o;
    o.cache = &c;
    CHECK(search_extremal(10, 0.5, Objective::max, Family::all, o).same_outcome(plain));
    c.flush();
    if (round == 1) CHECK(c.hits() > 0);
  }
  std::remove(path.c_str());
}

TEST_CASE("random trees") {
  std::mt19937_64 rng(1);
  CHECK(random_tree(rng, 1).order() == 1);
  CHECK(random_tree(rng, 2).order() == 2);
  CHECK(random_tree(rng, 17).order() == 17);
}

TEST_CASE("suites") {
  CHECK(suite_names().size() == 13);
  CHECK_THROWS_AS(run_suite("nope"), TreeError);

  VerifyOptions quick;
  quick.quick = true;
  for (const char* name : {"figure2", "figure3", "closed-forms", "lemmas", "identity", "center", "envelope-oracle",
                           "enum-counts", "max-sum", "lambda2-max", "lambda2-second"}) {
    CAPTURE(name);
    const VerifyReport r = run_suite(name, quick);
    CHECK(r.suite == name);
    CHECK(r.seed == kDefaultSeed);
    CHECK_FALSE(r.cases.empty());
    for (const auto& c : r.cases) {
      CAPTURE(c.id);
      CAPTURE(c.got);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("suite output is reproducible") {
  VerifyOptions quick;
  quick.quick = true;
  for (const char* name : {"lemmas", "identity", "figure3"}) {
    std::stringstream a, b;
    write_report_csv(a, run_suite(name, quick));
    write_report_csv(b, run_suite(name, quick));
    CHECK(a.str() == b.str());
  }
}
