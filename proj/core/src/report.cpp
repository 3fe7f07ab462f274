#include "spectree/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "json.hpp"

namespace spectree {

std::string fmt15(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x == 0 ? 0.0 : x);  // no "-0"
  return buf;
}

int VerifyReport::passed() const {
  int k = 0;
  for (const auto& c : cases) k += c.pass;
  return k;
}

int VerifyReport::failed() const { return static_cast<int>(cases.size()) - passed(); }

void VerifyReport::numeric(std::string id, double expected, double got, double tol, std::string note) {
  const bool pass = std::abs(expected - got) <= tol;  // false for NaN
  cases.push_back({std::move(id), fmt15(expected), fmt15(got), fmt15(tol), pass, std::move(note)});
}

void VerifyReport::exact(std::string id, std::string expected, std::string got, std::string note) {
  const bool pass = expected == got;
  cases.push_back({std::move(id), std::move(expected), std::move(got), "exact", pass, std::move(note)});
}

void VerifyReport::flag(std::string id, std::string expected, std::string got, bool pass, std::string note) {
  cases.push_back({std::move(id), std::move(expected), std::move(got), "-", pass, std::move(note)});
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_report_csv(std::ostream& out, const VerifyReport& r, bool header) {
  if (header) out << "suite,seed,id,expected,got,tolerance,pass\n";
  for (const auto& c : r.cases)
    out << csv_field(r.suite) << ',' << r.seed << ',' << csv_field(c.id) << ',' << csv_field(c.expected)
        << ',' << csv_field(c.got) << ',' << csv_field(c.tolerance) << ',' << (c.pass ? "true" : "false")
        << '\n';
}

void write_envelope_csv(std::ostream& out, const PiecewiseLinear& env) {
  out << "alpha_lo,alpha_hi,lambda1,lambda2,witness_code\n";
  for (const auto& s : env.segments)
    out << fmt15(s.alpha_lo) << ',' << fmt15(s.alpha_hi) << ',' << fmt15(s.line.lambda1) << ','
        << fmt15(s.line.lambda2) << ',' << csv_field(s.line.witness.code) << '\n';
}

void write_spectrum_csv(std::ostream& out, const std::vector<double>& values) {
  out << "index,eigenvalue\n";
  for (std::size_t i = 0; i < values.size(); ++i) out << i + 1 << ',' << fmt15(values[i]) << '\n';
}

std::string report_json(const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["summary"] = {{"cases", r.cases.size()}, {"passed", r.passed()}, {"failed", r.failed()}};
  j["runtime_seconds"] = r.runtime_seconds;
  auto& cases = j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : r.cases) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["expected"] = c.expected;
    e["got"] = c.got;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    if (!c.note.empty()) e["note"] = c.note;
    cases.push_back(std::move(e));
  }
  return j.dump(2);
}

void write_output(const std::string& path, const std::function<void(std::ostream&)>& fill) {
  if (path.empty() || path == "-") {
    fill(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TreeError(TreeErrorKind::io, "cannot open " + path + " for writing");
  fill(out);
  out.flush();
  if (!out) throw TreeError(TreeErrorKind::io, "write failed for " + path);
}

}  // namespace spectree
