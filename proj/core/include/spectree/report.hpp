#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spectree/extremal.hpp"

namespace spectree {

struct CaseResult {
  std::string id;
  std::string expected;
  std::string got;
  std::string tolerance;
  bool pass = false;
  std::string note;  // not part of the CSV
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;
  double runtime_seconds = 0;

  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0; }

  // case builders; numbers are formatted with 15 significant digits
  void numeric(std::string id, double expected, double got, double tol, std::string note = {});
  void exact(std::string id, std::string expected, std::string got, std::string note = {});
  void flag(std::string id, std::string expected, std::string got, bool pass, std::string note = {});
};

std::string fmt15(double x);

/// Header: suite,seed,id,expected,got,tolerance,pass
void write_report_csv(std::ostream& out, const VerifyReport& r, bool header = true);
/// Header: alpha_lo,alpha_hi,lambda1,lambda2,witness_code
void write_envelope_csv(std::ostream& out, const PiecewiseLinear& env);
/// Header: index,eigenvalue
void write_spectrum_csv(std::ostream& out, const std::vector<double>& values);

std::string report_json(const VerifyReport& r);

/// Writes through `fill` to path ("-" is stdout); I/O errors name the path.
void write_output(const std::string& path, const std::function<void(std::ostream&)>& fill);

}  // namespace spectree
