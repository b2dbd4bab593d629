#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "kohn/exponent_set.hpp"

namespace kohn::cli {

inline constexpr std::string_view kSchema = "kohn-coerce/1";
inline constexpr std::string_view kVersion = "1.0.0";

// JSON array [[a,b],...] or whitespace separated "a,b" tokens.
// Errors: ParseError (with line/column), NegativeExponent, DuplicatePoint
// (with both indices), EmptySet.
ExponentSet parse_gamma(std::string_view text);
ExponentSet read_gamma_file(const std::string& path);
std::string serialize_gamma(const ExponentSet& gamma);

struct RunConfig {
  double tol = 1e-6;
  unsigned threads = 1;
  std::uint64_t seed = 12345;
};

nlohmann::json gamma_json(const ExponentSet& gamma);

// Profile, derived sets, multiplier, spectrum decision and delta for gamma.
nlohmann::json analysis_report(const ExponentSet& gamma, const RunConfig& config);

struct GridRequest {
  std::string what;  // lambda, lambda_approx, region, rho
  double x0 = 0.0, x1 = 3.0, y0 = 0.0, y1 = 3.0;
  int resolution = 256;
  unsigned threads = 1;
};

inline constexpr int kMaxResolution = 4096;

// CSV with "# meta:" lines, then "x,y,value" rows in y-major order.
void write_grid(const ExponentSet& gamma, const GridRequest& request, std::ostream& out);

struct Check {
  std::string name;
  bool pass = false;
  nlohmann::json measured;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const;
};

inline constexpr std::string_view kSuites[] = {"hessian", "regions",       "delta",
                                              "uncertainty", "energy", "admissibility"};

// suite is one of kSuites or "all"; gamma may be absent only for
// suites that do not need one (hessian, uncertainty).
std::vector<SuiteResult> run_verify(const std::optional<ExponentSet>& gamma,
                                    std::string_view suite, const RunConfig& config);

nlohmann::json suites_json(const std::vector<SuiteResult>& results);

// Full command line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kohn::cli
