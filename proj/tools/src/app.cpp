#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kohn/cli.hpp"
#include "kohn/error.hpp"
#include "kohn/support_optimizer.hpp"

namespace kohn::cli {

namespace {

std::array<double, 4> parse_bounds(const std::string& text) {
  std::array<double, 4> b{};
  std::stringstream ss(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i == 4) break;
    try {
      std::size_t used = 0;
      b[i] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "--bounds: '" + part + "' is not a number");
    }
    ++i;
  }
  if (i != 4 || std::getline(ss, part, ',')) {
    throw Error(ErrorCode::ParseError, "--bounds expects x0,x1,y0,y1");
  }
  return b;
}

// Writes to `path`, or to `fallback` when path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  fn(file);
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coercivity and spectrum analysis for model monomial weights"};
  app.require_subcommand(1);

  std::string gamma_path;
  std::string out_path;
  std::string bounds = "0,3,0,3";
  std::string suite;
  std::string what;
  int res = 256;
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--tol", cfg.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--seed", cfg.seed, "Seed for sampled checks");
  };

  auto* analyze = app.add_subcommand("analyze", "Write the JSON analysis report for Gamma");
  analyze->add_option("--gamma", gamma_path, "Exponent set file")->required();
  analyze->add_option("--suite", suite, "Also run a verification suite into the report");
  common(analyze);

  auto* grid = app.add_subcommand("grid", "Write a CSV grid over (|z|,|w|)");
  grid->add_option("--gamma", gamma_path, "Exponent set file")->required();
  grid->add_option("what", what, "lambda, lambda_approx, region or rho")->required();
  grid->add_option("--bounds", bounds, "x0,x1,y0,y1");
  grid->add_option("--res", res, "Points per axis");
  common(grid);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--gamma", gamma_path, "Exponent set file");
  verify->add_option("--suite", suite, "hessian, regions, delta, uncertainty, energy, admissibility or all")
      ->required();
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) {
      const auto gamma = read_gamma_file(gamma_path);
      auto report = analysis_report(gamma, cfg);
      if (!suite.empty()) report["verification"] = suites_json(run_verify(gamma, suite, cfg));
      emit(out_path, out, [&](std::ostream& o) { o << report.dump(2) << "\n"; });
      return spectrum_decision(gamma).kind == SpectrumDecision::Kind::Inconclusive ? 2 : 0;
    }
    if (grid->parsed()) {
      const auto gamma = read_gamma_file(gamma_path);
      const auto b = parse_bounds(bounds);
      GridRequest req{what, b[0], b[1], b[2], b[3], res, cfg.threads};
      std::ostringstream buf;
      write_grid(gamma, req, buf);
      emit(out_path, out, [&](std::ostream& o) { o << buf.str(); });
      return 0;
    }
    std::optional<ExponentSet> gamma;
    if (!gamma_path.empty()) gamma = read_gamma_file(gamma_path);
    const auto results = run_verify(gamma, suite, cfg);
    nlohmann::json report;
    report["schema"] = kSchema;
    report["tool_version"] = kVersion;
    report["config"] = {{"suite", suite}, {"tol", cfg.tol}, {"threads", cfg.threads}, {"seed", cfg.seed}};
    report["gamma"] = gamma ? gamma_json(*gamma) : nlohmann::json(nullptr);
    report["suites"] = suites_json(results);
    bool all = true;
    for (const auto& s : results) all = all && s.pass();
    report["pass"] = all;
    emit(out_path, out, [&](std::ostream& o) { o << report.dump(2) << "\n"; });
    return all ? 0 : 1;
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace kohn::cli
