// Command-line front end: solve | expm-check | partial-sums | examples |
// radius.  Exit codes: 0 success, 1 usage/config error, 2 tolerance or
// validation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "carleman/carleman.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

carleman::GaugeSpec gauge_from_name(const std::string& name) {
  if (name == "unit") return carleman::UnitGauge{};
  if (name == "paper-power") return carleman::PowerGauge{};
  if (name == "paper-exp") return carleman::ExpGauge{};
  throw std::runtime_error("unknown gauge: " + name);
}

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string summary_path;
  std::optional<int> n_override;
  std::optional<std::string> gauge_override;
  std::optional<double> tol_override;
  bool dump_coeffs = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_outputs) {
  cmd->add_option("--config", opt.config_path, "JSON problem configuration")
      ->required();
  if (with_outputs) {
    cmd->add_option("--out", opt.out_path, "CSV output path (default stdout)");
    cmd->add_option("--summary", opt.summary_path,
                    "summary output path (default stdout)");
    cmd->add_flag("--dump-coeffs", opt.dump_coeffs,
                  "print every series coefficient in the summary");
  }
  cmd->add_option("-N", opt.n_override, "override the truncation dimension");
  cmd->add_option("--gauge", opt.gauge_override,
                  "override the gauge: unit|paper-power|paper-exp")
      ->check(CLI::IsMember({"unit", "paper-power", "paper-exp"}));
  cmd->add_option("--tol", opt.tol_override,
                  "override the comparison tolerance");
}

carleman::RunConfig load_config(const CommonOptions& opt) {
  carleman::RunConfig cfg = carleman::parse_config(read_file(opt.config_path));
  if (opt.n_override) {
    if (*opt.n_override < 2) {
      throw std::runtime_error("-N must be >= 2");
    }
    cfg.n = *opt.n_override;
  }
  if (opt.gauge_override) cfg.gauge = gauge_from_name(*opt.gauge_override);
  if (opt.tol_override) {
    if (!(*opt.tol_override > 0.0)) {
      throw std::runtime_error("--tol must be positive");
    }
    cfg.tol = *opt.tol_override;
  }
  cfg.outputs.csv = opt.out_path;
  cfg.outputs.summary = opt.summary_path;
  cfg.outputs.dump_coeffs = opt.dump_coeffs;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Scalar first-order IVPs via truncated superdiagonal linear systems"};
  app.require_subcommand(1);

  CommonOptions solve_opt;
  CLI::App* solve = app.add_subcommand(
      "solve", "solve a problem on a grid and compare against an oracle");
  add_common(solve, solve_opt, /*with_outputs=*/true);

  int expm_n = 10;
  std::string expm_gauge = "unit";
  double expm_s = 1.0;
  CLI::App* expm = app.add_subcommand(
      "expm-check", "exercise the exponential-series partial sums and bound");
  expm->add_option("-N", expm_n, "matrix dimension (2..64)");
  expm->add_option("--gauge", expm_gauge, "unit|paper-power|paper-exp")
      ->check(CLI::IsMember({"unit", "paper-power", "paper-exp"}));
  expm->add_option("--s-max", expm_s, "evaluation point s");

  CommonOptions psum_opt;
  double psum_t = 0.5;
  int psum_nmax = 10;
  CLI::App* psum = app.add_subcommand(
      "partial-sums", "tabulate the partial-sum approximants at one t");
  add_common(psum, psum_opt, /*with_outputs=*/false);
  psum->add_option("--t", psum_t, "evaluation point t")->required();
  psum->add_option("--n-max", psum_nmax, "largest partial-sum index");

  CLI::App* examples = app.add_subcommand(
      "examples", "run the four built-in closed-form problems");

  CommonOptions radius_opt;
  CLI::App* radius = app.add_subcommand(
      "radius", "estimate the convergence radius and the t-domain");
  add_common(radius, radius_opt, /*with_outputs=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? carleman::kExitOk : carleman::kExitError;
  }

  try {
    if (solve->parsed()) {
      return carleman::run_solve(load_config(solve_opt), std::cout, std::cerr);
    }
    if (expm->parsed()) {
      return carleman::run_expm_check(expm_n, gauge_from_name(expm_gauge),
                                      expm_s, std::cout);
    }
    if (psum->parsed()) {
      return carleman::run_partial_sums(load_config(psum_opt), psum_t,
                                        psum_nmax, std::cout);
    }
    if (examples->parsed()) {
      return carleman::run_examples(std::cout);
    }
    if (radius->parsed()) {
      return carleman::run_radius(load_config(radius_opt), std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return carleman::kExitError;
  }
  return carleman::kExitError;
}
