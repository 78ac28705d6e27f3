#pragma once

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "carleman/config.hpp"
#include "carleman/system.hpp"

namespace carleman {

// Exit codes shared by every subcommand: 0 success, 1 usage/config/pipeline
// error, 2 tolerance or validation failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitToleranceFailure = 2;

namespace detail {

// Round-trip safe formatting; keeps CSV output byte-identical across runs.
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<double> make_grid(const GridSpec& grid) {
  std::vector<double> t(static_cast<std::size_t>(grid.count));
  const double step = (grid.t_max - grid.t_min) /
                      static_cast<double>(grid.count - 1);
  for (int i = 0; i < grid.count; ++i) {
    t[static_cast<std::size_t>(i)] = grid.t_min + step * i;
  }
  return t;
}

inline std::function<double(double)> make_oracle(const RunConfig& cfg) {
  switch (cfg.oracle.kind) {
    case OracleSelector::Kind::none:
      return {};
    case OracleSelector::Kind::rk: {
      const ProblemSpec problem = cfg.problem;
      const double rk_tol = std::min(1e-3, std::max(1e-13, cfg.tol / 100.0));
      return [problem, rk_tol](double t) {
        return rk_reference(problem, t, rk_tol);
      };
    }
    case OracleSelector::Kind::closed_form: {
      const ExampleId id = cfg.oracle.example;
      const double y0 = cfg.problem.y0;
      return [id, y0](double t) { return closed_form(id, y0, t); };
    }
  }
  return {};
}

inline const char* gauge_name(const GaugeSpec& gauge) {
  if (std::holds_alternative<UnitGauge>(gauge)) return "unit";
  if (std::holds_alternative<PowerGauge>(gauge)) return "paper-power";
  if (std::holds_alternative<ExpGauge>(gauge)) return "paper-exp";
  return "custom";
}

inline std::string interval_to_string(const TimeInterval& iv) {
  if (iv.indeterminate) return "indeterminate";
  return "(" + fmt17(iv.lo) + ", " + fmt17(iv.hi) + ")";
}

inline const char* extension_note(ExampleId id) {
  switch (id) {
    case ExampleId::LinearForced:
      return "closed form is entire; the series converges for all t";
    case ExampleId::Quadratic:
      return "closed form extends beyond the disk, up to the pole at "
             "t = 1/y0";
    case ExampleId::Exponential:
      return "closed form extends one-sidedly to all t < e^(-y0)";
    case ExampleId::QuadraticTimesT:
      return "closed form extends to all t except t = +-sqrt(2/|y0|)";
  }
  return "";
}

struct SolvePipeline {
  CascadeInit init;
  TruncatedSystem system;
  SeriesSolution series;
  bool constant_coefficients;
};

inline SolvePipeline build_pipeline(const RunConfig& cfg) {
  CascadeInit init = initial_auxiliary_values(
      cfg.problem, resolve_gauge(cfg.gauge, cfg.n), cfg.n);
  TruncatedSystem system = build_truncated_system(init, cfg.problem, cfg.n);
  SeriesSolution series = first_row_series(init, cfg.problem, cfg.n);
  const bool constant = is_constant_one(cfg.problem.f);
  return SolvePipeline{std::move(init), std::move(system), std::move(series),
                       constant};
}

inline double matrix_component0(const SolvePipeline& p, double t) {
  return (p.constant_coefficients ? solve_constant(p.system, t)
                                  : solve_timedep(p.system, t))[0];
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback)
      : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw std::runtime_error("cannot open output file: " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

}  // namespace detail

/// Runs the full pipeline on a grid, writes the CSV rows and a text summary,
/// and returns 2 when an oracle is present and the max absolute error
/// exceeds cfg.tol.
inline int run_solve(const RunConfig& cfg, std::ostream& out,
                     std::ostream& err) {
  const detail::SolvePipeline p = detail::build_pipeline(cfg);
  const std::vector<double> grid = detail::make_grid(cfg.grid);
  const std::function<double(double)> oracle = detail::make_oracle(cfg);

  std::optional<ErrorReport> report;
  if (oracle) report = compare(p.series, oracle, grid);

  // CSV
  {
    detail::OutputTarget csv(cfg.outputs.csv, out);
    std::ostream& os = csv.stream();
    os << "t,y_series,y_matrix";
    if (oracle) os << ",y_oracle,abs_err";
    os << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = grid[i];
      os << detail::fmt17(t) << ','
         << detail::fmt17(evaluate(p.series, t)) << ','
         << detail::fmt17(detail::matrix_component0(p, t));
      if (oracle) {
        const PointError& pe = report->per_point[i];
        os << ',' << detail::fmt17(pe.y_ref) << ','
           << detail::fmt17(pe.abs_err);
      }
      os << "\n";
    }
  }

  // Summary
  std::vector<std::string> warnings;
  if (!is_constant_one(cfg.problem.f) && !is_identically_zero(cfg.problem.g)) {
    warnings.push_back(
        "non-constant f combined with nonzero g: the linear cascade is "
        "solved as written, but it only represents the scalar problem when "
        "g = 0");
  }
  int outside = 0;
  for (double t : grid) {
    if (evaluate_checked(p.series, t).outside_disk) ++outside;
  }
  if (outside > 0) {
    warnings.push_back(std::to_string(outside) +
                       " grid point(s) lie outside the estimated "
                       "convergence disk; values are analytic-extension "
                       "territory");
  }

  {
    detail::OutputTarget summary(cfg.outputs.summary, out);
    std::ostream& os = summary.stream();
    os << "truncation N = " << cfg.n << ", gauge = "
       << detail::gauge_name(cfg.gauge) << "\n";
    const std::size_t shown = cfg.outputs.dump_coeffs
                                  ? p.series.u_coeffs.size()
                                  : std::min<std::size_t>(
                                        p.series.u_coeffs.size(), 12);
    os << "series coefficients in u (first " << shown << " of "
       << p.series.u_coeffs.size() << "):\n";
    for (std::size_t j = 0; j < shown; ++j) {
      os << "  u^" << j << ": " << detail::fmt17(p.series.u_coeffs[j]) << "\n";
    }
    if (p.series.radius_u.indeterminate) {
      os << "radius estimate (u): indeterminate\n";
    } else {
      os << "radius estimate (u): " << detail::fmt17(p.series.radius_u.value)
         << "\n";
    }
    os << "t-domain: " << detail::interval_to_string(domain_map(p.series))
       << "\n";
    if (cfg.oracle.kind == OracleSelector::Kind::closed_form) {
      os << "note: " << detail::extension_note(cfg.oracle.example) << "\n";
    }
    for (const std::string& w : warnings) os << "warning: " << w << "\n";
    if (report) {
      int flagged = 0;
      for (const PointError& pe : report->per_point) {
        if (!pe.oracle_ok) ++flagged;
      }
      os << "oracle max abs err = " << detail::fmt17(report->max_abs_err)
         << ", max rel err = " << detail::fmt17(report->max_rel_err)
         << ", tol = " << detail::fmt17(cfg.tol) << "\n";
      if (flagged > 0) {
        os << "oracle failed at " << flagged
           << " grid point(s); those are excluded from the maxima\n";
      }
      os << "verdict: "
         << (report->max_abs_err <= cfg.tol ? "within tolerance"
                                            : "OUT OF TOLERANCE")
         << "\n";
    }
  }

  if (report && report->max_abs_err > cfg.tol) {
    err << "max abs err " << detail::fmt17(report->max_abs_err)
        << " exceeds tol " << detail::fmt17(cfg.tol) << "\n";
    return kExitToleranceFailure;
  }
  return kExitOk;
}

/// Tabulates the partial-sum error of the matrix exponential series against
/// the exact nilpotent closed form, together with the norm remainder bound,
/// and verifies that the bound dominates the measured error at every n.
inline int run_expm_check(int n, const GaugeSpec& gauge, double s_max,
                          std::ostream& out) {
  if (n < 2 || n > 64) {
    throw std::invalid_argument("expm-check: N must lie in [2, 64]");
  }
  const SuperdiagonalMatrix a(n, resolve_gauge(gauge, n));
  const DenseUpperTriangular exact = expm_superdiag(a, s_max);
  out << "n,max_abs_err,remainder_bound\n";
  bool all_ok = true;
  for (int k = 1; k <= n; ++k) {
    const ExpmSeriesResult r = expm_series(a, s_max, k);
    const double err = max_abs_diff(r.partial_sum, exact);
    const bool ok = r.remainder_bound >= err;
    all_ok = all_ok && ok;
    out << k << ',' << detail::fmt17(err) << ','
        << detail::fmt17(r.remainder_bound) << (ok ? "" : ",BOUND VIOLATED")
        << "\n";
  }
  out << (all_ok ? "bound dominates the error at every n\n"
                 : "bound violated\n");
  return all_ok ? kExitOk : kExitToleranceFailure;
}

/// Prints the partial-sum approximants y_n(t) and their distance from the
/// full nilpotent solution at the same truncation.
inline int run_partial_sums(const RunConfig& cfg, double t, int n_max,
                            std::ostream& out) {
  if (n_max < 1) {
    throw std::invalid_argument("partial-sums: need n-max >= 1");
  }
  const detail::SolvePipeline p = detail::build_pipeline(cfg);
  const double y_full = detail::matrix_component0(p, t);
  out << "n,y_n,abs_err_vs_full\n";
  for (int k = 0; k <= n_max; ++k) {
    const double yk = partial_sum_solution(p.system, t, k)[0];
    out << k << ',' << detail::fmt17(yk) << ','
        << detail::fmt17(std::abs(yk - y_full)) << "\n";
  }
  return kExitOk;
}

/// Runs the four built-in closed-form problems at preset parameters and
/// reports pass/fail against the printed solutions.
inline int run_examples(std::ostream& out) {
  struct Preset {
    const char* name;
    ExampleId id;
    double y0;
    double half_lo, half_hi;
  };
  const Preset presets[] = {
      {"ex1 (y' = y - t,  y0 = 2)", ExampleId::LinearForced, 2.0, -1.0, 1.0},
      {"ex2 (y' = y^2,    y0 = 0.5)", ExampleId::Quadratic, 0.5, -1.0, 1.0},
      {"ex3 (y' = e^y,    y0 = 0)", ExampleId::Exponential, 0.0, -0.5, 0.5},
      {"ex4 (y' = y^2 t,  y0 = 1)", ExampleId::QuadraticTimesT, 1.0, -1.0,
       1.0},
  };
  constexpr int kN = 40;
  constexpr double kTol = 1e-8;
  int passed = 0;
  for (const Preset& preset : presets) {
    const ProblemSpec problem = example_problem(preset.id, preset.y0);
    const CascadeInit init = initial_auxiliary_values(
        problem, resolve_gauge(UnitGauge{}, kN), kN);
    const SeriesSolution series = first_row_series(init, problem, kN);
    const std::vector<double> grid =
        detail::make_grid(GridSpec{preset.half_lo, preset.half_hi, 21});
    const ErrorReport report = compare(
        series,
        [&](double t) { return closed_form(preset.id, preset.y0, t); }, grid);
    const bool ok = report.max_abs_err <= kTol;
    passed += ok ? 1 : 0;
    out << preset.name << ": " << (ok ? "PASS" : "FAIL") << " (max abs err "
        << detail::fmt17(report.max_abs_err) << ", tol "
        << detail::fmt17(kTol) << ")\n";
  }
  out << passed << "/4 examples passed\n";
  return passed == 4 ? kExitOk : kExitToleranceFailure;
}

/// Prints the estimated convergence radius in u and the mapped t-domain.
inline int run_radius(const RunConfig& cfg, std::ostream& out) {
  const detail::SolvePipeline p = detail::build_pipeline(cfg);
  if (p.series.radius_u.indeterminate) {
    out << "radius (u): indeterminate (too few nonzero tail coefficients)\n";
  } else {
    out << "radius (u): " << detail::fmt17(p.series.radius_u.value) << "\n";
  }
  out << "t-domain: " << detail::interval_to_string(domain_map(p.series))
      << "\n";
  return kExitOk;
}

}  // namespace carleman
