#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "carleman/problem.hpp"
#include "carleman/reconstruct.hpp"

namespace carleman {

/// The four built-in problems with a printed closed-form solution.
enum class ExampleId {
  LinearForced,      // y' = y - t        -> (y0-1) e^t + t + 1
  Quadratic,         // y' = y^2          -> y0 / (1 - y0 t)
  Exponential,       // y' = e^y          -> -ln(e^{-y0} - t)
  QuadraticTimesT,   // y' = y^2 t        -> 2 y0 / (2 - y0 t^2)
};

inline ProblemSpec example_problem(ExampleId id, double y0) {
  switch (id) {
    case ExampleId::LinearForced:
      return ProblemSpec(0.0, y0, PhiPolynomial{{0.0, 1.0}},
                         TaylorPoly::constant(0.0, 1.0),
                         TaylorPoly(0.0, {0.0, -1.0}));
    case ExampleId::Quadratic:
      return ProblemSpec(0.0, y0, PhiPower{2});
    case ExampleId::Exponential:
      return ProblemSpec(0.0, y0, PhiExponential{});
    case ExampleId::QuadraticTimesT:
      return ProblemSpec(0.0, y0, PhiPower{2}, TaylorPoly(0.0, {0.0, 1.0}),
                         TaylorPoly::zero(0.0));
  }
  throw std::invalid_argument("example_problem: unknown id");
}

/// Closed-form solution value; t must lie on the solution branch through
/// t = 0 (Quadratic: y0*t < 1; Exponential: t < e^{-y0}; QuadraticTimesT:
/// y0*t^2 < 2).
inline double closed_form(ExampleId id, double y0, double t) {
  switch (id) {
    case ExampleId::LinearForced:
      return (y0 - 1.0) * std::exp(t) + t + 1.0;
    case ExampleId::Quadratic:
      if (y0 * t >= 1.0) {
        throw std::domain_error(
            "closed_form: outside the branch through 0, needs y0*t < 1");
      }
      return y0 / (1.0 - y0 * t);
    case ExampleId::Exponential:
      if (t >= std::exp(-y0)) {
        throw std::domain_error(
            "closed_form: outside the domain, needs t < e^(-y0)");
      }
      return -std::log(std::exp(-y0) - t);
    case ExampleId::QuadraticTimesT:
      if (y0 * t * t >= 2.0) {
        throw std::domain_error(
            "closed_form: outside the branch through 0, needs y0*t^2 < 2");
      }
      return 2.0 * y0 / (2.0 - y0 * t * t);
  }
  throw std::invalid_argument("closed_form: unknown id");
}

/// Reference solution by the Dormand-Prince embedded 5(4) pair with mixed
/// error control err <= tol*(1 + |y|).  Deterministic for given inputs.
/// Throws when the step size collapses, which signals a blow-up on the
/// integration path.
inline double rk_reference(const ProblemSpec& problem, double t, double tol) {
  if (!(tol >= 1e-13 && tol <= 1e-3)) {
    throw std::invalid_argument("rk_reference: tol must lie in [1e-13, 1e-3]");
  }
  if (t == problem.t0) return problem.y0;

  const auto rhs = [&](double tv, double yv) {
    return phi_value(problem.phi, yv) * problem.f.eval(tv) +
           problem.g.eval(tv);
  };

  // Dormand & Prince (1980) coefficients.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // Difference between the 5th- and 4th-order weights.
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = std::abs(t - problem.t0);
  const double dir = t > problem.t0 ? 1.0 : -1.0;
  double tc = problem.t0;
  double y = problem.y0;
  double h = dir * span / 100.0;

  for (long iter = 0; iter < 10'000'000; ++iter) {
    if (dir * (tc + h - t) > 0.0) h = t - tc;
    const double k1 = rhs(tc, y);
    const double k2 = rhs(tc + c2 * h, y + h * a21 * k1);
    const double k3 = rhs(tc + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const double k4 = rhs(tc + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 =
        rhs(tc + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = rhs(
        tc + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double y5 =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = rhs(tc + h, y5);
    const double err = std::abs(
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    const double scale = tol * (1.0 + std::abs(y));

    if (!std::isfinite(y5) || !std::isfinite(err)) {
      h *= 0.5;
    } else if (err <= scale) {
      tc += h;
      y = y5;
      if (tc == t) return y;
      const double grow =
          err == 0.0 ? 5.0
                     : std::min(5.0, std::max(0.2, 0.9 * std::pow(scale / err,
                                                                  0.2)));
      h *= grow;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(scale / err, 0.2));
    }
    if (std::abs(h) < 1e-14 * span) {
      throw std::runtime_error(
          "rk_reference: step size collapsed, blow-up suspected on the path");
    }
  }
  throw std::runtime_error("rk_reference: step budget exhausted");
}

struct PointError {
  double t;
  double y_series;
  double y_ref;
  double abs_err;
  bool oracle_ok;
};

struct ErrorReport {
  std::vector<double> grid;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  std::vector<PointError> per_point;
};

/// Evaluates the reconstructed series and a reference on a grid.  Points
/// where the reference throws are flagged and excluded from the maxima.
/// Relative errors use max(|y_ref|, 1e-12) in the denominator.
inline ErrorReport compare(const SeriesSolution& series,
                           const std::function<double(double)>& oracle,
                           std::span<const double> grid) {
  if (grid.empty()) {
    throw std::invalid_argument("compare: empty grid");
  }
  for (double t : grid) {
    if (!std::isfinite(t)) {
      throw std::invalid_argument("compare: non-finite grid point");
    }
  }
  ErrorReport report;
  report.grid.assign(grid.begin(), grid.end());
  for (double t : grid) {
    const double ys = evaluate(series, t);
    double yr = std::numeric_limits<double>::quiet_NaN();
    bool ok = true;
    try {
      yr = oracle(t);
    } catch (const std::exception&) {
      ok = false;
    }
    const double abs_err = ok ? std::abs(ys - yr)
                              : std::numeric_limits<double>::quiet_NaN();
    if (ok) {
      report.max_abs_err = std::max(report.max_abs_err, abs_err);
      report.max_rel_err = std::max(
          report.max_rel_err, abs_err / std::max(std::abs(yr), 1e-12));
    }
    report.per_point.push_back(PointError{t, ys, yr, abs_err, ok});
  }
  return report;
}

}  // namespace carleman
