#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "carleman/cascade.hpp"
#include "carleman/problem.hpp"

namespace carleman {

struct RadiusEstimate {
  double value = std::numeric_limits<double>::quiet_NaN();
  bool indeterminate = true;
};

/// Cauchy-Hadamard estimate 1 / limsup |c_j|^{1/j}, taken over the last five
/// nonzero tail coefficients.  Returns +infinity when the tail is entirely
/// below 1e-300 (a polynomial), and flags the estimate indeterminate when
/// fewer than three tail coefficients are nonzero.  A tail window is used
/// instead of a ratio test because interleaved zero coefficients break
/// ratios.
inline RadiusEstimate radius_estimate(std::span<const double> coeffs) {
  if (coeffs.size() < 8) {
    throw std::invalid_argument("radius_estimate: need at least 8 coefficients");
  }
  constexpr double kZero = 1e-300;
  constexpr std::size_t kWindow = 5;
  std::vector<std::size_t> nonzero;
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    if (std::abs(coeffs[j]) >= kZero) nonzero.push_back(j);
  }
  if (nonzero.empty()) {
    return RadiusEstimate{std::numeric_limits<double>::infinity(), false};
  }
  if (nonzero.size() < 3) {
    return RadiusEstimate{};
  }
  const std::size_t first =
      nonzero.size() > kWindow ? nonzero.size() - kWindow : 0;
  double worst = 0.0;
  for (std::size_t k = first; k < nonzero.size(); ++k) {
    const std::size_t j = nonzero[k];
    worst = std::max(worst, std::pow(std::abs(coeffs[j]),
                                     1.0 / static_cast<double>(j)));
  }
  return RadiusEstimate{1.0 / worst, false};
}

/// The scalar solution reconstructed from the first row of the system
/// solution, as a power series in u = F(t) - F(t0) (u = t - t0 when f == 1):
/// y(t) = sum_j u_coeffs[j] u^j + int_{t0}^t g.  The forcing term is a series
/// in t, not u, and is therefore kept separate.
struct SeriesSolution {
  double t0;
  std::vector<double> u_coeffs;  // u_coeffs[j] = prod_a[j]*c[j]/j!
  TaylorPoly g_antideriv;        // exact antiderivative of g, vanishing at t0
  RadiusEstimate radius_u;
  ProblemSpec problem;
};

inline SeriesSolution first_row_series(const CascadeInit& init,
                                       const ProblemSpec& problem, int n) {
  if (init.c.size() != static_cast<std::size_t>(n) ||
      init.a.size() != static_cast<std::size_t>(n) - 1) {
    throw std::invalid_argument(
        "first_row_series: cascade init not sized for this truncation");
  }
  std::vector<double> beta(static_cast<std::size_t>(n));
  beta[0] = init.c[0];
  // q = prod_a[j]/j!, updated incrementally so neither factor overflows.
  double q = 1.0;
  for (int j = 1; j < n; ++j) {
    q *= init.a[static_cast<std::size_t>(j) - 1] / static_cast<double>(j);
    beta[static_cast<std::size_t>(j)] = q * init.c[static_cast<std::size_t>(j)];
  }
  RadiusEstimate radius;  // indeterminate unless enough coefficients
  if (beta.size() >= 8) radius = radius_estimate(beta);
  return SeriesSolution{problem.t0, std::move(beta),
                        integrate(problem.g, 0.0), radius, problem};
}

struct EvalResult {
  double value;
  /// Set when |u| reached the estimated convergence radius.  The value is
  /// still returned: the series often agrees with an analytic extension well
  /// outside the disk, and callers may want to study that.
  bool outside_disk;
};

inline EvalResult evaluate_checked(const SeriesSolution& sol, double t) {
  const double u = integrate(sol.problem.f, 0.0).eval(t);
  double acc = 0.0;
  for (std::size_t k = sol.u_coeffs.size(); k-- > 0;) {
    acc = acc * u + sol.u_coeffs[k];
  }
  acc += sol.g_antideriv.eval(t);
  if (!std::isfinite(acc)) {
    throw std::overflow_error("evaluate: non-finite result");
  }
  const bool outside = !sol.radius_u.indeterminate &&
                       std::isfinite(sol.radius_u.value) &&
                       std::abs(u) >= sol.radius_u.value;
  return EvalResult{acc, outside};
}

inline double evaluate(const SeriesSolution& sol, double t) {
  return evaluate_checked(sol, t).value;
}

/// Connected t-interval around t0 on which |F(t) - F(t0)| stays below the
/// estimated radius.  Endpoints are located by doubling search plus bisection
/// to 1e-12.
struct TimeInterval {
  double lo = std::numeric_limits<double>::quiet_NaN();
  double hi = std::numeric_limits<double>::quiet_NaN();
  bool indeterminate = true;
};

namespace detail {

// One-sided boundary of {t : |F(t)-F(t0)| < r} starting from t0, in the
// direction dir = +-1.  Assumes |F| eventually escapes r monotonically in
// polynomial fashion; returns +-infinity when it never does.
inline double domain_edge(const TaylorPoly& f_antideriv, double t0, double r,
                          double dir) {
  const auto h = [&](double t) {
    return std::abs(f_antideriv.eval(t)) - r;
  };
  double step = 1e-3;
  double inside = t0;
  while (h(t0 + dir * step) < 0.0) {
    inside = t0 + dir * step;
    step *= 2.0;
    if (step > 1e15) return dir * std::numeric_limits<double>::infinity();
  }
  double lo = inside;
  double hi = t0 + dir * step;
  while (std::abs(hi - lo) > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

inline TimeInterval domain_map(const SeriesSolution& sol) {
  if (sol.radius_u.indeterminate) return TimeInterval{};
  const double r = sol.radius_u.value;
  if (!(r > 0.0)) return TimeInterval{};
  if (std::isinf(r)) {
    return TimeInterval{-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), false};
  }
  const TaylorPoly big_f = integrate(sol.problem.f, 0.0);
  return TimeInterval{detail::domain_edge(big_f, sol.t0, r, -1.0),
                      detail::domain_edge(big_f, sol.t0, r, +1.0), false};
}

/// Expansion of the reconstructed solution as a series in t around t0,
/// obtained by substituting u = F(t) - F(t0) and adding the forcing
/// antiderivative.  Used for route-equivalence checks against the direct
/// Taylor recurrence.
inline TaylorPoly to_t_series(const SeriesSolution& sol, int order) {
  const TaylorPoly u = truncated(integrate(sol.problem.f, 0.0), order);
  TaylorPoly acc =
      TaylorPoly::constant(sol.t0, sol.u_coeffs.back(), order);
  for (std::size_t k = sol.u_coeffs.size() - 1; k-- > 0;) {
    acc = acc * u + sol.u_coeffs[k];
  }
  return acc + truncated(sol.g_antideriv, order);
}

}  // namespace carleman
