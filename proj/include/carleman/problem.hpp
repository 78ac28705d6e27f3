#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "carleman/phi.hpp"
#include "carleman/taylor.hpp"

namespace carleman {

/// The scalar initial value problem y' = phi(y)*f(t) + g(t), y(t0) = y0,
/// with f and g given as polynomials (truncated series) around t0.
struct ProblemSpec {
  double t0;
  double y0;
  PhiSpec phi;
  TaylorPoly f;  // time factor; constant 1 when absent
  TaylorPoly g;  // additive forcing; zero when absent

  ProblemSpec(double t0_in, double y0_in, PhiSpec phi_in)
      : ProblemSpec(t0_in, y0_in, std::move(phi_in),
                    TaylorPoly::constant(t0_in, 1.0),
                    TaylorPoly::zero(t0_in)) {}

  ProblemSpec(double t0_in, double y0_in, PhiSpec phi_in, TaylorPoly f_in,
              TaylorPoly g_in)
      : t0(t0_in),
        y0(y0_in),
        phi(std::move(phi_in)),
        f(std::move(f_in)),
        g(std::move(g_in)) {
    if (!std::isfinite(t0) || !std::isfinite(y0)) {
      throw std::invalid_argument("ProblemSpec: non-finite t0 or y0");
    }
    if (f.center() != t0 || g.center() != t0) {
      throw std::invalid_argument("ProblemSpec: f and g must be centered at t0");
    }
    validate(phi);
    if (const auto* s = std::get_if<PhiSeries>(&phi)) {
      if (s->center != y0) {
        throw std::invalid_argument(
            "ProblemSpec: PhiSeries must be expanded at y0");
      }
    }
  }
};

/// Taylor coefficients y_0..y_order of the analytic solution, by the
/// fixed-point recurrence: with w = phi(y)*f + g truncated at order k,
/// y[k+1] = w[k]/(k+1).
inline TaylorPoly taylor_ivp_coeffs(const ProblemSpec& problem, int order) {
  if (order < 1) {
    throw std::invalid_argument("taylor_ivp_coeffs: order must be >= 1");
  }
  std::vector<double> y(static_cast<std::size_t>(order) + 1, 0.0);
  y[0] = problem.y0;
  for (int k = 0; k < order; ++k) {
    double next = 0.0;
    try {
      const TaylorPoly yk(problem.t0,
                          std::vector<double>(y.begin(), y.begin() + k + 1));
      const TaylorPoly w =
          compose(problem.phi, yk) * truncated(problem.f, k) +
          truncated(problem.g, k);
      next = w[k] / static_cast<double>(k + 1);
    } catch (const std::invalid_argument&) {
      next = std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(next)) {
      throw std::runtime_error(
          "taylor_ivp_coeffs: coefficients diverge, non-finite value at order " +
          std::to_string(k + 1));
    }
    y[static_cast<std::size_t>(k) + 1] = next;
  }
  return TaylorPoly(problem.t0, std::move(y));
}

}  // namespace carleman
