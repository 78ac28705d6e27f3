#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "carleman/gauge.hpp"
#include "carleman/problem.hpp"

namespace carleman {

/// Resolved gauge plus the initial auxiliary vector of the cascade.
///
/// c[j] = x_j(t0) where x_0 = y and, for j >= 1,
///   x_j = (1 / prod_a[j]) * d^{j-1}/dt^{j-1}[ phi(y(t)) ],
/// so prod_a[j]*c[j] is gauge independent: it is the (j-1)-th derivative of
/// phi(y(t)) at t0.
struct CascadeInit {
  std::vector<double> a;       // superdiagonal entries, size n-1
  std::vector<double> c;       // initial auxiliary values, size n
  std::vector<double> prod_a;  // prod_a[j] = a[0]*...*a[j-1], prod_a[0] = 1
};

namespace detail {

inline std::vector<double> running_products(const std::vector<double>& a) {
  std::vector<double> p(a.size() + 1);
  p[0] = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) p[j + 1] = p[j] * a[j];
  return p;
}

// With a time factor f, the cascade divides by f at every step, so the
// auxiliary values are Taylor coefficients in the substituted variable
// u = F(t) - F(t0) rather than in t.  In u the problem is autonomous:
// dy/du = phi(y) + g/f.  For constant f the forcing rescales exactly
// (g/f composed with t = t0 + u/f stays polynomial); for non-constant f the
// cascade represents the scalar problem only when g == 0, so the forcing is
// dropped here and the solvers carry it in b as written.
inline ProblemSpec substituted_problem(const ProblemSpec& problem) {
  if (is_constant_one(problem.f)) return problem;
  bool constant_f = true;
  for (int k = 1; k <= problem.f.order(); ++k) {
    if (problem.f[k] != 0.0) {
      constant_f = false;
      break;
    }
  }
  const double f0 = problem.f[0];
  if (constant_f && f0 != 0.0) {
    std::vector<double> gh = problem.g.coeffs();
    double scale = 1.0 / f0;
    for (double& gk : gh) {
      gk *= scale;
      scale /= f0;
    }
    return ProblemSpec(problem.t0, problem.y0, problem.phi,
                       TaylorPoly::constant(problem.t0, 1.0),
                       TaylorPoly(problem.t0, std::move(gh)));
  }
  return ProblemSpec(problem.t0, problem.y0, problem.phi,
                     TaylorPoly::constant(problem.t0, 1.0),
                     TaylorPoly::zero(problem.t0));
}

}  // namespace detail

/// Builds the initial auxiliary vector from the problem's Taylor solution:
/// c[0] = y0 and c[j] = (j-1)! * w[j-1] / prod_a[j], where w holds the Taylor
/// coefficients of phi(y(.)) at the initial point, taken in u = F(t) - F(t0)
/// (which is t - t0 when f == 1).
inline CascadeInit initial_auxiliary_values(const ProblemSpec& problem,
                                            std::vector<double> gauge, int n) {
  if (n < 2) {
    throw std::invalid_argument("initial_auxiliary_values: need n >= 2");
  }
  if (gauge.size() != static_cast<std::size_t>(n) - 1) {
    throw std::invalid_argument(
        "initial_auxiliary_values: gauge not resolved at this truncation");
  }
  for (double aj : gauge) {
    if (!std::isfinite(aj) || aj == 0.0) {
      throw std::invalid_argument(
          "initial_auxiliary_values: gauge entries must be finite and nonzero");
    }
  }
  const ProblemSpec substituted = detail::substituted_problem(problem);
  const TaylorPoly w = compose(problem.phi, taylor_ivp_coeffs(substituted, n));
  std::vector<double> c(static_cast<std::size_t>(n));
  c[0] = problem.y0;
  // ratio = (j-1)! / prod_a[j], updated incrementally to avoid overflow of
  // the factorial and the product separately.
  double ratio = 1.0;
  for (int j = 1; j < n; ++j) {
    ratio *= (j == 1 ? 1.0 : static_cast<double>(j - 1)) /
             gauge[static_cast<std::size_t>(j) - 1];
    c[static_cast<std::size_t>(j)] = ratio * w[j - 1];
  }
  std::vector<double> prod = detail::running_products(gauge);
  return CascadeInit{std::move(gauge), std::move(c), std::move(prod)};
}

/// Closed-form initial auxiliary values for the two cascade families with a
/// known closed form: successive powers (phi = y^2 with the power gauge,
/// c[j] = y0^{j+1}) and exponentials (phi = e^y with the exp gauge,
/// c[j] = e^{j*y0}).  Serves as an independent check of
/// initial_auxiliary_values.
inline CascadeInit closed_form_aux(const PhiSpec& phi, const GaugeSpec& gauge,
                                   double y0, int n) {
  std::vector<double> a = resolve_gauge(gauge, n);
  std::vector<double> c(static_cast<std::size_t>(n));
  const auto* power = std::get_if<PhiPower>(&phi);
  if (power != nullptr && power->exponent == 2 &&
      std::holds_alternative<PowerGauge>(gauge)) {
    double v = y0;
    for (int j = 0; j < n; ++j) {
      c[static_cast<std::size_t>(j)] = v;
      v *= y0;
    }
  } else if (std::holds_alternative<PhiExponential>(phi) &&
             std::holds_alternative<ExpGauge>(gauge)) {
    c[0] = y0;
    for (int j = 1; j < n; ++j) {
      c[static_cast<std::size_t>(j)] = std::exp(static_cast<double>(j) * y0);
    }
  } else {
    throw std::invalid_argument(
        "closed_form_aux: unsupported (phi, gauge) combination; supported "
        "pairs are (y^2, power gauge) and (e^y, exp gauge)");
  }
  std::vector<double> prod = detail::running_products(a);
  return CascadeInit{std::move(a), std::move(c), std::move(prod)};
}

}  // namespace carleman
