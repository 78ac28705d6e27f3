#pragma once

#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

#include "carleman/taylor.hpp"

namespace carleman {

/// phi(y) = sum_k coeffs[k] * y^k, lowest degree first.
struct PhiPolynomial {
  std::vector<double> coeffs;
};

/// phi(y) = y^m with integer m >= 1.
struct PhiPower {
  int exponent;
};

/// phi(y) = e^y.
struct PhiExponential {};

/// General analytic phi given by its Taylor coefficients around y = center:
/// phi(y) = sum_k coeffs[k] * (y - center)^k.  Jet composition requires the
/// inner jet's value to equal `center` exactly.
struct PhiSeries {
  double center;
  std::vector<double> coeffs;
};

using PhiSpec =
    std::variant<PhiPolynomial, PhiPower, PhiExponential, PhiSeries>;

inline void validate(const PhiSpec& phi) {
  if (const auto* p = std::get_if<PhiPolynomial>(&phi)) {
    if (p->coeffs.empty()) {
      throw std::invalid_argument("PhiPolynomial: empty coefficient list");
    }
    for (double c : p->coeffs) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument("PhiPolynomial: non-finite coefficient");
      }
    }
  } else if (const auto* w = std::get_if<PhiPower>(&phi)) {
    if (w->exponent < 1) {
      throw std::invalid_argument("PhiPower: exponent must be >= 1");
    }
  } else if (const auto* s = std::get_if<PhiSeries>(&phi)) {
    if (s->coeffs.empty()) {
      throw std::invalid_argument("PhiSeries: empty coefficient list");
    }
    if (!std::isfinite(s->center)) {
      throw std::invalid_argument("PhiSeries: non-finite center");
    }
    for (double c : s->coeffs) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument("PhiSeries: non-finite coefficient");
      }
    }
  }
}

/// Scalar evaluation phi(y).
inline double phi_value(const PhiSpec& phi, double y) {
  struct Visitor {
    double y;
    double operator()(const PhiPolynomial& p) const {
      double acc = 0.0;
      for (std::size_t k = p.coeffs.size(); k-- > 0;) {
        acc = acc * y + p.coeffs[k];
      }
      return acc;
    }
    double operator()(const PhiPower& p) const {
      double acc = y;
      for (int i = 1; i < p.exponent; ++i) acc *= y;
      return acc;
    }
    double operator()(const PhiExponential&) const { return std::exp(y); }
    double operator()(const PhiSeries& s) const {
      const double z = y - s.center;
      double acc = 0.0;
      for (std::size_t k = s.coeffs.size(); k-- > 0;) {
        acc = acc * z + s.coeffs[k];
      }
      return acc;
    }
  };
  return std::visit(Visitor{y}, phi);
}

namespace detail {

// Jet recurrence for e = exp(y): e[n] = (1/n) sum_{k=1..n} k*y[k]*e[n-k].
// See Griewank & Walther, "Evaluating Derivatives", SIAM 2008.
inline TaylorPoly exp_jet(const TaylorPoly& y) {
  const int n = y.order();
  std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
  e[0] = std::exp(y[0]);
  for (int m = 1; m <= n; ++m) {
    double acc = 0.0;
    for (int k = 1; k <= m; ++k) {
      acc += static_cast<double>(k) * y[k] * e[static_cast<std::size_t>(m - k)];
    }
    e[static_cast<std::size_t>(m)] = acc / static_cast<double>(m);
  }
  return TaylorPoly(y.center(), std::move(e));
}

// Horner on jets for sum_k s[k]*z^k where z may have any constant term.
inline TaylorPoly horner_jet(const std::vector<double>& s,
                             const TaylorPoly& z) {
  TaylorPoly acc = TaylorPoly::constant(z.center(), s.back(), z.order());
  for (std::size_t k = s.size() - 1; k-- > 0;) {
    acc = acc * z + s[k];
  }
  return acc;
}

}  // namespace detail

/// Taylor coefficients of the composition phi(y(t)) around y's center, up to
/// y's order.
inline TaylorPoly compose(const PhiSpec& phi, const TaylorPoly& y) {
  struct Visitor {
    const TaylorPoly& y;
    TaylorPoly operator()(const PhiPolynomial& p) const {
      return detail::horner_jet(p.coeffs, y);
    }
    TaylorPoly operator()(const PhiPower& p) const {
      TaylorPoly acc = y;
      for (int i = 1; i < p.exponent; ++i) acc = acc * y;
      return acc;
    }
    TaylorPoly operator()(const PhiExponential&) const {
      return detail::exp_jet(y);
    }
    TaylorPoly operator()(const PhiSeries& s) const {
      if (y[0] != s.center) {
        throw std::domain_error(
            "compose: jet value does not match the PhiSeries expansion point");
      }
      // Shift to z = y - center so the series coefficients apply directly.
      std::vector<double> zc = y.coeffs();
      zc[0] = 0.0;
      return detail::horner_jet(s.coeffs, TaylorPoly(y.center(), std::move(zc)));
    }
  };
  validate(phi);
  // Non-finite intermediates are rejected by the TaylorPoly constructor.
  return std::visit(Visitor{y}, phi);
}

}  // namespace carleman
