#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "carleman/cascade.hpp"
#include "carleman/matrix.hpp"
#include "carleman/problem.hpp"

namespace carleman {

/// The n-truncated linear system X' = A f(t) X + b(t) with X(t0) = C, where
/// b(t) = (g(t), 0, ..., 0).  Truncation closes the cascade by dropping all
/// variables beyond index n-1, so the last retained equation reads
/// x_{n-1}' = 0.
struct TruncatedSystem {
  SuperdiagonalMatrix A;
  TaylorPoly f_factor;  // f(t); exact constant 1 means constant coefficients
  TaylorPoly b0;        // g(t), the only nonzero component of b
  std::vector<double> c;
  double t0;
};

inline TruncatedSystem build_truncated_system(const CascadeInit& init,
                                              const ProblemSpec& problem,
                                              int n) {
  if (n < 2) {
    throw std::invalid_argument("build_truncated_system: need n >= 2");
  }
  if (init.c.size() != static_cast<std::size_t>(n) ||
      init.a.size() != static_cast<std::size_t>(n) - 1) {
    throw std::invalid_argument(
        "build_truncated_system: cascade init not sized for this truncation");
  }
  return TruncatedSystem{SuperdiagonalMatrix(n, init.a), problem.f, problem.g,
                         init.c, problem.t0};
}

namespace detail {

// b(t) has component 0 only and e^{A u} is unit upper triangular, so the
// variation-of-constants integral contributes the exact antiderivative of g
// to component 0 and nothing elsewhere.
inline double forcing_integral(const TruncatedSystem& sys, double t) {
  return integrate(sys.b0, 0.0).eval(t);
}

// u = F(t) - F(t0) with F' = f, computed exactly from the polynomial f.
inline double substituted_time(const TruncatedSystem& sys, double t) {
  return integrate(sys.f_factor, 0.0).eval(t);
}

}  // namespace detail

/// X(t) = e^{A (t-t0)} C + int_{t0}^t e^{A (t-s)} b(s) ds for the
/// constant-coefficient case f == 1.
inline std::vector<double> solve_constant(const TruncatedSystem& sys,
                                          double t) {
  if (!is_constant_one(sys.f_factor)) {
    throw std::invalid_argument(
        "solve_constant: f is not the constant 1; use solve_timedep");
  }
  std::vector<double> x = expm_superdiag(sys.A, t - sys.t0).apply(sys.c);
  x[0] += detail::forcing_integral(sys, t);
  return x;
}

/// X(t) = e^{A (F(t)-F(t0))} C + int_{t0}^t e^{A (F(t)-F(r))} b(r) dr with
/// F' = f; A(t) = A f(t) commutes with its own integral, which is what makes
/// the exponential form valid.  f == 1 reduces to solve_constant exactly.
inline std::vector<double> solve_timedep(const TruncatedSystem& sys, double t) {
  std::vector<double> x =
      expm_superdiag(sys.A, detail::substituted_time(sys, t)).apply(sys.c);
  x[0] += detail::forcing_integral(sys, t);
  return x;
}

/// Approximant X_n(t) that replaces the matrix exponential by its n-th
/// partial sum; X_0 is the initial vector C.  For n >= dim the partial sum
/// has terminated and X_n equals the exact solution.
inline std::vector<double> partial_sum_solution(const TruncatedSystem& sys,
                                                double t, int n) {
  if (n < 0) {
    throw std::invalid_argument("partial_sum_solution: need n >= 0");
  }
  if (n == 0) return sys.c;
  const double u = detail::substituted_time(sys, t);
  std::vector<double> x = expm_series(sys.A, u, n).partial_sum.apply(sys.c);
  x[0] += detail::forcing_integral(sys, t);
  return x;
}

}  // namespace carleman
