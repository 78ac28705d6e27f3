#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace carleman {

/// Truncated power series (jet) around a fixed expansion point.
///
/// coeffs()[k] holds the k-th Taylor coefficient f^(k)(center)/k!.  All
/// arithmetic is jet arithmetic: binary operations require equal centers,
/// truncate the result to the shorter operand's order, and never round
/// retained terms beyond ordinary floating point.
class TaylorPoly {
 public:
  TaylorPoly(double center, std::vector<double> coeffs)
      : center_(center), coeffs_(std::move(coeffs)) {
    if (!std::isfinite(center_)) {
      throw std::invalid_argument("TaylorPoly: non-finite center");
    }
    if (coeffs_.empty()) {
      throw std::invalid_argument("TaylorPoly: empty coefficient list");
    }
    for (double c : coeffs_) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument("TaylorPoly: non-finite coefficient");
      }
    }
  }

  static TaylorPoly constant(double center, double value, int order = 0) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = value;
    return TaylorPoly(center, std::move(c));
  }

  static TaylorPoly zero(double center, int order = 0) {
    return constant(center, 0.0, order);
  }

  double center() const { return center_; }

  /// Highest retained power; coeffs().size() == order() + 1.
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<double>& coeffs() const { return coeffs_; }

  double operator[](int k) const {
    return coeffs_[static_cast<std::size_t>(k)];
  }

  /// Horner evaluation of the partial sum at t.
  double eval(double t) const {
    const double h = t - center_;
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      acc = acc * h + coeffs_[k];
    }
    if (!std::isfinite(acc)) {
      throw std::overflow_error("TaylorPoly::eval: non-finite result");
    }
    return acc;
  }

 private:
  double center_;
  std::vector<double> coeffs_;
};

namespace detail {
inline void check_same_center(const TaylorPoly& a, const TaylorPoly& b) {
  if (a.center() != b.center()) {
    throw std::domain_error("TaylorPoly: expansion centers differ");
  }
}
}  // namespace detail

/// Coefficient-wise sum, truncated to the shorter operand.
inline TaylorPoly operator+(const TaylorPoly& a, const TaylorPoly& b) {
  detail::check_same_center(a, b);
  const int n = std::min(a.order(), b.order());
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a[k] + b[k];
  return TaylorPoly(a.center(), std::move(c));
}

inline TaylorPoly operator-(const TaylorPoly& a, const TaylorPoly& b) {
  detail::check_same_center(a, b);
  const int n = std::min(a.order(), b.order());
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a[k] - b[k];
  return TaylorPoly(a.center(), std::move(c));
}

/// Cauchy product truncated to the shorter operand's order.
inline TaylorPoly operator*(const TaylorPoly& a, const TaylorPoly& b) {
  detail::check_same_center(a, b);
  const int n = std::min(a.order(), b.order());
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i <= std::min(n, a.order()); ++i) {
    for (int j = 0; i + j <= n && j <= b.order(); ++j) {
      c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    }
  }
  return TaylorPoly(a.center(), std::move(c));
}

inline TaylorPoly operator*(double s, const TaylorPoly& p) {
  std::vector<double> c = p.coeffs();
  for (double& x : c) x *= s;
  return TaylorPoly(p.center(), std::move(c));
}

/// Adds a constant to the zeroth coefficient.
inline TaylorPoly operator+(const TaylorPoly& p, double s) {
  std::vector<double> c = p.coeffs();
  c[0] += s;
  return TaylorPoly(p.center(), std::move(c));
}

inline TaylorPoly operator-(const TaylorPoly& p) { return -1.0 * p; }

/// Drops terms above `order`, or zero-pads; a polynomial is its own series
/// to any order, so padding is exact.
inline TaylorPoly truncated(const TaylorPoly& p, int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  const int n = std::min(order, p.order());
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = p[k];
  return TaylorPoly(p.center(), std::move(c));
}

/// Term-wise antiderivative: result[0] = const0, result[k+1] = p[k]/(k+1).
/// The order grows by one.
inline TaylorPoly integrate(const TaylorPoly& p, double const0) {
  std::vector<double> c(p.coeffs().size() + 1);
  c[0] = const0;
  for (int k = 0; k <= p.order(); ++k) {
    c[static_cast<std::size_t>(k) + 1] = p[k] / static_cast<double>(k + 1);
  }
  return TaylorPoly(p.center(), std::move(c));
}

/// Term-wise derivative (shift and scale); exact inverse of integrate.
inline TaylorPoly derivative(const TaylorPoly& p) {
  if (p.order() == 0) return TaylorPoly::zero(p.center());
  std::vector<double> c(p.coeffs().size() - 1);
  for (int k = 1; k <= p.order(); ++k) {
    c[static_cast<std::size_t>(k) - 1] = p[k] * static_cast<double>(k);
  }
  return TaylorPoly(p.center(), std::move(c));
}

/// True when the series is exactly the constant 1.
inline bool is_constant_one(const TaylorPoly& p) {
  if (p[0] != 1.0) return false;
  for (int k = 1; k <= p.order(); ++k) {
    if (p[k] != 0.0) return false;
  }
  return true;
}

/// True when every coefficient is exactly 0.
inline bool is_identically_zero(const TaylorPoly& p) {
  for (double c : p.coeffs()) {
    if (c != 0.0) return false;
  }
  return true;
}

}  // namespace carleman
