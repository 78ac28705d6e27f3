#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace carleman {

/// Matrix with nonzeros only on the first diagonal above the main one.
/// Strictly upper triangular, hence nilpotent: the dim-th power vanishes.
class SuperdiagonalMatrix {
 public:
  SuperdiagonalMatrix(int dim, std::vector<double> superdiag)
      : dim_(dim), a_(std::move(superdiag)) {
    if (dim_ < 1) {
      throw std::invalid_argument("SuperdiagonalMatrix: dim must be >= 1");
    }
    if (a_.size() != static_cast<std::size_t>(dim_) - 1) {
      throw std::invalid_argument(
          "SuperdiagonalMatrix: superdiagonal must have dim-1 entries");
    }
    for (double v : a_) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("SuperdiagonalMatrix: non-finite entry");
      }
    }
  }

  int dim() const { return dim_; }
  const std::vector<double>& superdiag() const { return a_; }
  double entry(int j) const { return a_[static_cast<std::size_t>(j)]; }

 private:
  int dim_;
  std::vector<double> a_;
};

/// Induced infinity norm (max row sum): for a superdiagonal matrix this is
/// the largest |a_j|.
inline double norm_inf(const SuperdiagonalMatrix& m) {
  double best = 0.0;
  for (double v : m.superdiag()) best = std::max(best, std::abs(v));
  return best;
}

/// Upper-triangular matrix in packed row-major storage; entries below the
/// diagonal are not stored and read back as zero.
class DenseUpperTriangular {
 public:
  explicit DenseUpperTriangular(int dim)
      : dim_(dim),
        e_(static_cast<std::size_t>(dim) * (static_cast<std::size_t>(dim) + 1) /
               2,
           0.0) {
    if (dim_ < 1) {
      throw std::invalid_argument("DenseUpperTriangular: dim must be >= 1");
    }
  }

  static DenseUpperTriangular identity(int dim) {
    DenseUpperTriangular m(dim);
    for (int i = 0; i < dim; ++i) m.ref(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }

  double at(int i, int j) const {
    assert(i >= 0 && i < dim_ && j >= 0 && j < dim_);
    return i <= j ? e_[index(i, j)] : 0.0;
  }

  double& ref(int i, int j) {
    assert(i >= 0 && j < dim_ && i <= j);
    return e_[index(i, j)];
  }

  /// Matrix-vector product.
  std::vector<double> apply(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(dim_)) {
      throw std::invalid_argument("DenseUpperTriangular::apply: size mismatch");
    }
    std::vector<double> out(static_cast<std::size_t>(dim_), 0.0);
    for (int i = 0; i < dim_; ++i) {
      double acc = 0.0;
      for (int j = i; j < dim_; ++j) {
        acc += at(i, j) * x[static_cast<std::size_t>(j)];
      }
      out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
  }

 private:
  std::size_t index(int i, int j) const {
    const std::size_t row = static_cast<std::size_t>(i);
    const std::size_t offset =
        row * static_cast<std::size_t>(dim_) - row * (row - 1) / 2;
    return offset + static_cast<std::size_t>(j - i);
  }

  int dim_;
  std::vector<double> e_;
};

/// Product of two upper triangulars (upper triangular again).
inline DenseUpperTriangular multiply(const DenseUpperTriangular& a,
                                     const DenseUpperTriangular& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("multiply: dimension mismatch");
  }
  const int n = a.dim();
  DenseUpperTriangular out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int k = i; k <= j; ++k) acc += a.at(i, k) * b.at(k, j);
      out.ref(i, j) = acc;
    }
  }
  return out;
}

inline double norm_inf(const DenseUpperTriangular& m) {
  double best = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    double row = 0.0;
    for (int j = i; j < m.dim(); ++j) row += std::abs(m.at(i, j));
    best = std::max(best, row);
  }
  return best;
}

inline double max_abs_diff(const DenseUpperTriangular& a,
                           const DenseUpperTriangular& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  double best = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = i; j < a.dim(); ++j) {
      best = std::max(best, std::abs(a.at(i, j) - b.at(i, j)));
    }
  }
  return best;
}

/// A^p: the only nonzeros sit on the p-th superdiagonal,
/// (A^p)(i, i+p) = a[i]*a[i+1]*...*a[i+p-1]; A^0 is the identity.
inline DenseUpperTriangular matrix_power(const SuperdiagonalMatrix& m, int p) {
  if (p < 0) {
    throw std::invalid_argument("matrix_power: exponent must be >= 0");
  }
  const int n = m.dim();
  if (p == 0) return DenseUpperTriangular::identity(n);
  DenseUpperTriangular out(n);
  for (int i = 0; i + p < n; ++i) {
    double prod = 1.0;
    for (int k = i; k < i + p; ++k) prod *= m.entry(k);
    out.ref(i, i + p) = prod;
  }
  return out;
}

/// Exact e^{A s} for nilpotent superdiagonal A: the exponential series
/// terminates, entry (i, i+m) = (a[i]*...*a[i+m-1]) * s^m / m!.
inline DenseUpperTriangular expm_superdiag(const SuperdiagonalMatrix& m,
                                           double s) {
  const int n = m.dim();
  DenseUpperTriangular out = DenseUpperTriangular::identity(n);
  for (int i = 0; i < n; ++i) {
    double term = 1.0;
    for (int p = 1; i + p < n; ++p) {
      term *= m.entry(i + p - 1) * s / static_cast<double>(p);
      out.ref(i, i + p) = term;
    }
  }
  return out;
}

namespace detail {

// Tail sum_{j>=n} x^j/j! of the exponential series, summed directly to avoid
// the cancellation in e^x minus a partial sum.
inline double exp_series_tail(double x, int n) {
  if (x == 0.0) return 0.0;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= x / static_cast<double>(k);
  double sum = 0.0;
  for (int j = n; j < n + 1000; ++j) {
    sum += term;
    term *= x / static_cast<double>(j + 1);
    if (term <= sum * 1e-18) break;
  }
  return sum;
}

}  // namespace detail

struct ExpmSeriesResult {
  DenseUpperTriangular partial_sum;
  /// Bound on the dropped tail, sum_{j>=n} ||A s||^j / j! in the induced
  /// infinity norm; dominates the true elementwise error.
  double remainder_bound;
};

/// n-th partial sum S_n = I + sum_{j=1}^{n-1} (A s)^j / j! of the matrix
/// exponential series.  For n >= dim the nilpotent series has terminated and
/// the result equals expm_superdiag exactly.
inline ExpmSeriesResult expm_series(const SuperdiagonalMatrix& m, double s,
                                    int n) {
  if (n < 1) {
    throw std::invalid_argument("expm_series: need n >= 1");
  }
  const int dim = m.dim();
  DenseUpperTriangular sum = DenseUpperTriangular::identity(dim);
  // term_j lives on the j-th superdiagonal only; carry just that diagonal.
  std::vector<double> diag(static_cast<std::size_t>(dim), 0.0);
  for (int i = 0; i < dim; ++i) diag[static_cast<std::size_t>(i)] = 1.0;
  for (int j = 1; j <= n - 1 && j < dim; ++j) {
    for (int i = 0; i + j < dim; ++i) {
      // Same grouping as expm_superdiag so the terminated series matches the
      // closed form exactly.
      diag[static_cast<std::size_t>(i)] *=
          m.entry(i + j - 1) * s / static_cast<double>(j);
      sum.ref(i, i + j) = diag[static_cast<std::size_t>(i)];
    }
  }
  const double bound = detail::exp_series_tail(norm_inf(m) * std::abs(s), n);
  return ExpmSeriesResult{std::move(sum), bound};
}

}  // namespace carleman
