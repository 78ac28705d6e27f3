#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

namespace carleman {

// The superdiagonal coefficients a_{j,j+1} of the cascade are a free choice
// ("gauge"); only the running products prod_k a_{k,k+1} times the initial
// values are meaningful.  Every entry must be nonzero.

/// a_{j,j+1} = 1 for all j.
struct UnitGauge {};

/// a_{j,j+1} = j+1; natural when the cascade variables are successive powers
/// y^{j+1}.
struct PowerGauge {};

/// a_{0,1} = 1, a_{j,j+1} = j for j >= 1; natural when the cascade variables
/// are exponentials e^{j y}.
struct ExpGauge {};

/// Caller-supplied superdiagonal entries, all nonzero.
struct CustomGauge {
  std::vector<double> a;
};

using GaugeSpec = std::variant<UnitGauge, PowerGauge, ExpGauge, CustomGauge>;

/// Binds a gauge to truncation dimension n, producing the n-1 superdiagonal
/// entries of the truncated matrix.
inline std::vector<double> resolve_gauge(const GaugeSpec& gauge, int n) {
  if (n < 2) {
    throw std::invalid_argument("resolve_gauge: truncation must be >= 2");
  }
  const std::size_t len = static_cast<std::size_t>(n) - 1;
  std::vector<double> a(len);
  if (std::holds_alternative<UnitGauge>(gauge)) {
    for (std::size_t j = 0; j < len; ++j) a[j] = 1.0;
  } else if (std::holds_alternative<PowerGauge>(gauge)) {
    for (std::size_t j = 0; j < len; ++j) a[j] = static_cast<double>(j + 1);
  } else if (std::holds_alternative<ExpGauge>(gauge)) {
    a[0] = 1.0;
    for (std::size_t j = 1; j < len; ++j) a[j] = static_cast<double>(j);
  } else {
    const auto& custom = std::get<CustomGauge>(gauge);
    if (custom.a.size() < len) {
      throw std::invalid_argument("resolve_gauge: custom gauge list too short");
    }
    for (std::size_t j = 0; j < len; ++j) {
      if (!std::isfinite(custom.a[j]) || custom.a[j] == 0.0) {
        throw std::invalid_argument(
            "resolve_gauge: custom gauge entries must be finite and nonzero");
      }
      a[j] = custom.a[j];
    }
  }
  return a;
}

}  // namespace carleman
