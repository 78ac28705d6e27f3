#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "carleman/gauge.hpp"
#include "carleman/oracles.hpp"
#include "carleman/problem.hpp"

namespace carleman {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error("config error at " + (path.empty() ? "/" : path) +
                           ": " + what) {}
};

struct GridSpec {
  double t_min;
  double t_max;
  int count;
};

struct OracleSelector {
  enum class Kind { none, rk, closed_form };
  Kind kind = Kind::rk;
  ExampleId example = ExampleId::Quadratic;  // meaningful for closed_form only
};

struct OutputPaths {
  std::string csv;      // empty: write rows to stdout
  std::string summary;  // empty: write summary to stdout
  bool dump_coeffs = false;
};

struct RunConfig {
  ProblemSpec problem;
  GaugeSpec gauge;
  int n;
  GridSpec grid;
  double tol;
  OracleSelector oracle;
  OutputPaths outputs;
};

namespace detail {

using json = nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError(path + "/" + item.key(), "unknown key");
    }
  }
}

inline double as_real(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

inline int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

inline std::vector<double> as_real_array(const json& v,
                                         const std::string& path) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(path, "expected a non-empty array of numbers");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_real(v[i], path + "/" + std::to_string(i)));
  }
  return out;
}

inline PhiSpec parse_phi(const json& v, double y0, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  if (!v.contains("type")) throw ConfigError(path + "/type", "missing");
  if (!v["type"].is_string()) {
    throw ConfigError(path + "/type", "expected a string");
  }
  const std::string type = v["type"].get<std::string>();
  if (type == "power") {
    reject_unknown_keys(v, path, {"type", "exponent"});
    if (!v.contains("exponent")) {
      throw ConfigError(path + "/exponent", "missing");
    }
    const int m = as_int(v["exponent"], path + "/exponent");
    if (m < 1) throw ConfigError(path + "/exponent", "must be >= 1");
    return PhiPower{m};
  }
  if (type == "exponential") {
    reject_unknown_keys(v, path, {"type"});
    return PhiExponential{};
  }
  if (type == "polynomial") {
    reject_unknown_keys(v, path, {"type", "coeffs"});
    if (!v.contains("coeffs")) throw ConfigError(path + "/coeffs", "missing");
    return PhiPolynomial{as_real_array(v["coeffs"], path + "/coeffs")};
  }
  if (type == "series") {
    reject_unknown_keys(v, path, {"type", "coeffs"});
    if (!v.contains("coeffs")) throw ConfigError(path + "/coeffs", "missing");
    // Series coefficients are Taylor coefficients of phi around y0.
    return PhiSeries{y0, as_real_array(v["coeffs"], path + "/coeffs")};
  }
  throw ConfigError(path + "/type",
                    "expected one of power|exponential|polynomial|series");
}

inline TaylorPoly parse_poly(const json& v, double t0,
                             const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  reject_unknown_keys(v, path, {"poly"});
  if (!v.contains("poly")) throw ConfigError(path + "/poly", "missing");
  return TaylorPoly(t0, as_real_array(v["poly"], path + "/poly"));
}

inline GaugeSpec parse_gauge(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  if (!v.contains("type")) throw ConfigError(path + "/type", "missing");
  if (!v["type"].is_string()) {
    throw ConfigError(path + "/type", "expected a string");
  }
  const std::string type = v["type"].get<std::string>();
  if (type == "unit") {
    reject_unknown_keys(v, path, {"type"});
    return UnitGauge{};
  }
  if (type == "paper-power") {
    reject_unknown_keys(v, path, {"type"});
    return PowerGauge{};
  }
  if (type == "paper-exp") {
    reject_unknown_keys(v, path, {"type"});
    return ExpGauge{};
  }
  if (type == "custom") {
    reject_unknown_keys(v, path, {"type", "a"});
    if (!v.contains("a")) throw ConfigError(path + "/a", "missing");
    std::vector<double> a = as_real_array(v["a"], path + "/a");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) {
        throw ConfigError(path + "/a/" + std::to_string(i),
                          "gauge entries must be nonzero");
      }
    }
    return CustomGauge{std::move(a)};
  }
  throw ConfigError(path + "/type",
                    "expected one of unit|paper-power|paper-exp|custom");
}

inline OracleSelector parse_oracle(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  const std::string s = v.get<std::string>();
  if (s == "none") return OracleSelector{OracleSelector::Kind::none, {}};
  if (s == "rk") return OracleSelector{OracleSelector::Kind::rk, {}};
  if (s == "ex1") {
    return OracleSelector{OracleSelector::Kind::closed_form,
                          ExampleId::LinearForced};
  }
  if (s == "ex2") {
    return OracleSelector{OracleSelector::Kind::closed_form,
                          ExampleId::Quadratic};
  }
  if (s == "ex3") {
    return OracleSelector{OracleSelector::Kind::closed_form,
                          ExampleId::Exponential};
  }
  if (s == "ex4") {
    return OracleSelector{OracleSelector::Kind::closed_form,
                          ExampleId::QuadraticTimesT};
  }
  throw ConfigError(path, "expected one of rk|ex1|ex2|ex3|ex4|none");
}

}  // namespace detail

/// Parses and validates a JSON run configuration, applying defaults:
/// f == 1, g == 0, gauge unit, N = 30, oracle rk, tol = 1e-8 and a grid of
/// 21 points on [t0 - 0.5, t0 + 0.5].  Unknown keys are rejected with the
/// JSON path of the offender.
inline RunConfig parse_config(const std::string& text) {
  detail::json doc;
  try {
    doc = detail::json::parse(text);
  } catch (const detail::json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "expected a JSON object");
  detail::reject_unknown_keys(doc, "", {"t0", "y0", "phi", "f", "g", "gauge",
                                        "N", "grid", "oracle", "tol"});
  if (!doc.contains("t0")) throw ConfigError("/t0", "missing");
  if (!doc.contains("y0")) throw ConfigError("/y0", "missing");
  if (!doc.contains("phi")) throw ConfigError("/phi", "missing");

  const double t0 = detail::as_real(doc["t0"], "/t0");
  const double y0 = detail::as_real(doc["y0"], "/y0");
  PhiSpec phi = detail::parse_phi(doc["phi"], y0, "/phi");
  TaylorPoly f = doc.contains("f") ? detail::parse_poly(doc["f"], t0, "/f")
                                   : TaylorPoly::constant(t0, 1.0);
  TaylorPoly g = doc.contains("g") ? detail::parse_poly(doc["g"], t0, "/g")
                                   : TaylorPoly::zero(t0);

  GaugeSpec gauge = doc.contains("gauge")
                        ? detail::parse_gauge(doc["gauge"], "/gauge")
                        : GaugeSpec{UnitGauge{}};

  int n = 30;
  if (doc.contains("N")) {
    n = detail::as_int(doc["N"], "/N");
    if (n < 2) throw ConfigError("/N", "must be >= 2");
  }

  GridSpec grid{t0 - 0.5, t0 + 0.5, 21};
  if (doc.contains("grid")) {
    const auto& gv = doc["grid"];
    if (!gv.is_object()) throw ConfigError("/grid", "expected an object");
    detail::reject_unknown_keys(gv, "/grid", {"min", "max", "count"});
    if (!gv.contains("min")) throw ConfigError("/grid/min", "missing");
    if (!gv.contains("max")) throw ConfigError("/grid/max", "missing");
    if (!gv.contains("count")) throw ConfigError("/grid/count", "missing");
    grid.t_min = detail::as_real(gv["min"], "/grid/min");
    grid.t_max = detail::as_real(gv["max"], "/grid/max");
    grid.count = detail::as_int(gv["count"], "/grid/count");
    if (grid.count < 2) throw ConfigError("/grid/count", "must be >= 2");
    if (!(grid.t_min < grid.t_max)) {
      throw ConfigError("/grid", "min must be less than max");
    }
  }

  OracleSelector oracle;
  if (doc.contains("oracle")) {
    oracle = detail::parse_oracle(doc["oracle"], "/oracle");
  }

  double tol = 1e-8;
  if (doc.contains("tol")) {
    tol = detail::as_real(doc["tol"], "/tol");
    if (!(tol > 0.0)) throw ConfigError("/tol", "must be positive");
  }

  try {
    ProblemSpec problem(t0, y0, std::move(phi), std::move(f), std::move(g));
    return RunConfig{std::move(problem), std::move(gauge), n,
                     grid,               tol,              oracle,
                     OutputPaths{}};
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", e.what());
  }
}

}  // namespace carleman
