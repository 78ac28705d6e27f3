// Acceptance suite: one test per criterion, each printing a pass/fail line.

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "carleman/carleman.hpp"

namespace {

namespace fs = std::filesystem;
using namespace carleman;

struct CriterionBanner {
  std::string label;
  ~CriterionBanner() {
    std::cout << "[" << label << "] "
              << (::testing::Test::HasFailure() ? "FAIL" : "PASS")
              << std::endl;
  }
};

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    t[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  }
  return t;
}

SeriesSolution build_series(const ProblemSpec& problem, const GaugeSpec& gauge,
                            int n) {
  return first_row_series(
      initial_auxiliary_values(problem, resolve_gauge(gauge, n), n), problem,
      n);
}

TEST(Acceptance, C01_Example1LinearForcedReproduction) {
  CriterionBanner banner{"criterion 01: example 1 reproduction, tol 1e-10"};
  const double y0 = 2.0;
  const SeriesSolution sol =
      build_series(example_problem(ExampleId::LinearForced, y0), UnitGauge{},
                   40);
  for (double t : linspace(-1.0, 1.0, 21)) {
    const double want = (y0 - 1.0) * std::exp(t) + t + 1.0;
    EXPECT_NEAR(evaluate(sol, t), want, 1e-10) << "t = " << t;
  }
}

TEST(Acceptance, C02_Example2QuadraticReproduction) {
  CriterionBanner banner{"criterion 02: example 2 reproduction, rel tol 1e-8"};
  const double y0 = 0.5;
  const SeriesSolution sol =
      build_series(example_problem(ExampleId::Quadratic, y0), UnitGauge{}, 40);
  for (double t : linspace(-1.0, 1.0, 21)) {
    const double want = y0 / (1.0 - y0 * t);
    EXPECT_LE(std::abs(evaluate(sol, t) - want) / std::abs(want), 1e-8)
        << "t = " << t;
  }
  const SeriesSolution trivial =
      build_series(example_problem(ExampleId::Quadratic, 0.0), UnitGauge{}, 40);
  for (double t : linspace(-1.0, 1.0, 21)) {
    EXPECT_EQ(evaluate(trivial, t), 0.0) << "t = " << t;
  }
}

TEST(Acceptance, C03_Example3ExponentialReproduction) {
  CriterionBanner banner{"criterion 03: example 3 reproduction, tol 1e-8"};
  const double y0 = 0.0;
  const SeriesSolution sol =
      build_series(example_problem(ExampleId::Exponential, y0), UnitGauge{},
                   40);
  for (double t : linspace(-0.5, 0.5, 21)) {
    const double want = -std::log(std::exp(-y0) - t);
    EXPECT_NEAR(evaluate(sol, t), want, 1e-8) << "t = " << t;
  }
}

TEST(Acceptance, C04_Example4TimeDependentReproduction) {
  CriterionBanner banner{
      "criterion 04: example 4 via the time-dependent solver, tol 1e-7"};
  const double y0 = 1.0;
  const ProblemSpec problem = example_problem(ExampleId::QuadraticTimesT, y0);
  const CascadeInit init =
      initial_auxiliary_values(problem, resolve_gauge(UnitGauge{}, 40), 40);
  const TruncatedSystem sys = build_truncated_system(init, problem, 40);
  for (double t : linspace(-1.0, 1.0, 21)) {
    const double want = 2.0 * y0 / (2.0 - y0 * t * t);
    EXPECT_NEAR(solve_timedep(sys, t)[0], want, 1e-7) << "t = " << t;
  }
}

struct RandomProblem {
  ProblemSpec problem;
  std::vector<double> custom_gauge;
};

std::vector<RandomProblem> random_problems(int count, int n) {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution sign;
  std::vector<RandomProblem> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const PhiPolynomial phi{{coef(rng), coef(rng), coef(rng), coef(rng)}};
    const TaylorPoly g(0.0, {coef(rng), coef(rng), coef(rng)});
    ProblemSpec problem(0.0, coef(rng), phi, TaylorPoly::constant(0.0, 1.0),
                        g);
    std::vector<double> gauge(static_cast<std::size_t>(n) - 1);
    for (double& a : gauge) a = (sign(rng) ? 1.0 : -1.0) * mag(rng);
    out.push_back(RandomProblem{std::move(problem), std::move(gauge)});
  }
  return out;
}

TEST(Acceptance, C05_RouteEquivalenceOnRandomProblems) {
  CriterionBanner banner{
      "criterion 05: route equivalence on 50 random problems, rel tol 1e-10"};
  const int n = 25;
  for (const RandomProblem& rp : random_problems(50, n)) {
    const SeriesSolution sol = build_series(rp.problem, UnitGauge{}, n);
    const TaylorPoly from_series = to_t_series(sol, n - 1);
    const TaylorPoly direct = taylor_ivp_coeffs(rp.problem, n - 1);
    for (int k = 0; k < 24; ++k) {
      const double want = direct[k];
      EXPECT_LE(std::abs(from_series[k] - want) /
                    std::max(std::abs(want), 1e-12),
                1e-10)
          << "k = " << k;
    }
  }
}

TEST(Acceptance, C06_GaugeInvariance) {
  CriterionBanner banner{
      "criterion 06: gauge invariance of coefficients and solutions"};
  const int n = 25;
  const double sample_ts[] = {-0.25, -0.1, 0.05, 0.15, 0.25};
  for (const RandomProblem& rp : random_problems(50, n)) {
    const CascadeInit unit_init = initial_auxiliary_values(
        rp.problem, resolve_gauge(UnitGauge{}, n), n);
    const SeriesSolution reference =
        first_row_series(unit_init, rp.problem, n);
    const TruncatedSystem reference_sys =
        build_truncated_system(unit_init, rp.problem, n);
    const GaugeSpec gauges[] = {GaugeSpec{PowerGauge{}},
                                GaugeSpec{CustomGauge{rp.custom_gauge}}};
    for (const GaugeSpec& gauge : gauges) {
      const CascadeInit init = initial_auxiliary_values(
          rp.problem, resolve_gauge(gauge, n), n);
      const SeriesSolution sol = first_row_series(init, rp.problem, n);
      for (int j = 0; j < n; ++j) {
        const double want = reference.u_coeffs[static_cast<std::size_t>(j)];
        EXPECT_NEAR(sol.u_coeffs[static_cast<std::size_t>(j)], want,
                    1e-12 * std::max(1.0, std::abs(want)))
            << "j = " << j;
      }
      const TruncatedSystem sys = build_truncated_system(init, rp.problem, n);
      for (double t : sample_ts) {
        const double want = solve_constant(reference_sys, t)[0];
        EXPECT_NEAR(solve_constant(sys, t)[0], want,
                    1e-11 * std::max(1.0, std::abs(want)))
            << "t = " << t;
      }
    }
  }
}

TEST(Acceptance, C07_MatrixStructureAndExponential) {
  CriterionBanner banner{
      "criterion 07: matrix structure, semigroup, norm and remainder bounds"};
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::uniform_real_distribution<double> su(-1.0, 1.0);
  std::bernoulli_distribution sign;
  const auto random_matrix = [&](int dim) {
    std::vector<double> a(static_cast<std::size_t>(dim) - 1);
    for (double& v : a) v = (sign(rng) ? 1.0 : -1.0) * mag(rng);
    return SuperdiagonalMatrix(dim, std::move(a));
  };

  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> dims(2, 12);
    const int dim = dims(rng);
    const SuperdiagonalMatrix a = random_matrix(dim);

    // Nilpotency, exactly.
    const DenseUpperTriangular an = matrix_power(a, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) EXPECT_EQ(an.at(i, j), 0.0);
    }
    // Powers live on the p-th superdiagonal only.
    for (int p = 1; p < dim; ++p) {
      const DenseUpperTriangular ap = matrix_power(a, p);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          if (j - i != p) EXPECT_EQ(ap.at(i, j), 0.0);
        }
      }
    }
    // Semigroup and norm bound.
    const double s = su(rng);
    const double u = su(rng);
    EXPECT_LE(max_abs_diff(multiply(expm_superdiag(a, s), expm_superdiag(a, u)),
                           expm_superdiag(a, s + u)),
              1e-11);
    EXPECT_LE(norm_inf(expm_superdiag(a, s)),
              std::exp(norm_inf(a) * std::abs(s)) + 1e-12);
    // Terminated series equals the closed form.
    EXPECT_LE(max_abs_diff(expm_series(a, s, dim).partial_sum,
                           expm_superdiag(a, s)),
              1e-13);
  }

  int dominated = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    std::uniform_int_distribution<int> dims(2, 12);
    const int dim = dims(rng);
    const SuperdiagonalMatrix a = random_matrix(dim);
    const double s = 1.5 * su(rng);
    std::uniform_int_distribution<int> ns(1, dim + 2);
    const auto [sum, bound] = expm_series(a, s, ns(rng));
    if (max_abs_diff(sum, expm_superdiag(a, s)) <= bound) ++dominated;
  }
  EXPECT_EQ(dominated, trials);
}

TEST(Acceptance, C08_RadiusAndDomainRecovery) {
  CriterionBanner banner{
      "criterion 08: radius within 10 percent, domain endpoint within 1"
      " percent"};
  const int n = 60;
  for (double y0 : {0.5, 1.0}) {
    const SeriesSolution sol =
        build_series(example_problem(ExampleId::Quadratic, y0), UnitGauge{}, n);
    ASSERT_FALSE(sol.radius_u.indeterminate);
    const double want = 1.0 / std::abs(y0);
    EXPECT_LE(std::abs(sol.radius_u.value - want) / want, 0.10)
        << "quadratic y0 = " << y0;
  }
  for (double y0 : {0.0, 1.0}) {
    const SeriesSolution sol = build_series(
        example_problem(ExampleId::Exponential, y0), UnitGauge{}, n);
    ASSERT_FALSE(sol.radius_u.indeterminate);
    const double want = std::exp(-y0);
    EXPECT_LE(std::abs(sol.radius_u.value - want) / want, 0.10)
        << "exponential y0 = " << y0;
  }
  const SeriesSolution sol = build_series(
      example_problem(ExampleId::QuadraticTimesT, 1.0), UnitGauge{}, n);
  const TimeInterval iv = domain_map(sol);
  ASSERT_FALSE(iv.indeterminate);
  const double want = std::sqrt(2.0);
  EXPECT_LE(std::abs(iv.hi - want) / want, 0.01);
  EXPECT_LE(std::abs(-iv.lo - want) / want, 0.01);
}

TEST(Acceptance, C09_PartialSumConvergence) {
  CriterionBanner banner{
      "criterion 09: partial-sum errors decrease and terminate at zero"};
  const int n = 20;
  const double t = 0.5;
  const ProblemSpec problem = example_problem(ExampleId::Quadratic, 0.5);
  const CascadeInit init =
      initial_auxiliary_values(problem, resolve_gauge(UnitGauge{}, n), n);
  const TruncatedSystem sys = build_truncated_system(init, problem, n);
  const double y_full = solve_constant(sys, t)[0];
  double prev = std::abs(partial_sum_solution(sys, t, 1)[0] - y_full);
  for (int k = 2; k <= 10; ++k) {
    const double err = std::abs(partial_sum_solution(sys, t, k)[0] - y_full);
    EXPECT_LT(err, prev) << "n = " << k;
    prev = err;
  }
  EXPECT_LE(std::abs(partial_sum_solution(sys, t, n)[0] - y_full), 1e-13);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST(Acceptance, C10_CliEndToEnd) {
  CriterionBanner banner{"criterion 10: CLI exit codes and deterministic CSV"};
  const fs::path dir =
      fs::temp_directory_path() /
      ("carleman_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto run = [&](const std::string& args) {
    const std::string cmd = std::string(CARLEMAN_CLI_PATH) + " " + args +
                            " > " + (dir / "log.txt").string() + " 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };

  EXPECT_EQ(run("examples"), 0);
  EXPECT_NE(slurp(dir / "log.txt").find("4/4 examples passed"),
            std::string::npos);

  {
    std::ofstream bad(dir / "bad.json");
    bad << "{broken";
  }
  EXPECT_EQ(run("solve --config " + (dir / "bad.json").string()), 1);

  {
    std::ofstream cfg(dir / "edge.json");
    cfg << R"({"phi": {"type": "power", "exponent": 2}, "y0": 0.5, "t0": 0,
               "N": 40, "oracle": "ex2",
               "grid": {"min": 0, "max": 1.9, "count": 21}})";
  }
  EXPECT_EQ(run("solve --config " + (dir / "edge.json").string() + " --out " +
                (dir / "edge.csv").string()),
            2);

  {
    std::ofstream cfg(dir / "good.json");
    cfg << R"({"phi": {"type": "power", "exponent": 2}, "y0": 0.5, "t0": 0,
               "N": 40, "oracle": "ex2",
               "grid": {"min": -0.5, "max": 0.5, "count": 21}})";
  }
  EXPECT_EQ(run("solve --config " + (dir / "good.json").string() + " --out " +
                (dir / "run1.csv").string()),
            0);
  EXPECT_EQ(run("solve --config " + (dir / "good.json").string() + " --out " +
                (dir / "run2.csv").string()),
            0);
  const std::string a = slurp(dir / "run1.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "run2.csv"));

  fs::remove_all(dir);
}

}  // namespace
