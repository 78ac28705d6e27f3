#include "carleman/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "carleman/system.hpp"

using carleman::CascadeInit;
using carleman::closed_form;
using carleman::compare;
using carleman::ErrorReport;
using carleman::ExampleId;
using carleman::example_problem;
using carleman::first_row_series;
using carleman::initial_auxiliary_values;
using carleman::ProblemSpec;
using carleman::resolve_gauge;
using carleman::rk_reference;
using carleman::SeriesSolution;
using carleman::UnitGauge;

namespace {

SeriesSolution make_series(ExampleId id, double y0, int n) {
  const ProblemSpec problem = example_problem(id, y0);
  const CascadeInit init =
      initial_auxiliary_values(problem, resolve_gauge(UnitGauge{}, n), n);
  return first_row_series(init, problem, n);
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    t[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  }
  return t;
}

TEST(ClosedForm, PrintedValues) {
  EXPECT_DOUBLE_EQ(closed_form(ExampleId::Quadratic, 0.5, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(closed_form(ExampleId::Quadratic, 0.0, 17.0), 0.0);
  EXPECT_DOUBLE_EQ(closed_form(ExampleId::QuadraticTimesT, 1.0, 1.0), 2.0);
  EXPECT_NEAR(closed_form(ExampleId::LinearForced, 2.0, 1.0),
              std::exp(1.0) + 2.0, 1e-15);
}

TEST(ClosedForm, InitialConditionHolds) {
  for (double y0 : {-1.5, 0.0, 0.5, 2.0}) {
    EXPECT_NEAR(closed_form(ExampleId::Exponential, y0, 0.0), y0, 1e-12);
    EXPECT_DOUBLE_EQ(closed_form(ExampleId::Quadratic, y0, 0.0), y0);
    EXPECT_DOUBLE_EQ(closed_form(ExampleId::QuadraticTimesT, y0, 0.0), y0);
    EXPECT_NEAR(closed_form(ExampleId::LinearForced, y0, 0.0), y0, 1e-15);
  }
}

TEST(ClosedForm, DomainViolationsThrow) {
  EXPECT_THROW(closed_form(ExampleId::Quadratic, 0.5, 2.0), std::domain_error);
  EXPECT_THROW(closed_form(ExampleId::Quadratic, 0.5, 2.5), std::domain_error);
  EXPECT_THROW(closed_form(ExampleId::Exponential, 0.0, 1.0),
               std::domain_error);
  EXPECT_THROW(closed_form(ExampleId::QuadraticTimesT, 1.0, 1.5),
               std::domain_error);
}

TEST(ClosedForm, SubstitutionRelatesQuadraticFamilies) {
  // The time-dependent variant at (y0, t) equals the autonomous one at
  // (y0, t^2/2).
  for (double y0 : {-0.5, 0.5, 1.0}) {
    for (double t = -1.0; t <= 1.0; t += 0.125) {
      EXPECT_NEAR(closed_form(ExampleId::QuadraticTimesT, y0, t),
                  closed_form(ExampleId::Quadratic, y0, t * t / 2.0), 1e-13);
    }
  }
}

TEST(RkReference, QuadraticHitsClosedForm) {
  const ProblemSpec problem = example_problem(ExampleId::Quadratic, 0.5);
  EXPECT_NEAR(rk_reference(problem, 1.0, 1e-10), 1.0, 1e-8);
}

TEST(RkReference, ZeroRhsIsExact) {
  const ProblemSpec problem(0.0, 3.25, carleman::PhiPolynomial{{0.0}});
  EXPECT_EQ(rk_reference(problem, 5.0, 1e-10), 3.25);
}

TEST(RkReference, ExponentialHitsClosedForm) {
  const ProblemSpec problem = example_problem(ExampleId::Exponential, 0.0);
  EXPECT_NEAR(rk_reference(problem, 0.5, 1e-10), std::log(2.0), 1e-8);
}

TEST(RkReference, RejectsUnreasonableTolerances) {
  const ProblemSpec problem = example_problem(ExampleId::Quadratic, 0.5);
  EXPECT_THROW(rk_reference(problem, 0.5, 1e-14), std::invalid_argument);
  EXPECT_THROW(rk_reference(problem, 0.5, 1e-2), std::invalid_argument);
}

TEST(RkReference, BlowUpCollapsesTheStepSize) {
  // y' = y^2 from y0 = 1 blows up at t = 1.
  const ProblemSpec problem = example_problem(ExampleId::Quadratic, 1.0);
  EXPECT_THROW(rk_reference(problem, 1.5, 1e-10), std::runtime_error);
}

TEST(RkReference, AgreesWithEveryClosedFormOnHalfDomains) {
  struct Case {
    ExampleId id;
    double y0;
    double lo, hi;
  };
  const Case cases[] = {
      {ExampleId::LinearForced, 2.0, -1.0, 1.0},
      {ExampleId::Quadratic, 0.5, -1.0, 1.0},
      {ExampleId::Exponential, 0.0, -0.5, 0.5},
      {ExampleId::QuadraticTimesT, 1.0, -1.0, 1.0},
  };
  const double tol = 1e-10;
  for (const Case& c : cases) {
    const ProblemSpec problem = example_problem(c.id, c.y0);
    for (double t : linspace(c.lo, c.hi, 11)) {
      EXPECT_NEAR(rk_reference(problem, t, tol),
                  closed_form(c.id, c.y0, t), 10.0 * tol)
          << "t = " << t;
    }
  }
}

TEST(Compare, PerfectOracleGivesZeroError) {
  const SeriesSolution sol = make_series(ExampleId::Quadratic, 0.5, 20);
  const std::vector<double> grid = linspace(-0.3, 0.3, 7);
  const ErrorReport report =
      compare(sol, [&](double t) { return evaluate(sol, t); }, grid);
  EXPECT_EQ(report.max_abs_err, 0.0);
  EXPECT_EQ(report.max_rel_err, 0.0);
}

TEST(Compare, QuadraticHalfDomainGrid) {
  const SeriesSolution sol = make_series(ExampleId::Quadratic, 0.5, 40);
  const std::vector<double> grid = linspace(-0.5, 0.5, 21);
  const ErrorReport report = compare(
      sol, [](double t) { return closed_form(ExampleId::Quadratic, 0.5, t); },
      grid);
  EXPECT_LE(report.max_abs_err, 1e-10);
  EXPECT_EQ(report.per_point.size(), grid.size());
  double max_seen = 0.0;
  for (const carleman::PointError& p : report.per_point) {
    ASSERT_TRUE(p.oracle_ok);
    max_seen = std::max(max_seen, p.abs_err);
  }
  EXPECT_EQ(report.max_abs_err, max_seen);
}

TEST(Compare, OutOfDomainPointsAreFlaggedAndExcluded) {
  const SeriesSolution sol = make_series(ExampleId::Quadratic, 0.5, 40);
  // t = 2.5 is past the pole of the closed form.
  const std::vector<double> grid{0.0, 0.5, 2.5};
  const ErrorReport report = compare(
      sol, [](double t) { return closed_form(ExampleId::Quadratic, 0.5, t); },
      grid);
  EXPECT_TRUE(report.per_point[0].oracle_ok);
  EXPECT_TRUE(report.per_point[1].oracle_ok);
  EXPECT_FALSE(report.per_point[2].oracle_ok);
  EXPECT_LE(report.max_abs_err, 1e-10);
}

TEST(Compare, RejectsEmptyGrid) {
  const SeriesSolution sol = make_series(ExampleId::Quadratic, 0.5, 10);
  EXPECT_THROW(compare(sol, [](double) { return 0.0; }, {}),
               std::invalid_argument);
}

}  // namespace
