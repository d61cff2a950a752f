#include <doctest.h>

#include <cmath>

#include "vortexlab/kernels.hpp"
#include "vortexlab/solver.hpp"

using namespace vortexlab;

namespace {

BoundaryData explicit_boundary(const ScalarField& u) {
  BoundaryData b;
  b.kind = BoundaryKind::Explicit;
  b.values = u.values();
  return b;
}

double max_diff(const ScalarField& a, const ScalarField& b, bool inner_only = false) {
  const GridDomain& d = a.domain();
  double m = 0.0;
  for (int j = 0; j < d.n(); ++j)
    for (int i = 0; i < d.n(); ++i)
      if (!inner_only || d.in_inner_square(i, j)) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace

TEST_CASE("conjugate gradient solves a manufactured system") {
  const GridDomain d(1.0, 33);
  const int n = d.n();
  const ScalarField x_true = ScalarField::sample(d, [&](double x, double y) {
    return (1.0 - x * x) * (1.0 - y * y) * std::exp(x);
  });
  std::vector<double> diag(d.size(), 2.0), rhs(d.size(), 0.0);
  vortexlab::kernels::serial::shifted_operator(n, d.spacing(), diag, x_true.values(), rhs);
  std::vector<double> x(d.size(), 0.0);
  const int its = conjugate_gradient(n, d.spacing(), diag, rhs, x, {1e-13, 1000});
  CHECK(its > 0);
  double err = 0.0;
  for (std::size_t id = 0; id < d.size(); ++id) err = std::max(err, std::abs(x[id] - x_true.values()[id]));
  CHECK(err <= 1e-9);
  std::vector<double> x2(d.size(), 0.0);
  CHECK_THROWS_AS(conjugate_gradient(n, d.spacing(), diag, rhs, x2, {1e-13, 2}), ConvergenceError);
}

TEST_CASE("boundary data") {
  const GridDomain d(2.0, 41);
  const VortexProblem ez(EntireFunction({1.0}, {0.0, 1.0}), 2, d);
  const BoundaryData sub = make_boundary_subsolution(ez);
  CHECK(sub.kind == BoundaryKind::SubsolutionProfile);
  CHECK(sub.values[d.index(0, 7)] == doctest::Approx(-2.0));
  CHECK(sub.values[d.index(40, 7)] == doctest::Approx(2.0));
  CHECK(sub.values[d.index(20, 20)] == 0.0);

  const VortexProblem z(EntireFunction({0.0, 1.0}), 2, d);
  const BoundaryData comp = make_boundary_complete(z, 3.0);
  CHECK(comp.kind == BoundaryKind::CompleteApprox);
  CHECK(comp.offset == 3.0);
  CHECK(comp.values[d.index(0, 0)] == doctest::Approx(std::log(std::sqrt(8.0)) + 3.0));
  CHECK(comp.values[d.index(40, 20)] == doctest::Approx(std::log(2.0) + 3.0));
  CHECK_THROWS_AS(make_boundary_complete(z, -1.0), PreconditionError);

  const VortexProblem edge(EntireFunction({-1.95, 1.0}), 2, d);
  CHECK_THROWS_AS(make_boundary_subsolution(edge), PreconditionError);
}

TEST_CASE("newton recovers an exact discrete solution from a bump") {
  const GridDomain d(2.0, 41);
  const ScalarField exact = ScalarField::sample(d, [](double x, double) { return 2.0 * x / 3.0; });
  const VortexProblem prob(EntireFunction({1.0}, {0.0, 1.0}), 3, d, explicit_boundary(exact));
  ScalarField start = exact;
  for (int j = 0; j < d.n(); ++j)
    for (int i = 0; i < d.n(); ++i)
      start(i, j) += 0.5 * std::exp(-(d.x(i) * d.x(i) + d.y(j) * d.y(j)));
  const SolveResult r = solve_newton(prob, start);
  CHECK(r.report.converged);
  CHECK(r.report.method == "newton");
  CHECK(r.report.final_residual <= 1e-10);
  CHECK(r.report.residual_history.size() == static_cast<std::size_t>(r.report.iterations) + 1);
  CHECK(max_diff(r.field, exact) <= 1e-8);
}

TEST_CASE("monotone iteration from a valid bracket") {
  const GridDomain d(2.0, 41);
  const VortexProblem base(EntireFunction({1.0}, {0.0, 1.0}), 2, d);
  const VortexProblem prob = base.with_boundary(make_boundary_complete(base, 4.0));
  // x solves the equation exactly and lies below the data; any constant >= 4 + R is a supersolution.
  const ScalarField lo = ScalarField::sample(d, [](double x, double) { return x; });
  const ScalarField hi(d, 7.0);
  const SolveResult m = monotone_solve(prob, lo, hi);
  CHECK(m.report.converged);
  CHECK(m.report.band_violations == 0);
  CHECK(m.report.monotone_violations == 0);
  double below = 0.0, above = 0.0;
  for (std::size_t id = 0; id < d.size(); ++id) {
    below = std::max(below, lo.values()[id] - m.field.values()[id]);
    above = std::max(above, m.field.values()[id] - hi.values()[id]);
  }
  CHECK(below <= 1e-9);
  CHECK(above <= 1e-9);
  const SolveResult nw = solve_newton(prob, hi);
  CHECK(max_diff(m.field, nw.field) <= 1e-8);

  CHECK_THROWS_AS(monotone_solve(prob, hi, lo), PreconditionError);
  const SolveResult bad = monotone_solve(prob, ScalarField(d, -1.0), hi);
  CHECK(bad.report.band_violations > 0);
}

TEST_CASE("comparison in the boundary offset") {
  const GridDomain d(3.0, 41);
  const VortexProblem base(EntireFunction({0.0, 0.0, 1.0}), 3, d);
  const ScalarField start = clipped_profile(base);
  const SolveResult a = solve_newton(base.with_boundary(make_boundary_complete(base, 2.0)), start);
  const SolveResult b = solve_newton(base.with_boundary(make_boundary_complete(base, 4.0)), start);
  double min_diff = 1e300;
  for (std::size_t id = 0; id < d.size(); ++id)
    min_diff = std::min(min_diff, b.field.values()[id] - a.field.values()[id]);
  CHECK(min_diff >= 0.0);
}

TEST_CASE("complete solution for constant phi") {
  // |c| = 20 keeps the boundary layer, of width ~ (k |c|^{2/k})^{-1/2}, well outside the inner square.
  const Complex c(12.0, 16.0);
  for (int k : {2, 3}) {
    const GridDomain d(8.0, 81);
    const VortexProblem prob(EntireFunction({c}), k, d);
    const SolveResult r = solve_complete(prob);
    CHECK(r.report.method == "continuation");
    CHECK(r.report.stabilized);
    CHECK(r.report.continuation_trace.size() >= 2);
    CHECK(r.report.continuation_trace.front().inner_change == -1.0);
    const double w0 = 2.0 / k * std::log(20.0);
    double err = 0.0;
    for (int j = 0; j < d.n(); ++j)
      for (int i = 0; i < d.n(); ++i)
        if (d.in_inner_square(i, j)) err = std::max(err, std::abs(r.field(i, j) - w0));
    CHECK(err <= 1e-6);
  }
}

TEST_CASE("two solutions") {
  const GridDomain d(4.0, 81);
  CHECK_THROWS_AS(two_solutions(EntireFunction({0.0, 1.0}), 2, d), PreconditionError);

  const TwoSolutions t = two_solutions(EntireFunction({0.0, 1.0}, {0.0, 1.0}), 2, d);
  CHECK(t.complete.report.converged);
  CHECK(t.incomplete.report.converged);
  CHECK(t.incomplete.report.boundary_kind == BoundaryKind::SubsolutionProfile);
  CHECK(max_diff(t.complete.field, t.incomplete.field, true) > 0.1);
  double min_gap = 1e300;
  for (int j = 0; j < d.n(); ++j)
    for (int i = 0; i < d.n(); ++i)
      if (d.in_inner_square(i, j)) min_gap = std::min(min_gap, t.complete.field(i, j) - t.incomplete.field(i, j));
  CHECK(min_gap > 0.0);

  // A zero of phi too close to the boundary.
  CHECK_THROWS_AS(two_solutions(EntireFunction({-3.9, 1.0}, {0.0, 1.0}), 2, d), PreconditionError);
}
