#include "vortexlab/solver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "vortexlab/kernels.hpp"

namespace vortexlab {

namespace {

double residual_norm(const VortexProblem& prob, const std::vector<double>& w,
                     std::vector<double>& g) {
  const GridDomain& d = prob.domain();
  kernels::vortex_residual(d.n(), d.spacing(), prob.k(), prob.log_modulus(), w, g);
  return kernels::max_abs(d.n(), g);
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

}  // namespace

int conjugate_gradient(int n, double h, const std::vector<double>& diag,
                       const std::vector<double>& rhs, std::vector<double>& x,
                       const CgOptions& opts) {
  const std::size_t size = static_cast<std::size_t>(n) * n;
  std::vector<double> r(size, 0.0), z(size, 0.0), p(size, 0.0), ap(size, 0.0),
      precond(size, 1.0);
  const double center = 4.0 / (h * h);
  for (std::size_t id = 0; id < size; ++id) precond[id] = center + diag[id];

  kernels::shifted_operator(n, h, diag, x, ap);
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) r[j * n + i] = rhs[j * n + i] - ap[j * n + i];

  const double bnorm = std::sqrt(kernels::dot(n, rhs, rhs));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return 0;
  }
  const double target = opts.rel_tol * bnorm;
  kernels::divide(n, r, precond, z);
  p = z;
  double rz = kernels::dot(n, r, z);
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (std::sqrt(kernels::dot(n, r, r)) <= target) return it;
    kernels::shifted_operator(n, h, diag, p, ap);
    const double pap = kernels::dot(n, p, ap);
    if (!(pap > 0.0) || !std::isfinite(pap))
      throw ConvergenceError("conjugate_gradient: operator is not positive definite");
    const double alpha = rz / pap;
    kernels::axpy(n, alpha, p, x);
    kernels::axpy(n, -alpha, ap, r);
    kernels::divide(n, r, precond, z);
    const double rz_next = kernels::dot(n, r, z);
    kernels::xpby(n, z, rz_next / rz, p);
    rz = rz_next;
  }
  if (std::sqrt(kernels::dot(n, r, r)) <= target) return opts.max_iterations;
  throw ConvergenceError("conjugate_gradient: no convergence within iteration limit");
}

BoundaryData make_boundary_subsolution(const VortexProblem& prob) {
  const GridDomain& d = prob.domain();
  const double margin = 2.0 * d.spacing();
  const double R = d.half_width();
  for (const Complex& z : prob.phi().zeros()) {
    const double dist_x = std::abs(std::abs(z.real()) - R);
    const double dist_y = std::abs(std::abs(z.imag()) - R);
    const bool near_vertical = dist_x < margin && std::abs(z.imag()) <= R + margin;
    const bool near_horizontal = dist_y < margin && std::abs(z.real()) <= R + margin;
    if (near_vertical || near_horizontal)
      throw PreconditionError(fmt::format(
          "make_boundary_subsolution: zero {}{:+}i lies within 2h of the boundary",
          z.real(), z.imag()));
  }
  BoundaryData b;
  b.kind = BoundaryKind::SubsolutionProfile;
  b.values.assign(d.size(), 0.0);
  const auto& lm = prob.log_modulus();
  for (int j = 0; j < d.n(); ++j)
    for (int i = 0; i < d.n(); ++i)
      if (d.is_boundary(i, j)) {
        const int id = d.index(i, j);
        b.values[id] = (2.0 / prob.k()) * lm[id];
        if (!std::isfinite(b.values[id]))
          throw PreconditionError("make_boundary_subsolution: phi vanishes at a boundary node");
      }
  return b;
}

BoundaryData make_boundary_complete(const VortexProblem& prob, double offset) {
  if (!(offset >= 0.0) || !std::isfinite(offset))
    throw PreconditionError("make_boundary_complete: offset must be finite and >= 0");
  const GridDomain& d = prob.domain();
  BoundaryData b;
  b.kind = BoundaryKind::CompleteApprox;
  b.offset = offset;
  b.values.assign(d.size(), 0.0);
  const auto& lm = prob.log_modulus();
  for (int j = 0; j < d.n(); ++j)
    for (int i = 0; i < d.n(); ++i)
      if (d.is_boundary(i, j)) {
        const int id = d.index(i, j);
        b.values[id] = std::max((2.0 / prob.k()) * lm[id], 0.0) + offset;
      }
  return b;
}

SolveResult monotone_solve(const VortexProblem& prob, const ScalarField& w_minus,
                           const ScalarField& w_plus, const MonotoneOptions& opts) {
  const GridDomain& d = prob.domain();
  if (!(w_minus.domain() == d) || !(w_plus.domain() == d))
    throw PreconditionError("monotone_solve: bracket does not match the problem domain");
  if (!w_minus.all_finite() || !w_plus.all_finite())
    throw PreconditionError("monotone_solve: bracket must be finite");
  const int n = d.n();
  const double h = d.spacing();
  for (std::size_t id = 0; id < d.size(); ++id)
    if (w_minus.values()[id] > w_plus.values()[id] + 1e-10)
      throw PreconditionError("monotone_solve: w_minus exceeds w_plus");

  SolveReport rep;
  rep.method = "monotone";
  rep.boundary_kind = prob.boundary().kind;

  // Sign conditions of the bracket (subsolution: residual >= 0).
  std::vector<double> g(d.size(), 0.0);
  residual_norm(prob, w_minus.values(), g);
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i)
      if (g[j * n + i] < -opts.tol_weak) ++rep.band_violations;
  residual_norm(prob, w_plus.values(), g);
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i)
      if (g[j * n + i] > opts.tol_weak) ++rep.band_violations;

  std::vector<double> lambda(d.size(), 0.0), f(d.size(), 0.0), df_lo(d.size(), 0.0),
      df_hi(d.size(), 0.0);
  kernels::nonlinearity(n, prob.k(), prob.log_modulus(), w_minus.values(), f, df_lo);
  kernels::nonlinearity(n, prob.k(), prob.log_modulus(), w_plus.values(), f, df_hi);
  for (std::size_t id = 0; id < d.size(); ++id)
    lambda[id] = opts.lambda_factor * std::max(df_lo[id], df_hi[id]);

  ScalarField w = w_plus;
  apply_boundary(w, prob.boundary());
  std::vector<double> delta(d.size(), 0.0);
  double norm = residual_norm(prob, w.values(), g);
  rep.residual_history.push_back(norm);
  while (norm > opts.tol) {
    if (rep.iterations >= opts.max_outer)
      throw ConvergenceError(fmt::format(
          "monotone_solve: residual {:.3e} after {} iterations", norm, rep.iterations));
    // (-lap + Lambda) delta = lap w - F(w), i.e. the shifted update in correction form.
    std::fill(delta.begin(), delta.end(), 0.0);
    conjugate_gradient(n, h, lambda, g, delta, opts.cg);
    for (int j = 1; j < n - 1; ++j)
      for (int i = 1; i < n - 1; ++i) {
        const int id = j * n + i;
        if (delta[id] > 1e-10) ++rep.monotone_violations;
        w.values()[id] += delta[id];
      }
    if (!all_finite(w.values()))
      throw ConvergenceError("monotone_solve: iterate became non-finite");
    ++rep.iterations;
    norm = residual_norm(prob, w.values(), g);
    rep.residual_history.push_back(norm);
  }
  rep.converged = true;
  rep.final_residual = norm;
  return {std::move(w), std::move(rep)};
}

SolveResult solve_newton(const VortexProblem& prob, const ScalarField& w0,
                         const NewtonOptions& opts) {
  const GridDomain& d = prob.domain();
  if (!(w0.domain() == d))
    throw PreconditionError("solve_newton: initial field does not match the domain");
  if (!w0.all_finite()) throw PreconditionError("solve_newton: initial field must be finite");
  const int n = d.n();
  const double h = d.spacing();

  SolveReport rep;
  rep.method = "newton";
  rep.boundary_kind = prob.boundary().kind;

  ScalarField w = w0;
  apply_boundary(w, prob.boundary());
  std::vector<double> g(d.size(), 0.0), g_try(d.size(), 0.0), f(d.size(), 0.0),
      df(d.size(), 0.0), delta(d.size(), 0.0), w_try(d.size(), 0.0);
  double norm = residual_norm(prob, w.values(), g);
  rep.residual_history.push_back(norm);
  while (norm > opts.tol) {
    if (rep.iterations >= opts.max_iterations)
      throw ConvergenceError(fmt::format(
          "solve_newton: residual {:.3e} after {} iterations", norm, rep.iterations));
    kernels::nonlinearity(n, prob.k(), prob.log_modulus(), w.values(), f, df);
    std::fill(delta.begin(), delta.end(), 0.0);
    conjugate_gradient(n, h, df, g, delta, opts.cg);
    double step = 1.0;
    double norm_try = 0.0;
    int halvings = 0;
    for (;;) {
      w_try = w.values();
      kernels::axpy(n, step, delta, w_try);
      norm_try = residual_norm(prob, w_try, g_try);
      if (std::isfinite(norm_try) && norm_try < norm) break;
      if (++halvings > opts.max_halvings)
        throw ConvergenceError(fmt::format(
            "solve_newton: line search failed at residual {:.3e}", norm));
      step *= 0.5;
    }
    w.values().swap(w_try);
    g.swap(g_try);
    norm = norm_try;
    ++rep.iterations;
    rep.residual_history.push_back(norm);
  }
  rep.converged = true;
  rep.final_residual = norm;
  return {std::move(w), std::move(rep)};
}

SolveResult solve_complete(const VortexProblem& prob, const ContinuationOptions& opts) {
  const GridDomain& d = prob.domain();
  ScalarField start = clipped_profile(prob);
  SolveResult last{ScalarField(d), {}};
  std::vector<ContinuationStep> trace;
  int total_iterations = 0;
  std::vector<double> history;
  for (double m = opts.first_offset; m <= opts.last_offset + 1e-9; m += opts.step) {
    VortexProblem pm = prob.with_boundary(make_boundary_complete(prob, m));
    SolveResult r = solve_newton(pm, start, opts.newton);
    ContinuationStep s{m, -1.0, r.report.iterations, r.report.final_residual};
    total_iterations += r.report.iterations;
    history.insert(history.end(), r.report.residual_history.begin(),
                   r.report.residual_history.end());
    if (!trace.empty()) {
      double change = 0.0;
      for (int j = 0; j < d.n(); ++j)
        for (int i = 0; i < d.n(); ++i)
          if (d.in_inner_square(i, j)) change = std::max(change, std::abs(r.field(i, j) - start(i, j)));
      s.inner_change = change;
    }
    trace.push_back(s);
    if (s.inner_change >= 0.0 && s.inner_change <= opts.tol) {
      r.report.method = "continuation";
      r.report.continuation_trace = std::move(trace);
      r.report.iterations = total_iterations;
      r.report.residual_history = std::move(history);
      return r;
    }
    start = r.field;
    last = std::move(r);
  }
  // The schedule is exhausted. Where |phi| is small the discrete boundary
  // layer keeps growing like log M, so the inner square only settles
  // algebraically; accept the last solve while the changes still shrink.
  const std::size_t t = trace.size();
  if (t >= 3 && trace[t - 1].inner_change < trace[t - 2].inner_change) {
    last.report.method = "continuation";
    last.report.continuation_trace = std::move(trace);
    last.report.iterations = total_iterations;
    last.report.residual_history = std::move(history);
    last.report.stabilized = false;
    return last;
  }
  std::string msg = "solve_complete: continuation did not stabilize (domain too small?); changes:";
  for (const auto& s : trace) msg += fmt::format(" M={}:{:.2e}", s.offset, s.inner_change);
  throw ConvergenceError(msg);
}

TwoSolutions two_solutions(const EntireFunction& phi, int k, const GridDomain& domain,
                           const ContinuationOptions& opts) {
  if (phi.is_polynomial())
    throw PreconditionError("two_solutions: phi must not be a polynomial");
  const double margin = 4.0 * domain.spacing();
  for (const Complex& z : phi.zeros())
    if (domain.half_width() - std::max(std::abs(z.real()), std::abs(z.imag())) < margin)
      throw PreconditionError("two_solutions: a zero of phi is not 4h inside the domain");
  VortexProblem base(phi, k, domain);
  TwoSolutions out{solve_complete(base, opts), {ScalarField(domain), {}}};
  VortexProblem sub = base.with_boundary(make_boundary_subsolution(base));
  out.incomplete = solve_newton(sub, clipped_profile(sub), opts.newton);
  return out;
}

}  // namespace vortexlab
