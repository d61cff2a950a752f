#pragma once

// Solvers for the discretized vortex equation with Dirichlet data:
// shifted monotone (sub/supersolution) iteration, damped Newton, boundary
// continuation towards the complete solution, and the two-solution pipeline
// for non-polynomial phi.

#include <string>
#include <vector>

#include "vortexlab/grid.hpp"

namespace vortexlab {

struct ContinuationStep {
  double offset = 0.0;        // M
  double inner_change = 0.0;  // inner-square max change from the previous M; -1 for the first
  int iterations = 0;
  double final_residual = 0.0;
};

struct SolveReport {
  std::string method;
  int iterations = 0;
  std::vector<double> residual_history;  // interior max norms, one per iterate
  bool converged = false;
  BoundaryKind boundary_kind = BoundaryKind::Explicit;
  double final_residual = 0.0;
  int monotone_violations = 0;  // nodes where an iterate increased by > 1e-10
  int band_violations = 0;      // nodes where the bracket fails its sign condition
  std::vector<ContinuationStep> continuation_trace;
  bool stabilized = true;  // continuation met its tolerance before the last offset
};

struct SolveResult {
  ScalarField field;
  SolveReport report;
};

struct CgOptions {
  double rel_tol = 1e-10;
  int max_iterations = 50000;
};

/// Solves (-lap + diag) x = rhs on interior nodes with homogeneous Dirichlet
/// data by Jacobi-preconditioned conjugate gradients. `x` holds the initial
/// guess and must be zero on the boundary. Returns the iteration count;
/// throws ConvergenceError on breakdown or when max_iterations is hit.
int conjugate_gradient(int n, double h, const std::vector<double>& diag,
                       const std::vector<double>& rhs, std::vector<double>& x,
                       const CgOptions& opts = {});

struct NewtonOptions {
  double tol = 1e-10;
  int max_iterations = 200;
  int max_halvings = 40;
  CgOptions cg{};
};

struct MonotoneOptions {
  double tol = 1e-9;
  int max_outer = 10000;
  double lambda_factor = 1.1;
  double tol_weak = 1e-6;
  CgOptions cg{1e-11, 50000};
};

struct ContinuationOptions {
  double first_offset = 4.0;
  double step = 2.0;
  double last_offset = 24.0;
  double tol = 1e-6;
  NewtonOptions newton{};
};

/// Boundary values (2/k) log|phi|. Throws PreconditionError when a zero of
/// phi lies within 2h of the boundary of the square.
BoundaryData make_boundary_subsolution(const VortexProblem& prob);

/// Boundary values max((2/k) log|phi|, 0) + M, M >= 0.
BoundaryData make_boundary_complete(const VortexProblem& prob, double offset);

/// Shifted monotone iteration started from w_plus. Each step solves
/// (lap - Lambda) w' = F(w) - Lambda w with Lambda = lambda_factor times the
/// larger of dF/dw at w_minus and w_plus, node by node.
SolveResult monotone_solve(const VortexProblem& prob, const ScalarField& w_minus,
                           const ScalarField& w_plus, const MonotoneOptions& opts = {});

/// Damped Newton iteration from w0 (boundary values are replaced by the
/// problem's data).
SolveResult solve_newton(const VortexProblem& prob, const ScalarField& w0,
                         const NewtonOptions& opts = {});

/// Continuation in the offset M of COMPLETE_APPROX data until the inner
/// square stops changing by more than opts.tol. If the schedule runs out
/// while the changes are still decreasing, the last solve is returned with
/// report.stabilized = false; otherwise ConvergenceError. The boundary data
/// of `prob` is ignored.
SolveResult solve_complete(const VortexProblem& prob, const ContinuationOptions& opts = {});

struct TwoSolutions {
  SolveResult complete;    // w1
  SolveResult incomplete;  // w2, SUBSOLUTION_PROFILE boundary
};

/// Both branches of the dichotomy for non-polynomial phi with all zeros at
/// least 4h inside the domain.
TwoSolutions two_solutions(const EntireFunction& phi, int k, const GridDomain& domain,
                           const ContinuationOptions& opts = {});

}  // namespace vortexlab
