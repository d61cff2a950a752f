#pragma once

// Numerical checks of the qualitative invariants on computed solutions.
// Checks use the interior nodes of the inner half-size square.

#include <string>
#include <vector>

#include "vortexlab/grid.hpp"

namespace vortexlab {

struct InvariantReport {
  std::string name;
  bool passed = false;
  double witness_x = 0.0;
  double witness_y = 0.0;
  double witness_value = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
};

/// |phi|^2 e^{-kw} at every node, evaluated as exp(2 log|phi| - k w).
ScalarField subunity_ratio(const ScalarField& w, const VortexProblem& prob);

/// max h over the inner square; passes iff max h <= 1 + tol. The margin is
/// the strict margin 1 - max h.
InvariantReport subunity_check(const ScalarField& w, const VortexProblem& prob,
                               double tol = 1e-6);

/// Gaussian curvature (-1 + h) / 2 of e^w|dz|^2 at interior nodes, cross
/// checked against -e^{-w} lap(w) / 2. Throws ConsistencyError where the two
/// differ by more than 10 * residual_tol * e^{-w}.
ScalarField curvature_field(const ScalarField& w, const VortexProblem& prob,
                            double residual_tol = 1e-9);

/// min (w1 - w2) over the inner square; passes iff the minimum is > 0.
InvariantReport ordering_check(const ScalarField& w1, const ScalarField& w2);

enum class RayVerdict { Convergent, Divergent, Indeterminate };

const char* to_string(RayVerdict v);

struct RayProfile {
  double theta = 0.0;
  std::vector<double> r;
  std::vector<double> length;  // L(r) = int_0^r e^{w/2} ds
  RayVerdict verdict = RayVerdict::Indeterminate;
  double tail_slope = 0.0;     // d log e^{w/2} / d log r on the last dyadic window
  double limit_estimate = 0.0; // L(r_max) plus the fitted tail when convergent
};

struct ProbeOptions {
  double plateau_tol = 1e-3;
};

/// Ray lengths in the metric e^w|dz|^2 along each direction theta, by the
/// trapezoid rule at step h/2 on bilinearly interpolated w, out to the
/// inscribed radius R. Verdict from the last dyadic window [R/2, R]:
/// CONVERGENT if L grows by less than plateau_tol or the integrand decays
/// faster than r^{-1.1}, DIVERGENT if it decays no faster than r^{-0.9}.
std::vector<RayProfile> completeness_probe(const ScalarField& w,
                                           const std::vector<double>& thetas,
                                           const ProbeOptions& opts = {});

struct DiagnosticFields {
  ScalarField h;
  ScalarField tau;    // log(1 + h)
  ScalarField sigma;  // log h; NaN within 2 grid spacings of a zero of phi
  bool has_eta = false;
  ScalarField eta;    // w - w_other
  /// max over unmasked interior nodes of
  /// |lap(sigma) e^{-w} - k (e^sigma - 1)|, with lap(sigma) = -k lap(w)
  /// since log|phi| is harmonic off the zeros.
  double identity_residual = 0.0;
};

DiagnosticFields diagnostics(const ScalarField& w, const VortexProblem& prob,
                             const ScalarField* w_other = nullptr);

/// Passes iff max h over the inner square exceeds delta.
InvariantReport no_gap_check(const ScalarField& w, const VortexProblem& prob, double delta);

}  // namespace vortexlab
