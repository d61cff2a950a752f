#pragma once

// Entire functions of the form phi(z) = P(z) * exp(Q(z)) with polynomial P and Q.

#include <vector>

#include "vortexlab/errors.hpp"

namespace vortexlab {

/// Evaluates sum_j c[j] z^j by Horner's rule.
Complex polyval(const std::vector<Complex>& coeffs, Complex z);

/// Coefficients of the derivative polynomial (ascending degree).
std::vector<Complex> polyder(const std::vector<Complex>& coeffs);

/// Roots of a polynomial with ascending coefficients, by Aberth-Ehrlich
/// simultaneous iteration. Throws ConvergenceError if the residual test
/// |P(r)| <= tol * (1 + |r|)^deg is not met within max_iterations.
std::vector<Complex> polyroots(const std::vector<Complex>& coeffs,
                               double tol = 1e-10, int max_iterations = 500);

/// Expands lead * prod (z - r_i) into ascending coefficients.
std::vector<Complex> polyfromroots(const std::vector<Complex>& roots,
                                   Complex lead);

class EntireFunction {
 public:
  /// p and q are ascending-degree coefficients. Trailing exact zeros are
  /// trimmed; an empty q means Q = 0. Throws PreconditionError if P == 0.
  explicit EntireFunction(std::vector<Complex> p, std::vector<Complex> q = {});

  const std::vector<Complex>& p_coeffs() const { return p_; }
  const std::vector<Complex>& q_coeffs() const { return q_; }
  int degree() const { return static_cast<int>(p_.size()) - 1; }

  /// P(z) * exp(Q(z)). Throws OverflowError when Re Q(z) leaves the
  /// exponent range; callers that only need |phi| should use log_abs.
  Complex eval(Complex z) const;

  /// log|P(z)| + Re Q(z), or -infinity at zeros of P.
  double log_abs(Complex z) const;

  /// log|phi'(z)|, with phi' = (P' + P Q') exp(Q).
  double log_abs_derivative(Complex z) const;

  /// (2/k) log|phi(z)|. Requires k >= 2.
  double subsolution_profile(int k, Complex z) const;

  /// Roots of P with multiplicity.
  std::vector<Complex> zeros() const;

  /// True iff Q is constant. Decided on the exact coefficient representation.
  bool is_polynomial() const { return q_.size() <= 1; }

  /// c * phi.
  EntireFunction scaled(Complex c) const;

 private:
  std::vector<Complex> p_;
  std::vector<Complex> q_;
};

}  // namespace vortexlab
