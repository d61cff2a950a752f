#include "vortexlab/holo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace vortexlab {

namespace {

void trim(std::vector<Complex>& c) {
  while (!c.empty() && c.back() == Complex(0.0, 0.0)) c.pop_back();
}

}  // namespace

Complex polyval(const std::vector<Complex>& coeffs, Complex z) {
  Complex acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> polyder(const std::vector<Complex>& coeffs) {
  if (coeffs.size() <= 1) return {};
  std::vector<Complex> d(coeffs.size() - 1);
  for (std::size_t j = 1; j < coeffs.size(); ++j)
    d[j - 1] = coeffs[j] * static_cast<double>(j);
  return d;
}

std::vector<Complex> polyfromroots(const std::vector<Complex>& roots,
                                   Complex lead) {
  std::vector<Complex> c{lead};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0, 0.0));
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= r * c[j];
    }
    c = std::move(next);
  }
  return c;
}

std::vector<Complex> polyroots(const std::vector<Complex>& coeffs, double tol,
                               int max_iterations) {
  std::vector<Complex> c = coeffs;
  trim(c);
  if (c.empty()) throw PreconditionError("polyroots: zero polynomial");
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg == 0) return {};

  // Work with the monic polynomial.
  const Complex lead = c.back();
  for (Complex& a : c) a /= lead;
  const std::vector<Complex> dc = polyder(c);

  // Initial guesses on a circle whose radius is the geometric mean of the
  // root moduli, rotated off the axes so symmetric inputs do not stall.
  double radius = std::pow(std::abs(c.front()), 1.0 / deg);
  if (!(radius > 0.0)) radius = 1.0;
  // Fujiwara bound keeps the circle inside the root annulus for inputs with
  // zero constant term.
  double fujiwara = 0.0;
  for (int j = 0; j < deg; ++j)
    fujiwara = std::max(fujiwara, std::pow(std::abs(c[j]), 1.0 / (deg - j)));
  if (std::abs(c.front()) == 0.0) radius = std::max(0.5 * fujiwara, 1e-3);
  std::vector<Complex> z(deg);
  for (int i = 0; i < deg; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / deg + 0.4;
    z[i] = std::polar(radius * (1.0 + 0.01 * i), theta);
  }

  auto residual_ok = [&](Complex r) {
    return std::abs(polyval(c, r)) <= tol * std::pow(1.0 + std::abs(r), deg);
  };

  for (int it = 0; it < max_iterations; ++it) {
    double max_step = 0.0;
    for (int i = 0; i < deg; ++i) {
      const Complex p = polyval(c, z[i]);
      if (p == Complex(0.0, 0.0)) continue;
      const Complex dp = polyval(dc, z[i]);
      Complex repulsion(0.0, 0.0);
      for (int j = 0; j < deg; ++j)
        if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
      const Complex ratio = p / dp;
      Complex step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
        step = Complex(1e-3, 1e-3) * (1.0 + std::abs(z[i]));
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (max_step <= 4.0 * std::numeric_limits<double>::epsilon()) break;
    if (it + 1 == max_iterations) break;
  }
  for (const Complex& r : z)
    if (!residual_ok(r))
      throw ConvergenceError(
          "polyroots: Aberth-Ehrlich iteration did not converge (ill-conditioned input)");
  std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  return z;
}

EntireFunction::EntireFunction(std::vector<Complex> p, std::vector<Complex> q)
    : p_(std::move(p)), q_(std::move(q)) {
  trim(p_);
  trim(q_);
  if (p_.empty()) throw PreconditionError("EntireFunction: P is the zero polynomial");
  if (q_.empty()) q_.push_back(Complex(0.0, 0.0));
}

Complex EntireFunction::eval(Complex z) const {
  const Complex qz = polyval(q_, z);
  if (qz.real() > 709.0)
    throw OverflowError("EntireFunction::eval: exp(Q(z)) overflows; use log_abs");
  return polyval(p_, z) * std::exp(qz);
}

double EntireFunction::log_abs(Complex z) const {
  const double a = std::abs(polyval(p_, z));
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(a) + polyval(q_, z).real();
}

double EntireFunction::log_abs_derivative(Complex z) const {
  const Complex d = polyval(polyder(p_), z) + polyval(p_, z) * polyval(polyder(q_), z);
  const double a = std::abs(d);
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(a) + polyval(q_, z).real();
}

double EntireFunction::subsolution_profile(int k, Complex z) const {
  if (k < 2) throw PreconditionError("subsolution_profile: k must be >= 2");
  return (2.0 / k) * log_abs(z);
}

std::vector<Complex> EntireFunction::zeros() const { return polyroots(p_); }

EntireFunction EntireFunction::scaled(Complex c) const {
  std::vector<Complex> p = p_;
  for (Complex& a : p) a *= c;
  return EntireFunction(std::move(p), q_);
}

}  // namespace vortexlab
