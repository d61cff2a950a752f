#include "vortexlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace vortexlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Extremum {
  int i = -1;
  int j = -1;
  double value = 0.0;
};

// Extremum of u over interior nodes of the inner square; `larger` picks max.
Extremum inner_extremum(const ScalarField& u, bool larger) {
  const GridDomain& d = u.domain();
  Extremum e;
  for (int j = 0; j < d.n(); ++j)
    for (int i = 0; i < d.n(); ++i) {
      if (!d.in_inner_square(i, j)) continue;
      const double v = u(i, j);
      if (e.i < 0 || (larger ? v > e.value : v < e.value)) e = {i, j, v};
    }
  if (e.i < 0) throw PreconditionError("inner square has no interior nodes");
  return e;
}

InvariantReport make_report(std::string name, const GridDomain& d, const Extremum& e,
                            double margin, double tol, bool passed) {
  return {std::move(name), passed, d.x(e.i), d.y(e.j), e.value, margin, tol};
}

double bilinear(const ScalarField& w, double x, double y) {
  const GridDomain& d = w.domain();
  const double h = d.spacing();
  const double s = (x + d.half_width()) / h;
  const double t = (y + d.half_width()) / h;
  int i = std::clamp(static_cast<int>(std::floor(s)), 0, d.n() - 2);
  int j = std::clamp(static_cast<int>(std::floor(t)), 0, d.n() - 2);
  const double a = std::clamp(s - i, 0.0, 1.0);
  const double b = std::clamp(t - j, 0.0, 1.0);
  return (1 - a) * (1 - b) * w(i, j) + a * (1 - b) * w(i + 1, j) + (1 - a) * b * w(i, j + 1) +
         a * b * w(i + 1, j + 1);
}

// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t m = 0; m < xs.size(); ++m) {
    sx += xs[m];
    sy += ys[m];
    sxx += xs[m] * xs[m];
    sxy += xs[m] * ys[m];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

ScalarField subunity_ratio(const ScalarField& w, const VortexProblem& prob) {
  if (!(w.domain() == prob.domain())) throw PreconditionError("subunity_ratio: domain mismatch");
  const auto& lm = prob.log_modulus();
  ScalarField h(w.domain());
  for (std::size_t id = 0; id < lm.size(); ++id)
    h.values()[id] = std::exp(2.0 * lm[id] - prob.k() * w.values()[id]);
  return h;
}

InvariantReport subunity_check(const ScalarField& w, const VortexProblem& prob, double tol) {
  const ScalarField h = subunity_ratio(w, prob);
  const Extremum e = inner_extremum(h, true);
  return make_report("subunity", w.domain(), e, 1.0 - e.value, tol, e.value <= 1.0 + tol);
}

ScalarField curvature_field(const ScalarField& w, const VortexProblem& prob,
                            double residual_tol) {
  const GridDomain& d = w.domain();
  const ScalarField h = subunity_ratio(w, prob);
  const ScalarField lap = laplacian(w);
  ScalarField k(d);
  for (int j = 1; j < d.n() - 1; ++j)
    for (int i = 1; i < d.n() - 1; ++i) {
      const double algebraic = 0.5 * (h(i, j) - 1.0);
      const double emw = std::exp(-w(i, j));
      const double stencil = -0.5 * emw * lap(i, j);
      if (std::abs(algebraic - stencil) > 10.0 * residual_tol * emw)
        throw ConsistencyError(fmt::format(
            "curvature_field: algebraic {:.6e} and stencil {:.6e} curvature disagree at ({}, {})",
            algebraic, stencil, d.x(i), d.y(j)));
      k(i, j) = algebraic;
    }
  return k;
}

InvariantReport ordering_check(const ScalarField& w1, const ScalarField& w2) {
  if (!(w1.domain() == w2.domain())) throw PreconditionError("ordering_check: domain mismatch");
  ScalarField diff(w1.domain());
  for (std::size_t id = 0; id < diff.values().size(); ++id)
    diff.values()[id] = w1.values()[id] - w2.values()[id];
  const Extremum e = inner_extremum(diff, false);
  return make_report("ordering", w1.domain(), e, e.value, 0.0, e.value > 0.0);
}

const char* to_string(RayVerdict v) {
  switch (v) {
    case RayVerdict::Convergent: return "CONVERGENT";
    case RayVerdict::Divergent: return "DIVERGENT";
    case RayVerdict::Indeterminate: break;
  }
  return "INDETERMINATE";
}

std::vector<RayProfile> completeness_probe(const ScalarField& w,
                                           const std::vector<double>& thetas,
                                           const ProbeOptions& opts) {
  const GridDomain& d = w.domain();
  const double step = 0.5 * d.spacing();
  const int steps = static_cast<int>(std::lround(d.half_width() / step));
  std::vector<RayProfile> out;
  for (double theta : thetas) {
    RayProfile p;
    p.theta = theta;
    const double c = std::cos(theta), s = std::sin(theta);
    std::vector<double> g(steps + 1);
    for (int m = 0; m <= steps; ++m) {
      const double r = m * step;
      g[m] = std::exp(0.5 * bilinear(w, r * c, r * s));
    }
    p.r.resize(steps + 1);
    p.length.resize(steps + 1);
    for (int m = 0; m <= steps; ++m) {
      p.r[m] = m * step;
      p.length[m] = m == 0 ? 0.0 : p.length[m - 1] + 0.5 * step * (g[m - 1] + g[m]);
    }

    const int half = steps / 2;
    const double growth = p.length[steps] - p.length[half];
    std::vector<double> lr, lg, rr;
    for (int m = std::max(half, 1); m <= steps; ++m) {
      lr.push_back(std::log(p.r[m]));
      rr.push_back(p.r[m]);
      lg.push_back(std::log(g[m]));
    }
    p.tail_slope = lr.size() >= 2 ? fit_slope(lr, lg) : 0.0;
    p.limit_estimate = p.length[steps];
    if (growth < opts.plateau_tol) {
      p.verdict = RayVerdict::Convergent;
    } else if (!std::isfinite(p.tail_slope)) {
      p.verdict = RayVerdict::Indeterminate;
    } else if (p.tail_slope >= -0.9) {
      p.verdict = RayVerdict::Divergent;
    } else if (p.tail_slope <= -1.1) {
      p.verdict = RayVerdict::Convergent;
      // Tail beyond R from whichever of the power and exponential models
      // fits the last window better.
      const double b = fit_slope(rr, lg);
      auto misfit = [&](const std::vector<double>& xs, double slope) {
        const double x0 = xs.back(), y0 = lg.back();
        double e = 0.0;
        for (std::size_t m = 0; m < xs.size(); ++m)
          e = std::max(e, std::abs(lg[m] - (y0 + slope * (xs[m] - x0))));
        return e;
      };
      const double rmax = p.r[steps], gmax = g[steps];
      if (b < 0.0 && misfit(rr, b) <= misfit(lr, p.tail_slope))
        p.limit_estimate += gmax / -b;
      else
        p.limit_estimate += gmax * rmax / (-p.tail_slope - 1.0);
    }
    out.push_back(std::move(p));
  }
  return out;
}

DiagnosticFields diagnostics(const ScalarField& w, const VortexProblem& prob,
                             const ScalarField* w_other) {
  const GridDomain& d = w.domain();
  DiagnosticFields df{subunity_ratio(w, prob), ScalarField(d), ScalarField(d), false,
                      ScalarField(d), 0.0};
  const auto& lm = prob.log_modulus();
  const std::vector<Complex> zeros = prob.phi().zeros();
  const double mask = 2.0 * d.spacing();
  const ScalarField lap = laplacian(w);
  for (int j = 0; j < d.n(); ++j)
    for (int i = 0; i < d.n(); ++i) {
      const int id = d.index(i, j);
      df.tau.values()[id] = std::log1p(df.h.values()[id]);
      bool masked = false;
      for (const Complex& z0 : zeros)
        if (std::abs(d.node(i, j) - z0) <= mask) masked = true;
      df.sigma.values()[id] = masked ? kNaN : 2.0 * lm[id] - prob.k() * w.values()[id];
      if (masked || d.is_boundary(i, j)) continue;
      const double lap_sigma = -prob.k() * lap.values()[id];
      const double id_res = std::abs(lap_sigma * std::exp(-w.values()[id]) -
                                     prob.k() * std::expm1(df.sigma.values()[id]));
      df.identity_residual = std::max(df.identity_residual, id_res);
    }
  if (w_other != nullptr) {
    if (!(w_other->domain() == d)) throw PreconditionError("diagnostics: domain mismatch");
    df.has_eta = true;
    for (std::size_t id = 0; id < d.size(); ++id)
      df.eta.values()[id] = w.values()[id] - w_other->values()[id];
  }
  return df;
}

InvariantReport no_gap_check(const ScalarField& w, const VortexProblem& prob, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("no_gap_check: delta must lie in (0, 1)");
  const ScalarField h = subunity_ratio(w, prob);
  const Extremum e = inner_extremum(h, true);
  return make_report("no_gap", w.domain(), e, e.value - delta, 0.0, e.value > delta);
}

}  // namespace vortexlab
