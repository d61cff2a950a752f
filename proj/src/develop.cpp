#include "vortexlab/develop.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

namespace vortexlab {

namespace {

constexpr Complex kI(0.0, 1.0);

// Coefficient matrix of a frame system, at most 4 x 4, row-major.
struct Mat {
  std::array<Complex, 16> a{};
  Complex& operator()(int r, int c) { return a[r * 4 + c]; }
  Complex operator()(int r, int c) const { return a[r * 4 + c]; }
};

// Stacked frame: `dim` rows, each a vector in C^3.
struct State {
  int dim = 0;
  std::array<Complex, 12> a{};
  Complex& operator()(int r, int c) { return a[r * 3 + c]; }
  Complex operator()(int r, int c) const { return a[r * 3 + c]; }
};

State mul(const Mat& m, double s, const State& x) {
  State y;
  y.dim = x.dim;
  for (int r = 0; r < x.dim; ++r)
    for (int c = 0; c < 3; ++c) {
      Complex acc(0.0, 0.0);
      for (int k = 0; k < x.dim; ++k) acc += m(r, k) * x(k, c);
      y(r, c) = s * acc;
    }
  return y;
}

State add(const State& a, const State& b) {
  State y = a;
  for (int e = 0; e < a.dim * 3; ++e) y.a[e] += b.a[e];
  return y;
}

// One classical RK4 step of F' = C F over a signed step with C frozen at the
// edge midpoint; for a constant linear system this is the degree-4 Taylor
// polynomial of exp(step * C), evaluated in Horner form.
State rk4_step(const Mat& c, double step, const State& f) {
  State acc = add(f, mul(c, step / 4.0, f));
  acc = add(f, mul(c, step / 3.0, acc));
  acc = add(f, mul(c, step / 2.0, acc));
  return add(f, mul(c, step, acc));
}

double max_entry(const State& f) {
  double m = 0.0;
  for (int e = 0; e < f.dim * 3; ++e) m = std::max(m, std::abs(f.a[e]));
  return m;
}

double minkowski(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}

// Derivative of a nodal field along one grid axis: centred in the interior,
// one-sided second order at the ends.
ScalarField axis_derivative(const ScalarField& v, bool along_x) {
  const GridDomain& d = v.domain();
  const int n = d.n();
  const double h = d.spacing();
  ScalarField out(d);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      auto at = [&](int s) { return along_x ? v(s, j) : v(i, s); };
      const int s = along_x ? i : j;
      double dv;
      if (s == 0)
        dv = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
      else if (s == n - 1)
        dv = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
      else
        dv = (at(s + 1) - at(s - 1)) / (2.0 * h);
      out(i, j) = dv;
    }
  return out;
}

class FrameCoefficients {
 public:
  explicit FrameCoefficients(const NormalizedSolution& sol)
      : sol_(sol), vx_(axis_derivative(sol.w, true)), vy_(axis_derivative(sol.w, false)) {}

  int dim() const { return sol_.mode == GeometricMode::WangK3 ? 3 : 4; }

  // Edge (i, j) -> (i + 1, j), solution-grid indices.
  Mat along_x(int i, int j) const {
    const GridDomain& d = sol_.w.domain();
    const double v = 0.5 * (sol_.w(i, j) + sol_.w(i + 1, j));
    const double vx = (sol_.w(i + 1, j) - sol_.w(i, j)) / d.spacing();
    const double vy = 0.5 * (vy_(i, j) + vy_(i + 1, j));
    const Complex z(d.x(i) + 0.5 * d.spacing(), d.y(j));
    return assemble(z, v, vx, vy, true);
  }

  // Edge (i, j) -> (i, j + 1).
  Mat along_y(int i, int j) const {
    const GridDomain& d = sol_.w.domain();
    const double v = 0.5 * (sol_.w(i, j) + sol_.w(i, j + 1));
    const double vy = (sol_.w(i, j + 1) - sol_.w(i, j)) / d.spacing();
    const double vx = 0.5 * (vx_(i, j) + vx_(i, j + 1));
    const Complex z(d.x(i), d.y(j) + 0.5 * d.spacing());
    return assemble(z, v, vx, vy, false);
  }

 private:
  Mat assemble(Complex z, double v, double vx, double vy, bool x_dir) const {
    const Complex diff = sol_.differential.eval(z);
    Mat c;
    if (sol_.mode == GeometricMode::WangK3) {
      // d/dz and d/dzbar of (f, f_z, f_zbar); d/dx = A + B, d/dy = i (A - B).
      const Complex vz = 0.5 * Complex(vx, -vy);
      const Complex vzb = std::conj(vz);
      const Complex ue = diff * std::exp(-v);
      const double half_ev = 0.5 * std::exp(v);
      Mat a, b;
      a(0, 1) = 1.0;
      a(1, 1) = vz;
      a(1, 2) = ue;
      a(2, 0) = half_ev;
      b(0, 2) = 1.0;
      b(1, 0) = half_ev;
      b(2, 1) = std::conj(ue);
      b(2, 2) = vzb;
      for (int e = 0; e < 16; ++e) c.a[e] = x_dir ? a.a[e] + b.a[e] : kI * (a.a[e] - b.a[e]);
      return c;
    }
    // Gauss-Weingarten system of (f, e1, e2, N) with f_x = e^v e1, f_y = e^v e2
    // and I = e^{2v} (dx^2 + dy^2); the frame block stays in so(2,1).
    const double ev = std::exp(v);
    const double emv = 1.0 / ev;
    const double h11 = ev * ev + diff.real();
    const double h22 = ev * ev - diff.real();
    const double h12 = -diff.imag();
    if (x_dir) {
      c(0, 1) = ev;
      c(1, 2) = -vy;
      c(1, 3) = h11 * emv;
      c(2, 1) = vy;
      c(2, 3) = h12 * emv;
      c(3, 1) = h11 * emv;
      c(3, 2) = h12 * emv;
    } else {
      c(0, 2) = ev;
      c(1, 2) = vx;
      c(1, 3) = h12 * emv;
      c(2, 1) = -vx;
      c(2, 3) = h22 * emv;
      c(3, 1) = h12 * emv;
      c(3, 2) = h22 * emv;
    }
    return c;
  }

  const NormalizedSolution& sol_;
  ScalarField vx_;
  ScalarField vy_;
};

struct Window {
  GridDomain domain;
  int offset;
  int half_nodes;
};

Window make_window(const GridDomain& d, double half_width) {
  if (d.n() % 2 == 0) throw PreconditionError("develop: the origin must be a grid node (odd n)");
  const int center = (d.n() - 1) / 2;
  int hm = center;
  if (half_width > 0.0) {
    hm = static_cast<int>(std::lround(half_width / d.spacing()));
    if (hm < 1 || hm > center) throw PreconditionError("develop: window does not fit the grid");
  }
  return {GridDomain(hm * d.spacing(), 2 * hm + 1), center - hm, hm};
}

// Frames at every window node by spanning-tree propagation from the origin.
std::vector<State> propagate(const FrameCoefficients& coeff, const Window& win,
                             const State& origin) {
  const int m = win.domain.n();
  const int o = win.offset;
  const int c = win.half_nodes;
  const double h = win.domain.spacing();
  std::vector<State> f(static_cast<std::size_t>(m) * m);
  auto at = [&](int a, int b) -> State& { return f[static_cast<std::size_t>(b) * m + a]; };
  at(c, c) = origin;
  for (int a = c + 1; a < m; ++a) at(a, c) = rk4_step(coeff.along_x(o + a - 1, o + c), h, at(a - 1, c));
  for (int a = c - 1; a >= 0; --a) at(a, c) = rk4_step(coeff.along_x(o + a, o + c), -h, at(a + 1, c));
  for (int a = 0; a < m; ++a) {
    for (int b = c + 1; b < m; ++b) at(a, b) = rk4_step(coeff.along_y(o + a, o + b - 1), h, at(a, b - 1));
    for (int b = c - 1; b >= 0; --b) at(a, b) = rk4_step(coeff.along_y(o + a, o + b), -h, at(a, b + 1));
  }
  for (const State& s : f)
    for (int e = 0; e < s.dim * 3; ++e)
      if (!std::isfinite(s.a[e].real()) || !std::isfinite(s.a[e].imag()))
        throw ConsistencyError("develop: frame propagation produced non-finite values");
  return f;
}

State stored_state(const DevelopedSurface& s, const NormalizedSolution& sol, std::size_t id) {
  State f;
  if (s.mode == GeometricMode::WangK3) {
    f.dim = 3;
    for (int c = 0; c < 3; ++c) {
      f(0, c) = s.positions[id][c];
      f(1, c) = s.f_z[id][c];
      f(2, c) = s.f_zbar[id][c];
    }
  } else {
    f.dim = 4;
    const int m = s.window.n();
    const double emv = std::exp(-sol.w(s.offset + static_cast<int>(id % m),
                                       s.offset + static_cast<int>(id / m)));
    for (int c = 0; c < 3; ++c) {
      f(0, c) = s.positions[id][c];
      f(1, c) = emv * (s.f_z[id][c] + s.f_zbar[id][c]).real();
      f(2, c) = emv * (kI * (s.f_z[id][c] - s.f_zbar[id][c])).real();
      f(3, c) = s.normals[id][c];
    }
  }
  return f;
}

std::vector<double> sampled_log_abs(const EntireFunction& f, const GridDomain& d) {
  std::vector<double> out(d.size());
  for (int j = 0; j < d.n(); ++j)
    for (int i = 0; i < d.n(); ++i) out[d.index(i, j)] = f.log_abs(d.node(i, j));
  return out;
}

}  // namespace

const char* to_string(GeometricMode mode) {
  return mode == GeometricMode::WangK3 ? "WANG_K3" : "HARMONIC_K2";
}

VortexProblem problem_for_mode(const EntireFunction& differential, GeometricMode mode,
                               const GridDomain& domain, BoundaryData boundary) {
  if (mode == GeometricMode::WangK3)
    return VortexProblem(differential.scaled(4.0), 3, domain, std::move(boundary));
  return VortexProblem(differential.scaled(2.0), 2, domain, std::move(boundary));
}

NormalizedSolution normalize(const ScalarField& w_eq1, const VortexProblem& prob,
                             GeometricMode mode, double solve_tol) {
  if (!(w_eq1.domain() == prob.domain()))
    throw PreconditionError("normalize: field and problem domains differ");
  const int want_k = mode == GeometricMode::WangK3 ? 3 : 2;
  if (prob.k() != want_k)
    throw PreconditionError(fmt::format("normalize: {} needs k = {}", to_string(mode), want_k));
  ScalarField v(w_eq1.domain());
  if (mode == GeometricMode::WangK3) {
    const double shift = std::log(2.0);
    for (std::size_t id = 0; id < v.values().size(); ++id) v.values()[id] = w_eq1.values()[id] - shift;
  } else {
    const double shift = 0.5 * std::log(2.0);
    for (std::size_t id = 0; id < v.values().size(); ++id)
      v.values()[id] = 0.5 * w_eq1.values()[id] - shift;
  }
  NormalizedSolution sol{std::move(v), mode,
                         prob.phi().scaled(mode == GeometricMode::WangK3 ? 0.25 : 0.5)};
  const double res = interior_max_norm(normalized_residual(sol));
  if (!(res <= 10.0 * solve_tol))
    throw ConsistencyError(fmt::format(
        "normalize: normalized residual {:.3e} exceeds {:.1e}", res, 10.0 * solve_tol));
  return sol;
}

ScalarField normalized_residual(const NormalizedSolution& sol) {
  const GridDomain& d = sol.w.domain();
  const std::vector<double> lm = sampled_log_abs(sol.differential, d);
  ScalarField out = laplacian(sol.w);
  const auto& v = sol.w.values();
  const double log4 = std::log(4.0);
  for (int j = 1; j < d.n() - 1; ++j)
    for (int i = 1; i < d.n() - 1; ++i) {
      const int id = d.index(i, j);
      if (sol.mode == GeometricMode::WangK3)
        out.values()[id] += -2.0 * std::exp(v[id]) + std::exp(log4 + 2.0 * lm[id] - 2.0 * v[id]);
      else
        out.values()[id] += -std::exp(2.0 * v[id]) + std::exp(2.0 * lm[id] - 2.0 * v[id]);
    }
  return out;
}

ScalarField normalized_curvature(const NormalizedSolution& sol) {
  const GridDomain& d = sol.w.domain();
  const std::vector<double> lm = sampled_log_abs(sol.differential, d);
  ScalarField k(d);
  const double log2 = std::log(2.0);
  for (std::size_t id = 0; id < d.size(); ++id) {
    const double v = sol.w.values()[id];
    k.values()[id] = sol.mode == GeometricMode::WangK3
                         ? -1.0 + std::exp(log2 + 2.0 * lm[id] - 3.0 * v)
                         : -1.0 + std::exp(2.0 * lm[id] - 4.0 * v);
  }
  return k;
}

ScalarField gauss_jacobian(const NormalizedSolution& sol) {
  if (sol.mode != GeometricMode::HarmonicK2)
    throw PreconditionError("gauss_jacobian: needs a HARMONIC_K2 solution");
  const GridDomain& d = sol.w.domain();
  const std::vector<double> lq = sampled_log_abs(sol.differential, d);
  ScalarField jac(d);
  for (std::size_t id = 0; id < d.size(); ++id) {
    const double v = sol.w.values()[id];
    jac.values()[id] = std::exp(2.0 * v) * (1.0 - std::exp(2.0 * lq[id] - 4.0 * v));
  }
  return jac;
}

DevelopedSurface develop_affine_sphere(const NormalizedSolution& sol, const DevelopOptions& opts) {
  if (sol.mode != GeometricMode::WangK3)
    throw PreconditionError("develop_affine_sphere: needs a WANG_K3 solution");
  const Window win = make_window(sol.w.domain(), opts.window_half_width);
  const FrameCoefficients coeff(sol);

  // Gauge at the origin: f = e3, f_x = a e1, f_y = a e2 with a = e^{w(0)/2},
  // so det(f, f_x, f_y) = e^{w(0)} matches the Blaschke volume.
  const int c = (sol.w.domain().n() - 1) / 2;
  const double a = std::exp(0.5 * sol.w(c, c));
  State origin;
  origin.dim = 3;
  origin(0, 2) = 1.0;
  origin(1, 0) = 0.5 * a;
  origin(1, 1) = -0.5 * kI * a;
  origin(2, 0) = 0.5 * a;
  origin(2, 1) = 0.5 * kI * a;

  const std::vector<State> frames = propagate(coeff, win, origin);
  DevelopedSurface s{GeometricMode::WangK3, win.domain, win.offset, {}, {}, {}, {}, 0.0};
  s.positions.resize(frames.size());
  s.f_z.resize(frames.size());
  s.f_zbar.resize(frames.size());
  for (std::size_t id = 0; id < frames.size(); ++id)
    for (int k = 0; k < 3; ++k) {
      s.positions[id][k] = frames[id](0, k).real();
      s.max_imag_position = std::max(s.max_imag_position, std::abs(frames[id](0, k).imag()));
      s.f_z[id][k] = frames[id](1, k);
      s.f_zbar[id][k] = frames[id](2, k);
    }
  if (s.max_imag_position > 1e-6)
    throw ConsistencyError(fmt::format(
        "develop_affine_sphere: immersion is not real (max |Im f| = {:.3e})", s.max_imag_position));
  return s;
}

std::pair<DevelopedSurface, GaussMapField> develop_cmc(const NormalizedSolution& sol,
                                                       const DevelopOptions& opts) {
  if (sol.mode != GeometricMode::HarmonicK2)
    throw PreconditionError("develop_cmc: needs a HARMONIC_K2 solution");
  const GridDomain& d = sol.w.domain();
  const Window win = make_window(d, opts.window_half_width);
  const FrameCoefficients coeff(sol);

  // f = 0, f_x = e^{w(0)} e1, f_y = e^{w(0)} e2, N = e3.
  State origin;
  origin.dim = 4;
  origin(1, 0) = 1.0;
  origin(2, 1) = 1.0;
  origin(3, 2) = 1.0;

  const std::vector<State> frames = propagate(coeff, win, origin);
  const std::size_t count = frames.size();
  DevelopedSurface s{GeometricMode::HarmonicK2, win.domain, win.offset, {}, {}, {}, {}, 0.0};
  s.positions.resize(count);
  s.f_z.resize(count);
  s.f_zbar.resize(count);
  s.normals.resize(count);
  const int m = win.domain.n();
  for (std::size_t id = 0; id < count; ++id) {
    const double ev = std::exp(sol.w(win.offset + static_cast<int>(id % m),
                                      win.offset + static_cast<int>(id / m)));
    for (int k = 0; k < 3; ++k) {
      const double fx = ev * frames[id](1, k).real();
      const double fy = ev * frames[id](2, k).real();
      s.positions[id][k] = frames[id](0, k).real();
      s.f_z[id][k] = 0.5 * Complex(fx, -fy);
      s.f_zbar[id][k] = 0.5 * Complex(fx, fy);
      s.normals[id][k] = frames[id](3, k).real();
    }
    // Relative to N3^2: the cancellation in <N,N> loses digits as N moves out
    // on the hyperboloid.
    const double n3 = s.normals[id][2];
    const double drift = std::abs(minkowski(s.normals[id], s.normals[id]) + 1.0) / std::max(1.0, n3 * n3);
    if (drift > 1e-5)
      throw ConsistencyError(fmt::format("develop_cmc: normal drift {:.3e} exceeds 1e-5", drift));
  }

  const ScalarField jac = gauss_jacobian(sol);
  GaussMapField g{win.domain, s.normals, ScalarField(win.domain), 0.0};
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a) g.jacobian(a, b) = jac(win.offset + a, win.offset + b);
  const double h = win.domain.spacing();
  for (int b = 1; b < m - 1; ++b)
    for (int a = 1; a < m - 1; ++a) {
      const auto& n0 = s.normals[static_cast<std::size_t>(b) * m + a];
      Vec3 nx, ny;
      for (int k = 0; k < 3; ++k) {
        nx[k] = (s.normals[static_cast<std::size_t>(b) * m + a + 1][k] -
                 s.normals[static_cast<std::size_t>(b) * m + a - 1][k]) / (2.0 * h);
        ny[k] = (s.normals[static_cast<std::size_t>(b + 1) * m + a][k] -
                 s.normals[static_cast<std::size_t>(b - 1) * m + a][k]) / (2.0 * h);
      }
      const double det = n0[0] * (nx[1] * ny[2] - nx[2] * ny[1]) -
                         n0[1] * (nx[0] * ny[2] - nx[2] * ny[0]) +
                         n0[2] * (nx[0] * ny[1] - nx[1] * ny[0]);
      const double jac = g.jacobian(a, b);
      g.jacobian_fd_discrepancy =
          std::max(g.jacobian_fd_discrepancy, std::abs(jac - det) / std::max(1.0, std::abs(jac)));
    }
  return {std::move(s), std::move(g)};
}

double holonomy_defect(const DevelopedSurface& surface, const NormalizedSolution& sol,
                       const HolonomyOptions& opts) {
  if (surface.mode != sol.mode) throw PreconditionError("holonomy_defect: mode mismatch");
  const FrameCoefficients coeff(sol);
  const GridDomain& win = surface.window;
  const int m = win.n();
  const int o = surface.offset;
  const double h = win.spacing();
  const double lim = 0.5 * win.half_width() * (1.0 + 1e-12);
  double worst = 0.0;
  for (int b = 0; b + 1 < m; ++b)
    for (int a = 0; a + 1 < m; ++a) {
      if (opts.inner_only &&
          (std::abs(win.x(a)) > lim || std::abs(win.x(a + 1)) > lim ||
           std::abs(win.y(b)) > lim || std::abs(win.y(b + 1)) > lim))
        continue;
      const State f = stored_state(surface, sol, static_cast<std::size_t>(b) * m + a);
      const State xy = rk4_step(coeff.along_y(o + a + 1, o + b), h,
                                rk4_step(coeff.along_x(o + a, o + b), h, f));
      const State yx = rk4_step(coeff.along_x(o + a, o + b + 1), h,
                                rk4_step(coeff.along_y(o + a, o + b), h, f));
      double diff = 0.0;
      for (int e = 0; e < f.dim * 3; ++e) diff = std::max(diff, std::abs(xy.a[e] - yx.a[e]));
      double d = diff / max_entry(f);
      if (opts.per_unit_area) d /= h * h;
      worst = std::max(worst, d);
    }
  return worst;
}

ScalarField reconstruct_metric(const DevelopedSurface& surface, MetricSource source) {
  const GridDomain& win = surface.window;
  const int m = win.n();
  const double h = win.spacing();
  ScalarField out(win);
  // Tangent vectors of the immersion by second-order differences of positions.
  auto tangent = [&](int a, int b, bool along_x) {
    auto p = [&](int s) -> const Vec3& {
      return along_x ? surface.positions[static_cast<std::size_t>(b) * m + s]
                     : surface.positions[static_cast<std::size_t>(s) * m + a];
    };
    const int s = along_x ? a : b;
    Vec3 t;
    for (int k = 0; k < 3; ++k) {
      if (s == 0)
        t[k] = (-3.0 * p(0)[k] + 4.0 * p(1)[k] - p(2)[k]) / (2.0 * h);
      else if (s == m - 1)
        t[k] = (3.0 * p(m - 1)[k] - 4.0 * p(m - 2)[k] + p(m - 3)[k]) / (2.0 * h);
      else
        t[k] = (p(s + 1)[k] - p(s - 1)[k]) / (2.0 * h);
    }
    return t;
  };
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a) {
      const std::size_t id = static_cast<std::size_t>(b) * m + a;
      CVec3 fx, fy;
      if (source == MetricSource::Frames) {
        for (int k = 0; k < 3; ++k) {
          fx[k] = surface.f_z[id][k] + surface.f_zbar[id][k];
          fy[k] = kI * (surface.f_z[id][k] - surface.f_zbar[id][k]);
        }
      } else {
        const Vec3 tx = tangent(a, b, true);
        const Vec3 ty = tangent(a, b, false);
        for (int k = 0; k < 3; ++k) {
          fx[k] = tx[k];
          fy[k] = ty[k];
        }
      }
      if (surface.mode == GeometricMode::WangK3) {
        const Vec3& f = surface.positions[id];
        const Complex det = f[0] * (fx[1] * fy[2] - fx[2] * fy[1]) -
                            f[1] * (fx[0] * fy[2] - fx[2] * fy[0]) +
                            f[2] * (fx[0] * fy[1] - fx[1] * fy[0]);
        out(a, b) = std::log(det.real());
      } else {
        const Vec3 ax{fx[0].real(), fx[1].real(), fx[2].real()};
        const Vec3 ay{fy[0].real(), fy[1].real(), fy[2].real()};
        out(a, b) = std::log(0.5 * (minkowski(ax, ax) + minkowski(ay, ay)));
      }
    }
  return out;
}

std::vector<std::pair<double, double>> bounding_box_growth(const DevelopedSurface& surface,
                                                           int stride) {
  const GridDomain& win = surface.window;
  const int m = win.n();
  const int c = (m - 1) / 2;
  std::vector<std::pair<double, double>> out;
  for (int r = stride; r <= c; r += stride) {
    Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (int b = c - r; b <= c + r; ++b)
      for (int a = c - r; a <= c + r; ++a) {
        const Vec3& p = surface.positions[static_cast<std::size_t>(b) * m + a];
        for (int k = 0; k < 3; ++k) {
          lo[k] = std::min(lo[k], p[k]);
          hi[k] = std::max(hi[k], p[k]);
        }
      }
    out.emplace_back(r * win.spacing(),
                     std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]}));
  }
  return out;
}

void export_mesh(const DevelopedSurface& surface, const std::filesystem::path& path) {
  for (const Vec3& p : surface.positions)
    for (double c : p)
      if (!std::isfinite(c)) throw PreconditionError("export_mesh: non-finite position");
  std::ofstream out(path);
  if (!out) throw Error("export_mesh: cannot open " + path.string());
  const int m = surface.window.n();
  for (const Vec3& p : surface.positions)
    out << fmt::format("v {:.9g} {:.9g} {:.9g}\n", p[0], p[1], p[2]);
  for (int b = 0; b + 1 < m; ++b)
    for (int a = 0; a + 1 < m; ++a) {
      const int v00 = b * m + a + 1, v10 = v00 + 1, v01 = v00 + m, v11 = v01 + 1;
      out << fmt::format("f {} {} {}\nf {} {} {}\n", v00, v10, v11, v00, v11, v01);
    }
  if (!out) throw Error("export_mesh: write failed for " + path.string());
}

void write_gauss_csv(const GaussMapField& gauss, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("write_gauss_csv: cannot open " + path.string());
  out << "x,y,N1,N2,N3\n";
  const GridDomain& w = gauss.window;
  for (int b = 0; b < w.n(); ++b)
    for (int a = 0; a < w.n(); ++a) {
      const Vec3& p = gauss.points[static_cast<std::size_t>(b) * w.n() + a];
      out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", w.x(a), w.y(b), p[0],
                         p[1], p[2]);
    }
  if (!out) throw Error("write_gauss_csv: write failed for " + path.string());
}

}  // namespace vortexlab
