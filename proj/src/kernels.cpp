#include "vortexlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vortexlab/parallel.hpp"

namespace vortexlab::kernels {

namespace {

inline double stencil(const double* u, int id, int n) {
  return u[id + 1] + u[id - 1] + u[id + n] + u[id - n] - 4.0 * u[id];
}

void zero_boundary(int n, std::span<double> out) {
  for (int i = 0; i < n; ++i) {
    out[i] = 0.0;
    out[(n - 1) * n + i] = 0.0;
    out[i * n] = 0.0;
    out[i * n + n - 1] = 0.0;
  }
}

}  // namespace

void laplacian(int n, double h, std::span<const double> u, std::span<double> out) {
  const double inv_h2 = 1.0 / (h * h);
  const double* up = u.data();
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const int id = j * n + i;
      out[id] = stencil(up, id, n) * inv_h2;
    }
  zero_boundary(n, out);
}

void vortex_residual(int n, double h, int k, std::span<const double> logmod,
                     std::span<const double> w, std::span<double> out) {
  const double inv_h2 = 1.0 / (h * h);
  const double* wp = w.data();
  const double km1 = k - 1;
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const int id = j * n + i;
      out[id] = stencil(wp, id, n) * inv_h2 - std::exp(wp[id]) +
                std::exp(2.0 * logmod[id] - km1 * wp[id]);
    }
  zero_boundary(n, out);
}

void nonlinearity(int n, int k, std::span<const double> logmod,
                  std::span<const double> w, std::span<double> f,
                  std::span<double> df) {
  const double km1 = k - 1;
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const int id = j * n + i;
      const double a = std::exp(w[id]);
      const double b = std::exp(2.0 * logmod[id] - km1 * w[id]);
      f[id] = a - b;
      df[id] = a + km1 * b;
    }
}

void shifted_operator(int n, double h, std::span<const double> diag,
                      std::span<const double> x, std::span<double> out) {
  const double inv_h2 = 1.0 / (h * h);
  const double* xp = x.data();
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const int id = j * n + i;
      out[id] = -stencil(xp, id, n) * inv_h2 + diag[id] * xp[id];
    }
}

double dot(int n, std::span<const double> a, std::span<const double> b) {
  std::vector<double> rows(n, 0.0);
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
  for (int j = 1; j < n - 1; ++j) {
    double s = 0.0;
    for (int i = 1; i < n - 1; ++i) s += a[j * n + i] * b[j * n + i];
    rows[j] = s;
  }
  double total = 0.0;
  for (int j = 1; j < n - 1; ++j) total += rows[j];
  return total;
}

double max_abs(int n, std::span<const double> a) {
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) num_threads(parallel::thread_count())
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) m = std::max(m, std::abs(a[j * n + i]));
  return m;
}

void axpy(int n, double a, std::span<const double> x, std::span<double> y) {
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) y[j * n + i] += a * x[j * n + i];
}

void xpby(int n, std::span<const double> z, double beta, std::span<double> p) {
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) p[j * n + i] = z[j * n + i] + beta * p[j * n + i];
}

void divide(int n, std::span<const double> r, std::span<const double> d,
            std::span<double> z) {
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) z[j * n + i] = r[j * n + i] / d[j * n + i];
}

namespace serial {

void laplacian(int n, double h, std::span<const double> u, std::span<double> out) {
  for (int id = 0; id < n * n; ++id) {
    const int i = id % n, j = id / n;
    if (i == 0 || j == 0 || i == n - 1 || j == n - 1) {
      out[id] = 0.0;
      continue;
    }
    out[id] = (u[id + 1] + u[id - 1] + u[id + n] + u[id - n] - 4.0 * u[id]) / (h * h);
  }
}

void vortex_residual(int n, double h, int k, std::span<const double> logmod,
                     std::span<const double> w, std::span<double> out) {
  laplacian(n, h, w, out);
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const int id = j * n + i;
      out[id] += -std::exp(w[id]) + std::exp(2.0 * logmod[id] - (k - 1) * w[id]);
    }
}

void shifted_operator(int n, double h, std::span<const double> diag,
                      std::span<const double> x, std::span<double> out) {
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const int id = j * n + i;
      const double lap =
          (x[id + 1] + x[id - 1] + x[id + n] + x[id - n] - 4.0 * x[id]) / (h * h);
      out[id] = -lap + diag[id] * x[id];
    }
}

double dot(int n, std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) s += a[j * n + i] * b[j * n + i];
  return s;
}

double max_abs(int n, std::span<const double> a) {
  double m = 0.0;
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) m = std::max(m, std::abs(a[j * n + i]));
  return m;
}

}  // namespace serial

}  // namespace vortexlab::kernels
