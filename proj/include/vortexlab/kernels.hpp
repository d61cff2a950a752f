#pragma once

// Nodal kernels on an n x n row-major grid (index j * n + i). All kernels
// touch interior nodes only; boundary entries of outputs are left untouched
// unless stated otherwise.
//
// The default namespace holds the OpenMP versions. They parallelize over
// grid rows, and every reduction first forms one partial per row and then
// adds the partials in row order, so results do not depend on the thread
// count. kernels::serial holds straightforward single-loop references used
// by the tests and the benchmark.

#include <span>

namespace vortexlab::kernels {

/// out = 5-point Laplacian of u; boundary entries of out are set to 0.
void laplacian(int n, double h, std::span<const double> u, std::span<double> out);

/// out = lap(w) - e^w + exp(2 logmod - (k-1) w); boundary entries set to 0.
void vortex_residual(int n, double h, int k, std::span<const double> logmod,
                     std::span<const double> w, std::span<double> out);

/// F(w) = e^w - exp(2 logmod - (k-1) w) and dF/dw at interior nodes.
void nonlinearity(int n, int k, std::span<const double> logmod,
                  std::span<const double> w, std::span<double> f,
                  std::span<double> df);

/// out = (-lap + diag) x, treating x as zero on the boundary.
void shifted_operator(int n, double h, std::span<const double> diag,
                      std::span<const double> x, std::span<double> out);

double dot(int n, std::span<const double> a, std::span<const double> b);
double max_abs(int n, std::span<const double> a);

/// y += a * x
void axpy(int n, double a, std::span<const double> x, std::span<double> y);

/// p = z + beta * p
void xpby(int n, std::span<const double> z, double beta, std::span<double> p);

/// z = r / d
void divide(int n, std::span<const double> r, std::span<const double> d,
            std::span<double> z);

namespace serial {

void laplacian(int n, double h, std::span<const double> u, std::span<double> out);
void vortex_residual(int n, double h, int k, std::span<const double> logmod,
                     std::span<const double> w, std::span<double> out);
void shifted_operator(int n, double h, std::span<const double> diag,
                      std::span<const double> x, std::span<double> out);
double dot(int n, std::span<const double> a, std::span<const double> b);
double max_abs(int n, std::span<const double> a);

}  // namespace serial

}  // namespace vortexlab::kernels
