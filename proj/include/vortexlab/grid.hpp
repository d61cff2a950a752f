#pragma once

// Uniform finite-difference discretization of the truncated square
// [-R, R]^2: nodal fields, the 5-point Laplacian and the discrete residual
// of  lap w = e^w - |phi|^2 e^{-(k-1) w}.

#include <filesystem>
#include <memory>
#include <vector>

#include "vortexlab/holo.hpp"

namespace vortexlab {

class GridDomain {
 public:
  GridDomain(double half_width, int n);

  double half_width() const { return half_width_; }
  int n() const { return n_; }
  double spacing() const { return h_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

  double x(int i) const { return -half_width_ + i * h_; }
  double y(int j) const { return -half_width_ + j * h_; }
  Complex node(int i, int j) const { return {x(i), y(j)}; }
  int index(int i, int j) const { return j * n_ + i; }

  bool is_boundary(int i, int j) const {
    return i == 0 || j == 0 || i == n_ - 1 || j == n_ - 1;
  }
  /// Interior node of the concentric square of half-width R/2.
  bool in_inner_square(int i, int j) const;

  bool operator==(const GridDomain& o) const {
    return half_width_ == o.half_width_ && n_ == o.n_;
  }

 private:
  double half_width_;
  int n_;
  double h_;
};

class ScalarField {
 public:
  explicit ScalarField(GridDomain domain, double fill = 0.0);
  ScalarField(GridDomain domain, std::vector<double> values);

  const GridDomain& domain() const { return domain_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double& operator()(int i, int j) { return values_[domain_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[domain_.index(i, j)]; }

  bool all_finite() const;

  /// Samples f(x, y) at every node.
  template <class F>
  static ScalarField sample(const GridDomain& d, F&& f) {
    ScalarField s(d);
    for (int j = 0; j < d.n(); ++j)
      for (int i = 0; i < d.n(); ++i) s(i, j) = f(d.x(i), d.y(j));
    return s;
  }

 private:
  GridDomain domain_;
  std::vector<double> values_;
};

enum class BoundaryKind { CompleteApprox, SubsolutionProfile, Explicit };

const char* to_string(BoundaryKind kind);

/// Dirichlet data. `values` has one entry per grid node; only boundary
/// entries are meaningful. `offset` is the continuation parameter M of
/// CompleteApprox data.
struct BoundaryData {
  BoundaryKind kind = BoundaryKind::Explicit;
  double offset = 0.0;
  std::vector<double> values;
};

/// (phi, k, domain, boundary) defining one solve. log|phi| is sampled once
/// at construction and shared between copies.
class VortexProblem {
 public:
  VortexProblem(EntireFunction phi, int k, GridDomain domain,
                BoundaryData boundary = {});

  const EntireFunction& phi() const { return phi_; }
  int k() const { return k_; }
  const GridDomain& domain() const { return domain_; }
  const BoundaryData& boundary() const { return boundary_; }

  /// log|phi| at every node (-inf at zeros).
  const std::vector<double>& log_modulus() const { return *log_modulus_; }

  VortexProblem with_boundary(BoundaryData boundary) const;

 private:
  EntireFunction phi_;
  int k_;
  GridDomain domain_;
  BoundaryData boundary_;
  std::shared_ptr<const std::vector<double>> log_modulus_;
};

/// 5-point Laplacian at interior nodes, 0 on the boundary.
ScalarField laplacian(const ScalarField& u);

/// lap(w) - e^w + |phi|^2 e^{-(k-1)w} at interior nodes, 0 on the boundary.
ScalarField residual(const ScalarField& w, const VortexProblem& prob);

/// max |u| over interior nodes.
double interior_max_norm(const ScalarField& u);

/// max |u| over interior nodes of the inner half-size square.
double inner_max_norm(const ScalarField& u);

/// Overwrites boundary nodes of w with the problem's Dirichlet data.
void apply_boundary(ScalarField& w, const BoundaryData& b);

/// (2/k) log|phi| at every node with values below `floor` raised to it.
ScalarField clipped_profile(const VortexProblem& prob, double floor = -40.0);

/// CSV with header `x,y,value`, row-major nodes, 17 significant digits.
void write_csv(const ScalarField& u, const std::filesystem::path& path);
ScalarField read_csv(const std::filesystem::path& path);

}  // namespace vortexlab
