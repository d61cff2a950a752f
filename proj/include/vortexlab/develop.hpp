#pragma once

// Geometric development of solutions: the hyperbolic affine sphere in R^3
// from Wang's equation (k = 3) and the spacelike CMC surface in Minkowski
// space R^{2,1}, whose Gauss map is harmonic into H^2, from the harmonic-map
// equation (k = 2).

#include <array>
#include <filesystem>
#include <vector>

#include "vortexlab/grid.hpp"

namespace vortexlab {

enum class GeometricMode { WangK3, HarmonicK2 };

const char* to_string(GeometricMode mode);

/// w solves  lap w = 2 e^w - 4 |U|^2 e^{-2w}        (WangK3, differential U)
///       or  lap w = e^{2w} - |q|^2 e^{-2w}          (HarmonicK2, differential q)
struct NormalizedSolution {
  ScalarField w;
  GeometricMode mode;
  EntireFunction differential;
};

/// The vortex-equation problem whose solutions normalize to the given mode:
/// phi = 4U with k = 3, or phi = 2q with k = 2.
VortexProblem problem_for_mode(const EntireFunction& differential, GeometricMode mode,
                               const GridDomain& domain, BoundaryData boundary = {});

/// Maps a solution of lap w = e^w - |phi|^2 e^{-(k-1)w} to the normalized
/// equation of `mode` by w' = c w + log d:
///   WangK3:     c = 1,   d = 1/2,         U = phi / 4
///   HarmonicK2: c = 1/2, d = 1/sqrt(2),   q = phi / 2
/// Throws PreconditionError if prob.k does not match the mode and
/// ConsistencyError if the normalized residual exceeds 10 * solve_tol.
NormalizedSolution normalize(const ScalarField& w_eq1, const VortexProblem& prob,
                             GeometricMode mode, double solve_tol = 1e-9);

/// Residual of the normalized equation at interior nodes.
ScalarField normalized_residual(const NormalizedSolution& sol);

/// Curvature of the normalized metric: the Blaschke curvature
/// -1 + 2|U|^2 e^{-3w} of e^w|dz|^2, or -1 + |q|^2 e^{-4w} for e^{2w}|dz|^2.
ScalarField normalized_curvature(const NormalizedSolution& sol);

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

/// Immersion samples on a square window of the solution grid centred at the
/// origin. Frames hold f_z and f_zbar at every node (for HarmonicK2,
/// f_z = (f_x - i f_y) / 2).
struct DevelopedSurface {
  GeometricMode mode;
  GridDomain window;
  int offset = 0;  // solution-grid index of window node (0, 0)
  std::vector<Vec3> positions;
  std::vector<CVec3> f_z;
  std::vector<CVec3> f_zbar;
  std::vector<Vec3> normals;     // HarmonicK2: unit timelike normal N
  double max_imag_position = 0;  // WangK3: max |Im f|
};

/// Gauss map in the hyperboloid model {<N,N> = -1, N3 > 0} of R^{2,1} plus
/// its Jacobian e^{2w} - |q|^2 e^{-2w}.
struct GaussMapField {
  GridDomain window;
  std::vector<Vec3> points;
  ScalarField jacobian;
  /// max |J - det(N, N_x, N_y)| / max(1, |J|) at window-interior nodes,
  /// with N_x, N_y by centred differences of the developed Gauss map.
  double jacobian_fd_discrepancy = 0;
};

/// e^{2w} - |q|^2 e^{-2w} at every node of a HarmonicK2 solution.
ScalarField gauss_jacobian(const NormalizedSolution& sol);

struct DevelopOptions {
  /// Half-width of the development window; 0 develops the whole grid.
  double window_half_width = 0.0;
};

/// Integrates the Wang frame system for (f, f_z, f_zbar) along the spanning
/// tree "x-axis first, then vertically" with one RK4 step per grid edge.
DevelopedSurface develop_affine_sphere(const NormalizedSolution& sol,
                                       const DevelopOptions& opts = {});

/// Integrates the Gauss-Weingarten system of the spacelike CMC immersion
/// with I = e^{2w}|dz|^2 and II given by h11 + h22 = 2e^{2w},
/// h11 - h22 = 2 Re q, h12 = -Im q.
std::pair<DevelopedSurface, GaussMapField> develop_cmc(const NormalizedSolution& sol,
                                                       const DevelopOptions& opts = {});

struct HolonomyOptions {
  /// Restrict to plaquettes inside the inner half-size square of the window.
  bool inner_only = true;
  /// Divide by the plaquette area h^2 (curvature density of the discrete
  /// connection) instead of reporting the raw mismatch.
  bool per_unit_area = true;
};

/// Max over plaquettes of |F_xy - F_yx| / |F|, where F is the stored frame
/// at the lower-left corner and F_xy, F_yx its transports to the opposite
/// corner along the two edge paths.
double holonomy_defect(const DevelopedSurface& surface, const NormalizedSolution& sol,
                       const HolonomyOptions& opts = {});

/// Where the tangent vectors f_x, f_y come from.
enum class MetricSource {
  Frames,     ///< the propagated frame vectors at each node
  Positions,  ///< second-order differences of the node positions
};

/// Log-density of the induced metric: log det(f, f_x, f_y) (Blaschke volume
/// normalization, compare with w) for WangK3, and
/// log((<f_x,f_x> + <f_y,f_y>) / 2) in the Minkowski product (compare with
/// 2w) for HarmonicK2.
ScalarField reconstruct_metric(const DevelopedSurface& surface,
                               MetricSource source = MetricSource::Frames);

/// Largest coordinate extent of the immersion restricted to the window
/// square of half-width r, for r at every `stride`-th node ring.
std::vector<std::pair<double, double>> bounding_box_growth(const DevelopedSurface& surface,
                                                           int stride = 10);

/// Wavefront OBJ: `v x y z` per node (row-major), two `f` triangles per quad,
/// 9 significant digits.
void export_mesh(const DevelopedSurface& surface, const std::filesystem::path& path);

/// CSV `x,y,N1,N2,N3`.
void write_gauss_csv(const GaussMapField& gauss, const std::filesystem::path& path);

}  // namespace vortexlab
