// Acceptance suite: one PASS/FAIL line per criterion, followed by the
// measured quantities. Exit status is nonzero when any criterion fails.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/core.h>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vortexlab/develop.hpp"
#include "vortexlab/solver.hpp"
#include "vortexlab/verify.hpp"

using namespace vortexlab;
namespace fs = std::filesystem;

namespace {

using Fn = std::function<Complex(Complex)>;

struct Outcome {
  bool passed = true;
  std::vector<std::string> details;
  void require(bool ok, std::string what) {
    passed = passed && ok;
    details.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", what));
  }
  void note(std::string what) { details.push_back("     " + what); }
};

// Independent 5-point residual of lap w = e^w - |phi|^2 e^{-(k-1)w}.
double oracle_residual(const ScalarField& w, const Fn& phi, int k) {
  const GridDomain& d = w.domain();
  const double h2 = d.spacing() * d.spacing();
  double m = 0.0;
  for (int j = 1; j < d.n() - 1; ++j)
    for (int i = 1; i < d.n() - 1; ++i) {
      const double lap = (w(i + 1, j) + w(i - 1, j) + w(i, j + 1) + w(i, j - 1) - 4.0 * w(i, j)) / h2;
      const double f = std::exp(w(i, j)) - std::norm(phi(d.node(i, j))) * std::exp(-(k - 1) * w(i, j));
      m = std::max(m, std::abs(lap - f));
    }
  return m;
}

// Applies fn(i, j) to the interior nodes of the inner half-size square.
template <class F>
void for_inner(const GridDomain& d, F&& fn) {
  for (int j = 1; j < d.n() - 1; ++j)
    for (int i = 1; i < d.n() - 1; ++i)
      if (d.in_inner_square(i, j)) fn(i, j);
}

double inner_max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for_inner(a.domain(), [&](int i, int j) { m = std::max(m, std::abs(a(i, j) - b(i, j))); });
  return m;
}

// Max over nodes of the coarse inner square of |a - b|, where b lives on a
// larger domain with the same spacing.
double nested_difference(const ScalarField& small, const ScalarField& large, double half_width) {
  const GridDomain& ds = small.domain();
  const GridDomain& dl = large.domain();
  const int shift = static_cast<int>(std::lround((dl.half_width() - ds.half_width()) / ds.spacing()));
  double m = 0.0;
  for (int j = 1; j < ds.n() - 1; ++j)
    for (int i = 1; i < ds.n() - 1; ++i)
      if (std::abs(ds.x(i)) <= half_width + 1e-12 && std::abs(ds.y(j)) <= half_width + 1e-12)
        m = std::max(m, std::abs(small(i, j) - large(i + shift, j + shift)));
  return m;
}

Fn polynomial(std::vector<Complex> c) {
  return [c](Complex z) { return polyval(c, z); };
}

std::string poly_name(const std::vector<Complex>& c) {
  std::string s;
  for (int m = static_cast<int>(c.size()) - 1; m >= 0; --m) {
    if (c[m] == Complex(0.0)) continue;
    if (!s.empty()) s += "+";
    s += m == 0 ? fmt::format("{}", c[m].real()) : m == 1 ? "z" : fmt::format("z^{}", m);
  }
  return s;
}

// ---------------------------------------------------------------------------

Outcome exact_residuals() {
  Outcome o;
  const Complex c(0.8, -1.7);
  for (int k : {2, 3, 4}) {
    const GridDomain d(3.0, 61);
    const ScalarField w(d, 2.0 / k * std::log(std::abs(c)));
    const double r = oracle_residual(w, [c](Complex) { return c; }, k);
    o.require(r <= 1e-12, fmt::format("phi = const, k = {}: residual {:.2e} <= 1e-12", k, r));
    const double lib = interior_max_norm(residual(w, VortexProblem(EntireFunction({c}), k, d)));
    o.require(lib <= 1e-12, fmt::format("   library residual {:.2e}", lib));
  }
  const GridDomain d(6.0, 201);
  const ScalarField w = ScalarField::sample(d, [](double x, double) { return 2.0 * x / 3.0; });
  const double r = oracle_residual(w, [](Complex z) { return std::exp(z); }, 3);
  o.require(r <= 1e-11, fmt::format("phi = e^z, k = 3, w = 2x/3: residual {:.2e} <= 1e-11", r));
  const double lib = interior_max_norm(residual(w, VortexProblem(EntireFunction({1.0}, {0.0, 1.0}), 3, d)));
  o.require(lib <= 1e-11, fmt::format("   library residual {:.2e}", lib));
  return o;
}

Outcome cross_validation() {
  Outcome o;
  const GridDomain d(8.0, 161);
  for (const auto& coeffs : std::vector<std::vector<Complex>>{{0, 1}, {0, 0, 1}, {1, 0, 0, 1}})
    for (int k : {2, 3}) {
      const VortexProblem base(EntireFunction(coeffs), k, d);
      const VortexProblem prob = base.with_boundary(make_boundary_complete(base, 1.0));
      // The clipped profile lies below the solution; max((2/k) log|phi|, 0) + 1 is a supersolution
      // matching the Dirichlet data.
      const ScalarField lo = clipped_profile(prob);
      ScalarField hi(d);
      for (std::size_t id = 0; id < d.size(); ++id)
        hi.values()[id] = std::max(2.0 / k * prob.log_modulus()[id], 0.0) + 1.0;
      const SolveResult m = monotone_solve(prob, lo, hi);
      const SolveResult nw = solve_newton(prob, hi);
      const double diff = inner_max_abs_diff(m.field, nw.field);
      double all = 0.0;
      for (int j = 1; j < d.n() - 1; ++j)
        for (int i = 1; i < d.n() - 1; ++i) all = std::max(all, std::abs(m.field(i, j) - nw.field(i, j)));
      o.require(all <= 1e-7, fmt::format("phi = {}, k = {}: |monotone - newton| = {:.2e} (inner {:.2e}), "
                                         "{} monotone steps, {} newton steps",
                                         poly_name(coeffs), k, all, diff, m.report.iterations,
                                         nw.report.iterations));
      o.note(fmt::format("   monotone increases {}, bracket sign failures {}", m.report.monotone_violations,
                         m.report.band_violations));
    }
  return o;
}

struct Complete {
  ScalarField w;
  SolveReport report;
};

Complete complete_solution(const std::vector<Complex>& coeffs, int k, double R, int n) {
  SolveResult r = solve_complete(VortexProblem(EntireFunction(coeffs), k, GridDomain(R, n)));
  return {std::move(r.field), std::move(r.report)};
}

Outcome subunity() {
  Outcome o;
  for (const auto& coeffs : std::vector<std::vector<Complex>>{{0, 1}, {0, 0, 1}, {1, 0, 0, 1}})
    for (int k : {2, 3}) {
      const Complete c = complete_solution(coeffs, k, 8.0, 161);
      const Fn phi = polynomial(coeffs);
      const GridDomain& d = c.w.domain();
      double hmax = -1.0;
      for_inner(d, [&](int i, int j) {
        hmax = std::max(hmax, std::norm(phi(d.node(i, j))) * std::exp(-k * c.w(i, j)));
      });
      o.require(1.0 - hmax > 1e-3, fmt::format("phi = {}, k = {}: max h = {:.9f}, margin {:.3e} > 1e-3{}",
                                               poly_name(coeffs), k, hmax, 1.0 - hmax,
                                               c.report.stabilized ? "" : " (continuation not stabilized)"));
    }
  for (int k : {2, 3}) {
    const Complex a(1.5, 0.5);
    const Complete c = complete_solution({a}, k, 8.0, 161);
    const GridDomain& d = c.w.domain();
    double dev = 0.0;
    for_inner(d, [&](int i, int j) { dev = std::max(dev, std::abs(std::norm(a) * std::exp(-k * c.w(i, j)) - 1.0)); });
    o.require(dev <= 1e-9, fmt::format("phi = const, k = {}: |h - 1| = {:.2e} <= 1e-9", k, dev));
  }
  return o;
}

Outcome uniqueness() {
  Outcome o;
  const std::vector<Complex> z{0, 1};
  const Complete a = complete_solution(z, 3, 8.0, 161);
  const Complete b = complete_solution(z, 3, 12.0, 241);
  const double dab = nested_difference(a.w, b.w, 4.0);
  o.require(dab <= 1e-3, fmt::format("complete R=8 vs R=12 on |x|,|y| <= 4: {:.2e} <= 1e-3", dab));

  const VortexProblem big(EntireFunction(z), 3, GridDomain(12.0, 241));
  const VortexProblem sub = big.with_boundary(make_boundary_subsolution(big));
  const SolveResult s = solve_newton(sub, clipped_profile(sub));
  const double ds = nested_difference(a.w, s.field, 4.0);
  o.require(ds <= 1e-2, fmt::format("profile-boundary R=12 vs complete R=8 on |x|,|y| <= 4: {:.2e} <= 1e-2", ds));
  const double ds12 = nested_difference(b.w, s.field, 4.0);
  o.note(fmt::format("profile-boundary vs complete, both R=12: {:.2e}", ds12));
  return o;
}

struct EzPair {
  TwoSolutions t;
  GridDomain d;
};

const EzPair& ez_pair() {
  static const EzPair p = [] {
    const GridDomain d(6.0, 201);
    return EzPair{two_solutions(EntireFunction({1.0}, {0.0, 1.0}), 3, d), d};
  }();
  return p;
}

Outcome dichotomy() {
  Outcome o;
  const EzPair& p = ez_pair();
  const ScalarField& w1 = p.t.complete.field;
  const ScalarField& w2 = p.t.incomplete.field;
  double e2 = 0.0;
  for (int j = 0; j < p.d.n(); ++j)
    for (int i = 0; i < p.d.n(); ++i) e2 = std::max(e2, std::abs(w2(i, j) - 2.0 * p.d.x(i) / 3.0));
  o.require(e2 <= 1e-8, fmt::format("(a) |w2 - 2x/3| = {:.2e} <= 1e-8", e2));

  double gap = 1e300, gx = 0, gy = 0;
  for_inner(p.d, [&](int i, int j) {
    if (w1(i, j) - w2(i, j) < gap) {
      gap = w1(i, j) - w2(i, j);
      gx = p.d.x(i);
      gy = p.d.y(j);
    }
  });
  o.require(gap > 0.01, fmt::format("(b) min inner (w1 - w2) = {:.3e} at ({}, {}) > 0.01", gap, gx, gy));
  o.note(fmt::format("strict ordering w1 > w2 on the inner square: {}", gap > 0.0 ? "yes" : "no"));

  const double pi = std::numbers::pi;
  const RayProfile r2 = completeness_probe(w2, {pi}).front();
  const RayProfile r1 = completeness_probe(w1, {pi}).front();
  o.require(r2.verdict == RayVerdict::Convergent && std::abs(r2.limit_estimate - 3.0) <= 0.02,
            fmt::format("(c) w2 leftward ray: {} with limit {:.5f} (L(R) = {:.5f}), expected 3 +- 0.02",
                        to_string(r2.verdict), r2.limit_estimate, r2.length.back()));
  o.require(r1.verdict == RayVerdict::Divergent && r1.length.back() > 6.0,
            fmt::format("(c) w1 leftward ray: {} with L(R) = {:.4g} > 6", to_string(r1.verdict), r1.length.back()));
  return o;
}

Outcome curvature() {
  Outcome o;
  for (int deg : {1, 2, 3}) {
    std::vector<Complex> u(deg + 1);
    u[deg] = 1.0;
    const GridDomain d(6.0, 161);
    const VortexProblem prob = problem_for_mode(EntireFunction(u), GeometricMode::WangK3, d);
    const SolveResult r = solve_complete(prob);
    const NormalizedSolution sol = normalize(r.field, prob, GeometricMode::WangK3);
    double kmax = -1e300, kx = 0, ky = 0;
    for_inner(d, [&](int i, int j) {
      const double k = -1.0 + 2.0 * std::norm(std::pow(d.node(i, j), deg)) * std::exp(-3.0 * sol.w(i, j));
      if (k > kmax) {
        kmax = k;
        kx = d.x(i);
        ky = d.y(j);
      }
    });
    o.require(kmax < 0.0, fmt::format("U = {}: max inner Blaschke curvature {:.3e} at ({}, {}) < 0",
                                      poly_name(u), kmax, kx, ky));
  }
  const EzPair& p = ez_pair();
  const VortexProblem ez = problem_for_mode(EntireFunction({0.25}, {0.0, 1.0}), GeometricMode::WangK3, p.d);
  const NormalizedSolution sol = normalize(p.t.incomplete.field, ez, GeometricMode::WangK3);
  double kabs = 0.0;
  for_inner(p.d, [&](int i, int j) {
    const double k = -1.0 + 2.0 * std::norm(0.25 * std::exp(p.d.node(i, j))) * std::exp(-3.0 * sol.w(i, j));
    kabs = std::max(kabs, std::abs(k));
  });
  o.require(kabs <= 1e-9, fmt::format("phi = e^z incomplete branch: |k_h| = {:.2e} <= 1e-9", kabs));
  return o;
}

Outcome integrability() {
  Outcome o;
  const EntireFunction u({0.0, 0.0, 0.0, 1.0});
  std::vector<double> defects;
  for (int n : {81, 161, 321}) {
    const GridDomain d(6.0, n);
    const VortexProblem prob = problem_for_mode(u, GeometricMode::WangK3, d);
    const NormalizedSolution sol = normalize(solve_complete(prob).field, prob, GeometricMode::WangK3);
    const DevelopedSurface s = develop_affine_sphere(sol, {3.0});
    defects.push_back(holonomy_defect(s, sol));
    o.note(fmt::format("U = z^3, n = {}: holonomy defect {:.3e} (raw {:.3e}), max |Im f| {:.1e}", n,
                       defects.back(), holonomy_defect(s, sol, {true, false}), s.max_imag_position));
    if (n == 161) {
      o.require(defects.back() <= 1e-4, fmt::format("defect at n = 161: {:.3e} <= 1e-4", defects.back()));
      NormalizedSolution bad = sol;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          bad.w(i, j) += 0.1 * std::exp(-(d.x(i) * d.x(i) + d.y(j) * d.y(j)));
      const double db = holonomy_defect(develop_affine_sphere(bad, {3.0}), bad);
      o.require(db > 1e-2, fmt::format("corrupted control: defect {:.3e} > 1e-2", db));
    }
  }
  for (std::size_t m = 1; m < defects.size(); ++m) {
    const double order = std::log2(defects[m - 1] / defects[m]);
    o.require(order >= 1.8 && order <= 2.2, fmt::format("observed order {:.3f} in [1.8, 2.2]", order));
  }
  return o;
}

Outcome cmc() {
  Outcome o;
  {
    const GridDomain d(4.0, 161);
    const VortexProblem prob = problem_for_mode(EntireFunction({0.0, 1.0}), GeometricMode::HarmonicK2, d);
    const NormalizedSolution sol = normalize(solve_complete(prob).field, prob, GeometricMode::HarmonicK2);
    const auto [s, g] = develop_cmc(sol, {1.0});
    double drift = 0.0;
    for (const Vec3& N : g.points) drift = std::max(drift, std::abs(N[0] * N[0] + N[1] * N[1] - N[2] * N[2] + 1.0));
    o.require(drift <= 1e-6, fmt::format("q = z: |<N,N> + 1| = {:.2e} <= 1e-6 on the {}x{} development window",
                                         drift, s.window.n(), s.window.n()));
    double jmin = 1e300;
    for_inner(d, [&](int i, int j) {
      jmin = std::min(jmin, std::exp(2.0 * sol.w(i, j)) - std::norm(d.node(i, j)) * std::exp(-2.0 * sol.w(i, j)));
    });
    o.require(jmin > 0.0, fmt::format("q = z: min inner J = {:.3e} > 0", jmin));
    o.note(fmt::format("finite-difference Jacobian discrepancy {:.2e}", g.jacobian_fd_discrepancy));
  }
  {
    const GridDomain d(1.0, 161);
    const VortexProblem prob = problem_for_mode(EntireFunction({1.0}, {0.0, 2.0}), GeometricMode::HarmonicK2, d);
    const NormalizedSolution sol = normalize(clipped_profile(prob), prob, GeometricMode::HarmonicK2);
    double jmax = 0.0;
    for (int j = 0; j < d.n(); ++j)
      for (int i = 0; i < d.n(); ++i)
        jmax = std::max(jmax, std::abs(std::exp(2.0 * sol.w(i, j)) -
                                       std::norm(std::exp(2.0 * d.node(i, j))) * std::exp(-2.0 * sol.w(i, j))));
    o.require(jmax <= 1e-8, fmt::format("q = e^(2z) profile solution: |J| = {:.2e} <= 1e-8", jmax));
    const auto [s, g] = develop_cmc(sol);
    double gj = 0.0;
    for (double v : g.jacobian.values()) gj = std::max(gj, std::abs(v));
    o.note(fmt::format("developed Gauss map Jacobian {:.2e}, fd discrepancy {:.2e}", gj, g.jacobian_fd_discrepancy));
  }
  return o;
}

struct ExactCase {
  std::string name;
  GeometricMode mode;
  EntireFunction differential;
  double R;
  std::function<double(double, double)> w;
};

double metric_error(const ExactCase& c, int n, MetricSource src) {
  const GridDomain d(c.R, n);
  const NormalizedSolution sol{ScalarField::sample(d, c.w), c.mode, c.differential};
  const DevelopedSurface s = c.mode == GeometricMode::WangK3 ? develop_affine_sphere(sol) : develop_cmc(sol).first;
  const ScalarField m = reconstruct_metric(s, src);
  const double scale = c.mode == GeometricMode::WangK3 ? 1.0 : 2.0;
  double e = 0.0;
  for (std::size_t id = 0; id < d.size(); ++id) e = std::max(e, std::abs(m.values()[id] - scale * sol.w.values()[id]));
  return e;
}

Outcome metric_roundtrip() {
  Outcome o;
  const Complex u0(0.7, 0.2);
  const double v0 = std::log(2.0 * std::norm(u0)) / 3.0;
  const std::vector<ExactCase> cases = {
      {"Wang, U constant", GeometricMode::WangK3, EntireFunction({u0}), 2.0, [v0](double, double) { return v0; }},
      {"Wang, U = e^(3z/2)/sqrt 2", GeometricMode::WangK3, EntireFunction({1.0 / std::sqrt(2.0)}, {0.0, 1.5}), 1.0,
       [](double x, double) { return x; }},
      {"CMC, q = e^(2z)", GeometricMode::HarmonicK2, EntireFunction({1.0}, {0.0, 2.0}), 1.0,
       [](double x, double) { return x; }},
  };
  for (const ExactCase& c : cases) {
    const double ef = metric_error(c, 161, MetricSource::Frames);
    o.require(ef <= 1e-5, fmt::format("{}: frame metric error at n = 161 {:.2e} <= 1e-5", c.name, ef));
    std::vector<double> ep;
    for (int n : {81, 161, 321}) ep.push_back(metric_error(c, n, MetricSource::Positions));
    o.note(fmt::format("{}: position metric errors {:.3e} {:.3e} {:.3e}", c.name, ep[0], ep[1], ep[2]));
    if (ep[2] <= 1e-13) {
      o.require(true, fmt::format("{}: position metric exact to rounding", c.name));
      continue;
    }
    for (std::size_t m = 1; m < ep.size(); ++m) {
      const double order = std::log2(ep[m - 1] / ep[m]);
      o.require(order >= 1.8 && order <= 2.2, fmt::format("{}: position metric order {:.3f} in [1.8, 2.2]", c.name, order));
    }
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "vortexlab_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::vector<nlohmann::json> configs = {
      {{"phi", {{"p", {1}}, {"q", {0, 1}}}}, {"k", 3}, {"R", 4}, {"n", 81},
       {"pipeline", {"two-solutions", "verify"}}},
      {{"phi", {{"p", {0, 0, 1}}}}, {"mode", "WANG_K3"}, {"R", 4}, {"n", 81},
       {"pipeline", {"solve-complete", "verify", "develop", "export"}}},
      {{"phi", {{"p", {0, 1}}}}, {"mode", "HARMONIC_K2"}, {"R", 3}, {"n", 81},
       {"pipeline", {"solve-complete", "develop", "export"}}, {"tolerances", {{"develop_window", 1.0}}}},
  };
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::vector<std::map<std::string, std::string>> runs;
    for (const char* threads : {"1", "4", "4", "1"}) {
      nlohmann::json cfg = configs[c];
      const fs::path out = root / fmt::format("c{}_{}_{}", c, threads, runs.size());
      cfg["output_dir"] = out.string();
      const fs::path file = root / fmt::format("c{}_{}.json", c, runs.size());
      std::ofstream(file) << cfg.dump();
      const std::string cmd = fmt::format("VORTEXLAB_THREADS={} {} run {} >/dev/null 2>&1", threads, VORTEXLAB_CLI,
                                          file.string());
      const int status = std::system(cmd.c_str());
      const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      std::map<std::string, std::string> files;
      for (const auto& e : fs::directory_iterator(out))
        if (e.path().filename() != "timing.json") files[e.path().filename().string()] = slurp(e.path());
      // The output directory is part of the recorded config.
      auto rep = nlohmann::json::parse(files["report.json"]);
      rep["config"].erase("output_dir");
      files["report.json"] = rep.dump(2);
      files["exit code"] = std::to_string(code);
      runs.push_back(std::move(files));
    }
    bool same = true;
    for (std::size_t r = 1; r < runs.size(); ++r) same = same && runs[r] == runs[0];
    std::string names;
    for (const auto& [name, bytes] : runs[0]) names += " " + name;
    o.require(same && runs[0]["exit code"] != "-1",
              fmt::format("config {} (exit {}): {} artifacts identical across threads 1, 4, 4, 1:{}", c,
                          runs[0]["exit code"], runs[0].size() - 1, names));
  }
  return o;
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*check)();
  };
  const std::vector<Criterion> criteria = {
      {1, "exact-solution residuals", exact_residuals},
      {2, "monotone and Newton solvers agree", cross_validation},
      {3, "subunity bound with strict margin", subunity},
      {4, "boundary-insensitivity for polynomial phi", uniqueness},
      {5, "two solutions for phi = e^z", dichotomy},
      {6, "negative Blaschke curvature", curvature},
      {7, "development integrability", integrability},
      {8, "CMC Gauss map", cmc},
      {9, "metric round trip", metric_roundtrip},
      {10, "determinism across thread counts", determinism},
  };
  int failed = 0;
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) selected.push_back(std::atoi(argv[a]));
  int run_count = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    ++run_count;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.require(false, fmt::format("exception: {}", e.what()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fmt::print("CRITERION {:2d} {}: {} ({:.1f} s)\n", c.id, o.passed ? "PASS" : "FAIL", c.title, secs);
    for (const std::string& line : o.details) fmt::print("    {}\n", line);
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  fmt::print("{} of {} criteria passed\n", run_count - failed, run_count);
  return failed == 0 ? 0 : 1;
}
