#include "vortexlab/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "vortexlab/report.hpp"
#include "vortexlab/solver.hpp"
#include "vortexlab/verify.hpp"

namespace vortexlab {

namespace {

const std::vector<std::string> kStages = {"solve-complete", "solve-incomplete", "two-solutions",
                                          "verify",         "develop",          "export"};

std::vector<Complex> parse_coeffs(const nlohmann::json& j, const char* name) {
  if (!j.is_array()) throw ConfigError(fmt::format("phi.{} must be an array", name));
  std::vector<Complex> out;
  for (const auto& c : j) {
    if (c.is_number()) {
      out.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      out.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      throw ConfigError(fmt::format("phi.{} entries must be numbers or [re, im] pairs", name));
    }
  }
  return out;
}

nlohmann::json coeffs_json(const std::vector<Complex>& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const Complex& z : c) out.push_back({z.real(), z.imag()});
  return out;
}

template <class T>
T get_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(fmt::format("missing field '{}'", key));
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(fmt::format("field '{}' has the wrong type", key));
  }
}

bool has_stage(const RunConfig& cfg, const std::string& s) {
  return std::find(cfg.pipeline.begin(), cfg.pipeline.end(), s) != cfg.pipeline.end();
}

GeometricMode geometric(RunMode m) {
  return m == RunMode::WangK3 ? GeometricMode::WangK3 : GeometricMode::HarmonicK2;
}

VortexProblem make_problem(const RunConfig& cfg) {
  const GridDomain domain(cfg.R, cfg.n);
  const EntireFunction f(cfg.p, cfg.q);
  if (cfg.mode == RunMode::Eq1) return VortexProblem(f, cfg.k, domain);
  return problem_for_mode(f, geometric(cfg.mode), domain);
}

ContinuationOptions continuation_options(const RunConfig& cfg) {
  ContinuationOptions o;
  o.tol = cfg.tol.continuation;
  o.newton.tol = cfg.tol.newton;
  return o;
}

SolveResult solve_incomplete(const VortexProblem& base, const RunConfig& cfg) {
  const VortexProblem prob = base.with_boundary(make_boundary_subsolution(base));
  NewtonOptions o;
  o.tol = cfg.tol.newton;
  return solve_newton(prob, clipped_profile(prob), o);
}

// Everything one run produces, filled stage by stage.
struct RunState {
  explicit RunState(const RunConfig& c) : cfg(c), prob(make_problem(c)) {}

  const RunConfig& cfg;
  VortexProblem prob;
  std::optional<SolveResult> complete;
  std::optional<SolveResult> incomplete;
  std::optional<DevelopedSurface> surface;
  std::optional<GaussMapField> gauss;
  nlohmann::json invariants = nlohmann::json::array();
  nlohmann::json rays = nlohmann::json::array();
  nlohmann::json diagnostics = nlohmann::json::object();
  nlohmann::json develop;
  nlohmann::json timing = nlohmann::json::object();
  std::vector<std::string> artifacts;
  bool invariants_ok = true;

  void add_invariant(const InvariantReport& r) {
    invariants.push_back(vortexlab::to_json(r));
    invariants_ok = invariants_ok && r.passed;
  }
  void add_check(const std::string& name, bool passed, double margin, double tol) {
    InvariantReport r;
    r.name = name;
    r.passed = passed;
    r.margin = margin;
    r.tolerance = tol;
    add_invariant(r);
  }
  std::filesystem::path out(const std::string& name) {
    artifacts.push_back(name);
    return cfg.output_dir / name;
  }
};

void stage_solve_complete(RunState& st) {
  st.complete = solve_complete(st.prob, continuation_options(st.cfg));
  write_csv(st.complete->field, st.out("w_complete.csv"));
}

void stage_solve_incomplete(RunState& st) {
  st.incomplete = solve_incomplete(st.prob, st.cfg);
  write_csv(st.incomplete->field, st.out("w_incomplete.csv"));
}

void stage_two_solutions(RunState& st) {
  TwoSolutions two = two_solutions(st.prob.phi(), st.prob.k(), st.prob.domain(),
                                   continuation_options(st.cfg));
  st.complete = std::move(two.complete);
  st.incomplete = std::move(two.incomplete);
  write_csv(st.complete->field, st.out("w_complete.csv"));
  write_csv(st.incomplete->field, st.out("w_incomplete.csv"));
}

std::vector<RayProfile> verify_branch(RunState& st, const SolveResult& s, const std::string& branch) {
  const RunConfig& cfg = st.cfg;
  const ScalarField& w = s.field;
  if (branch == "complete") {
    InvariantReport r = subunity_check(w, st.prob, cfg.tol.subunity);
    r.name = "subunity_complete";
    st.add_invariant(r);
  }
  try {
    curvature_field(w, st.prob, std::max(s.report.final_residual, cfg.tol.newton));
    st.add_check("curvature_consistency_" + branch, true, 0.0, 0.0);
  } catch (const ConsistencyError&) {
    st.add_check("curvature_consistency_" + branch, false, -1.0, 0.0);
  }
  InvariantReport gap = no_gap_check(w, st.prob, cfg.tol.no_gap_delta);
  gap.name = "no_gap_" + branch;
  st.add_invariant(gap);
  const DiagnosticFields d = diagnostics(w, st.prob);
  st.diagnostics[branch] = {{"identity_residual", d.identity_residual},
                            {"max_h", *std::max_element(d.h.values().begin(), d.h.values().end())}};
  st.add_check("diagnostic_identity_" + branch, d.identity_residual <= cfg.tol.identity,
               cfg.tol.identity - d.identity_residual, cfg.tol.identity);

  if (cfg.mode != RunMode::Eq1) {
    const NormalizedSolution sol = normalize(w, st.prob, geometric(cfg.mode));
    const bool polynomial = st.prob.phi().is_polynomial() && st.prob.phi().degree() > 0;
    if (branch == "complete" && polynomial) {
      // Negative Blaschke curvature (WangK3) or orientation-preserving
      // Gauss map (HarmonicK2) on the inner square.
      const bool wang = cfg.mode == RunMode::WangK3;
      ScalarField f = wang ? normalized_curvature(sol) : gauss_jacobian(sol);
      if (!wang)
        for (double& v : f.values()) v = -v;
      InvariantReport r;
      r.name = wang ? "blaschke_curvature_negative" : "gauss_jacobian_positive";
      r.witness_value = -1e300;
      const GridDomain& dom = w.domain();
      for (int j = 0; j < dom.n(); ++j)
        for (int i = 0; i < dom.n(); ++i)
          if (dom.in_inner_square(i, j) && f(i, j) > r.witness_value) {
            r.witness_value = f(i, j);
            r.witness_x = dom.x(i);
            r.witness_y = dom.y(j);
          }
      if (!wang) r.witness_value = -r.witness_value;
      r.margin = wang ? -r.witness_value : r.witness_value;
      r.passed = r.margin > 0.0;
      st.add_invariant(r);
    }
  }

  ProbeOptions po;
  po.plateau_tol = cfg.tol.plateau;
  std::vector<RayProfile> rays = completeness_probe(w, cfg.rays, po);
  for (const RayProfile& p : rays) st.rays.push_back(to_json(p, branch));
  return rays;
}

void stage_verify(RunState& st) {
  if (!st.complete && !st.incomplete)
    throw ConfigError("stage 'verify' needs a solve stage before it");
  std::vector<RayProfile> rays_complete, rays_incomplete;
  if (st.complete) rays_complete = verify_branch(st, *st.complete, "complete");
  if (st.incomplete) rays_incomplete = verify_branch(st, *st.incomplete, "incomplete");
  if (st.complete && st.incomplete) {
    st.add_invariant(ordering_check(st.complete->field, st.incomplete->field));
    // The complete metric has every ray of infinite length, the incomplete
    // one at least one of finite length.
    const bool complete_div = std::all_of(rays_complete.begin(), rays_complete.end(), [](const RayProfile& p) {
      return p.verdict == RayVerdict::Divergent;
    });
    const bool incomplete_conv = std::any_of(rays_incomplete.begin(), rays_incomplete.end(), [](const RayProfile& p) {
      return p.verdict == RayVerdict::Convergent;
    });
    st.add_check("completeness_dichotomy", complete_div && incomplete_conv,
                 complete_div && incomplete_conv ? 0.0 : -1.0, 0.0);
  }
  if (st.complete) {
    write_rays_csv(rays_complete, st.out("rays.csv"));
    if (st.incomplete) write_rays_csv(rays_incomplete, st.out("rays_incomplete.csv"));
  } else {
    write_rays_csv(rays_incomplete, st.out("rays.csv"));
  }
  write_json({{"invariants", st.invariants}, {"rays", st.rays}, {"diagnostics", st.diagnostics}},
             st.out("invariants.json"));
}

void stage_develop(RunState& st) {
  const RunConfig& cfg = st.cfg;
  if (cfg.mode == RunMode::Eq1) throw ConfigError("stage 'develop' needs mode WANG_K3 or HARMONIC_K2");
  const SolveResult* s = st.complete ? &*st.complete : st.incomplete ? &*st.incomplete : nullptr;
  if (s == nullptr) throw ConfigError("stage 'develop' needs a solve stage before it");
  const NormalizedSolution sol = normalize(s->field, st.prob, geometric(cfg.mode));
  DevelopOptions o;
  o.window_half_width = cfg.tol.develop_window > 0.0 ? cfg.tol.develop_window : 0.5 * cfg.R;
  nlohmann::json j;
  if (cfg.mode == RunMode::WangK3) {
    st.surface = develop_affine_sphere(sol, o);
    j["max_imag_position"] = st.surface->max_imag_position;
  } else {
    auto [surface, gauss] = develop_cmc(sol, o);
    st.surface = std::move(surface);
    st.gauss = std::move(gauss);
    double drift = 0.0;
    for (const Vec3& nv : st.gauss->points)
      drift = std::max(drift, std::abs(nv[0] * nv[0] + nv[1] * nv[1] - nv[2] * nv[2] + 1.0));
    j["normal_drift"] = drift;
    j["jacobian_fd_discrepancy"] = st.gauss->jacobian_fd_discrepancy;
  }
  const DevelopedSurface& surf = *st.surface;
  const ScalarField metric = reconstruct_metric(surf);
  const double scale = cfg.mode == RunMode::WangK3 ? 1.0 : 2.0;
  double metric_err = 0.0, metric_err_inner = 0.0;
  for (int b = 0; b < surf.window.n(); ++b)
    for (int a = 0; a < surf.window.n(); ++a) {
      const double e = std::abs(metric(a, b) - scale * sol.w(surf.offset + a, surf.offset + b));
      metric_err = std::max(metric_err, e);
      if (surf.window.in_inner_square(a, b)) metric_err_inner = std::max(metric_err_inner, e);
    }
  j["branch"] = st.complete ? "complete" : "incomplete";
  j["window_half_width"] = surf.window.half_width();
  j["holonomy_defect"] = holonomy_defect(surf, sol);
  j["metric_roundtrip_error"] = metric_err;
  j["metric_roundtrip_error_inner"] = metric_err_inner;
  nlohmann::json growth = nlohmann::json::array();
  for (const auto& [r, extent] : bounding_box_growth(surf)) growth.push_back({r, extent});
  j["bounding_box_growth"] = growth;
  st.develop = j;
}

void stage_export(RunState& st) {
  if (!st.surface) throw ConfigError("stage 'export' needs a develop stage before it");
  export_mesh(*st.surface, st.out("surface.obj"));
  if (st.gauss) write_gauss_csv(*st.gauss, st.out("gauss.csv"));
}

nlohmann::json solve_json(const std::optional<SolveResult>& s) {
  return s ? vortexlab::to_json(s->report) : nlohmann::json(nullptr);
}

}  // namespace

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::WangK3: return "WANG_K3";
    case RunMode::HarmonicK2: return "HARMONIC_K2";
    case RunMode::Eq1: break;
  }
  return "EQ1";
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  const nlohmann::json phi = j.contains("phi") ? j.at("phi") : nlohmann::json();
  if (!phi.is_object() || !phi.contains("p")) throw ConfigError("missing field 'phi.p'");
  c.p = parse_coeffs(phi.at("p"), "p");
  c.q = phi.contains("q") ? parse_coeffs(phi.at("q"), "q") : std::vector<Complex>{};
  if (std::none_of(c.p.begin(), c.p.end(), [](Complex z) { return z != Complex(0.0, 0.0); }))
    throw ConfigError("phi.p must not be the zero polynomial");

  const std::string mode = j.contains("mode") ? get_field<std::string>(j, "mode") : "EQ1";
  if (mode == "EQ1")
    c.mode = RunMode::Eq1;
  else if (mode == "WANG_K3")
    c.mode = RunMode::WangK3;
  else if (mode == "HARMONIC_K2")
    c.mode = RunMode::HarmonicK2;
  else
    throw ConfigError("mode must be EQ1, WANG_K3 or HARMONIC_K2");

  const int mode_k = c.mode == RunMode::WangK3 ? 3 : c.mode == RunMode::HarmonicK2 ? 2 : 0;
  if (j.contains("k")) {
    c.k = get_field<int>(j, "k");
    if (mode_k != 0 && c.k != mode_k) throw ConfigError(fmt::format("mode {} needs k = {}", mode, mode_k));
  } else if (mode_k != 0) {
    c.k = mode_k;
  } else {
    throw ConfigError("missing field 'k'");
  }
  if (c.k < 2) throw ConfigError("k must be >= 2");

  c.R = get_field<double>(j, "R");
  if (!(c.R > 0.0) || !std::isfinite(c.R)) throw ConfigError("R must be positive");
  c.n = get_field<int>(j, "n");
  if (c.n < 5 || c.n % 2 == 0) throw ConfigError("n must be odd and >= 5");

  c.pipeline = get_field<std::vector<std::string>>(j, "pipeline");
  if (c.pipeline.empty()) throw ConfigError("pipeline must name at least one stage");
  for (const std::string& s : c.pipeline)
    if (std::find(kStages.begin(), kStages.end(), s) == kStages.end())
      throw ConfigError(fmt::format("unknown stage '{}'", s));

  c.output_dir = get_field<std::string>(j, "output_dir");

  if (j.contains("tolerances")) {
    const nlohmann::json& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("tolerances must be an object");
    const std::vector<std::pair<const char*, double*>> keys = {
        {"newton", &c.tol.newton},           {"continuation", &c.tol.continuation},
        {"subunity", &c.tol.subunity},       {"plateau", &c.tol.plateau},
        {"no_gap_delta", &c.tol.no_gap_delta}, {"identity", &c.tol.identity},
        {"develop_window", &c.tol.develop_window}};
    for (auto it = t.begin(); it != t.end(); ++it) {
      auto k = std::find_if(keys.begin(), keys.end(), [&](const auto& p) { return it.key() == p.first; });
      if (k == keys.end()) throw ConfigError(fmt::format("unknown tolerance '{}'", it.key()));
      if (!it->is_number()) throw ConfigError(fmt::format("tolerance '{}' must be a number", it.key()));
      *k->second = it->get<double>();
    }
    if (!(c.tol.no_gap_delta > 0.0 && c.tol.no_gap_delta < 1.0))
      throw ConfigError("tolerances.no_gap_delta must lie in (0, 1)");
  }

  if (j.contains("rays")) {
    c.rays = get_field<std::vector<double>>(j, "rays");
  } else {
    c.rays = {0.0, 0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi};
  }
  return c;
}

nlohmann::json RunConfig::to_json() const {
  return {{"phi", {{"p", coeffs_json(p)}, {"q", coeffs_json(q)}}},
          {"k", k},
          {"R", R},
          {"n", n},
          {"mode", to_string(mode)},
          {"pipeline", pipeline},
          {"output_dir", output_dir.string()},
          {"tolerances",
           {{"newton", tol.newton},
            {"continuation", tol.continuation},
            {"subunity", tol.subunity},
            {"plateau", tol.plateau},
            {"no_gap_delta", tol.no_gap_delta},
            {"identity", tol.identity},
            {"develop_window", tol.develop_window}}},
          {"rays", rays}};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return RunConfig::from_json(j);
}

int run(const RunConfig& cfg) {
  std::optional<RunState> st;
  try {
    st.emplace(cfg);
  } catch (const PreconditionError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  }
  std::filesystem::create_directories(cfg.output_dir);

  int code = kExitOk;
  std::string message = "ok";
  for (const std::string& stage : cfg.pipeline) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if (stage == "solve-complete") stage_solve_complete(*st);
      else if (stage == "solve-incomplete") stage_solve_incomplete(*st);
      else if (stage == "two-solutions") stage_two_solutions(*st);
      else if (stage == "verify") stage_verify(*st);
      else if (stage == "develop") stage_develop(*st);
      else if (stage == "export") stage_export(*st);
    } catch (const ConfigError& e) {
      fmt::print(stderr, "config error in stage {}: {}\n", stage, e.what());
      return kExitConfig;
    } catch (const PreconditionError& e) {
      fmt::print(stderr, "config error in stage {}: {}\n", stage, e.what());
      return kExitConfig;
    } catch (const ConsistencyError& e) {
      code = kExitInvariant;
      message = fmt::format("{}: {}", stage, e.what());
    } catch (const Error& e) {
      code = kExitNonConvergence;
      message = fmt::format("{}: {}", stage, e.what());
    }
    st->timing[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (code != kExitOk) break;
    fmt::print(stderr, "stage {} done\n", stage);
  }
  if (code == kExitOk && !st->invariants_ok) {
    code = kExitInvariant;
    message = "invariant check failed";
  }
  if (code != kExitOk) fmt::print(stderr, "{}\n", message);

  nlohmann::json report = {
      {"config", cfg.to_json()},
      {"versions",
       {{"vortexlab", kVersion},
        {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR,
                                      NLOHMANN_JSON_VERSION_MINOR, NLOHMANN_JSON_VERSION_PATCH)},
        {"fmt", FMT_VERSION}}},
      {"status", {{"exit_code", code}, {"message", message}}},
      {"solves", {{"complete", solve_json(st->complete)}, {"incomplete", solve_json(st->incomplete)}}},
      {"invariants", st->invariants},
      {"rays", st->rays},
      {"diagnostics", st->diagnostics},
      {"develop", st->develop},
      {"artifacts", st->artifacts},
      {"timing_file", "timing.json"}};
  write_json(report, cfg.output_dir / "report.json");
  write_json(st->timing, cfg.output_dir / "timing.json");
  return code;
}

nlohmann::json CompareResult::to_json() const {
  return {{"max_difference", max_difference},
          {"witness", {{"x", witness_x}, {"y", witness_y}}},
          {"region_half_width", region_half_width},
          {"shared_nodes", shared_nodes}};
}

CompareResult compare(const RunConfig& a, const RunConfig& b) {
  if (a.p != b.p || a.q != b.q || a.k != b.k || a.mode != b.mode)
    throw ConfigError("compare: configurations must share phi, k and mode");
  auto primary = [](const RunConfig& c) {
    const VortexProblem prob = make_problem(c);
    if (has_stage(c, "solve-complete") || has_stage(c, "two-solutions"))
      return solve_complete(prob, continuation_options(c)).field;
    if (has_stage(c, "solve-incomplete")) return solve_incomplete(prob, c).field;
    throw ConfigError("compare: pipeline has no solve stage");
  };
  const ScalarField wa = primary(a);
  const ScalarField wb = primary(b);
  const bool a_small = a.R <= b.R;
  const ScalarField& small = a_small ? wa : wb;
  const ScalarField& large = a_small ? wb : wa;
  const GridDomain& ds = small.domain();
  const GridDomain& dl = large.domain();

  CompareResult r;
  r.region_half_width = 0.5 * ds.half_width();
  r.max_difference = -1.0;
  for (int j = 0; j < ds.n(); ++j)
    for (int i = 0; i < ds.n(); ++i) {
      if (!ds.in_inner_square(i, j)) continue;
      const double si = (ds.x(i) + dl.half_width()) / dl.spacing();
      const double sj = (ds.y(j) + dl.half_width()) / dl.spacing();
      const double ri = std::round(si), rj = std::round(sj);
      if (std::abs(si - ri) > 1e-9 || std::abs(sj - rj) > 1e-9) continue;
      const double d = std::abs(small(i, j) - large(static_cast<int>(ri), static_cast<int>(rj)));
      ++r.shared_nodes;
      if (d > r.max_difference) {
        r.max_difference = d;
        r.witness_x = ds.x(i);
        r.witness_y = ds.y(j);
      }
    }
  if (r.shared_nodes == 0) throw ConfigError("compare: domains share no inner-square nodes");
  return r;
}

}  // namespace vortexlab
