#include "vortexlab/report.hpp"

#include <fstream>

#include <fmt/format.h>

namespace vortexlab {

nlohmann::json to_json(const SolveReport& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const ContinuationStep& s : r.continuation_trace)
    trace.push_back({{"offset", s.offset},
                     {"inner_change", s.inner_change},
                     {"iterations", s.iterations},
                     {"final_residual", s.final_residual}});
  return {{"method", r.method},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"final_residual", r.final_residual},
          {"residual_history", r.residual_history},
          {"boundary_kind", to_string(r.boundary_kind)},
          {"monotone_violations", r.monotone_violations},
          {"band_violations", r.band_violations},
          {"continuation_trace", trace},
          {"stabilized", r.stabilized}};
}

nlohmann::json to_json(const InvariantReport& r) {
  return {{"name", r.name},
          {"passed", r.passed},
          {"witness", {{"x", r.witness_x}, {"y", r.witness_y}, {"value", r.witness_value}}},
          {"margin", r.margin},
          {"tolerance", r.tolerance}};
}

nlohmann::json to_json(const RayProfile& p, const std::string& branch) {
  return {{"branch", branch},
          {"theta", p.theta},
          {"verdict", to_string(p.verdict)},
          {"radius", p.r.empty() ? 0.0 : p.r.back()},
          {"length", p.length.empty() ? 0.0 : p.length.back()},
          {"tail_slope", p.tail_slope},
          {"limit_estimate", p.limit_estimate}};
}

void write_rays_csv(const std::vector<RayProfile>& rays, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("write_rays_csv: cannot open " + path.string());
  out << "theta,r,length\n";
  for (const RayProfile& p : rays)
    for (std::size_t m = 0; m < p.r.size(); ++m)
      out << fmt::format("{:.17g},{:.17g},{:.17g}\n", p.theta, p.r[m], p.length[m]);
  if (!out) throw Error("write_rays_csv: write failed for " + path.string());
}

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("write_json: cannot open " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error("write_json: write failed for " + path.string());
}

}  // namespace vortexlab
