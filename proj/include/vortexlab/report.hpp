#pragma once

// JSON and CSV serialization of solver, invariant and ray reports.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortexlab/solver.hpp"
#include "vortexlab/verify.hpp"

namespace vortexlab {

inline constexpr const char* kVersion = "0.1.0";

nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const InvariantReport& r);

/// Verdict summary of one ray (no samples).
nlohmann::json to_json(const RayProfile& p, const std::string& branch);

/// CSV with header `theta,r,length`, one line per sample of every ray.
void write_rays_csv(const std::vector<RayProfile>& rays, const std::filesystem::path& path);

/// Writes `j` with two-space indentation and a trailing newline.
void write_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace vortexlab
