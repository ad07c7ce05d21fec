#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "convexstate/polytope.hpp"

namespace convexstate {

/// Theory files:
///   {"name": "...", "ambient_dim": 3, "vertices": [[1, 0, "1/2"], ...]}
/// Coordinates are JSON numbers or "p/q" strings; both are read exactly.
/// Optional "labels": ["e1", ...] names the vertices.
VPolytope parse_theory(const std::string& text);
VPolytope load_theory(const std::filesystem::path& path);
nlohmann::json theory_to_json(const VPolytope& k);

}  // namespace convexstate
