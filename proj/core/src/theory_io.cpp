#include "convexstate/theory_io.hpp"

#include <fstream>
#include <sstream>

#include "convexstate/errors.hpp"

namespace convexstate {

namespace {

Rational coordinate(const nlohmann::json& value, const std::string& where) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number_unsigned()) return Rational(value.get<unsigned long long>());
    // Shortest round-trip decimal text, read exactly: 0.1 means 1/10.
    if (value.is_number_float()) return parse_rational(value.dump());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected a number or a \"p/q\" string, got " + std::string(value.type_name()));
}

}  // namespace

VPolytope parse_theory(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Report the 1-based line of the failing byte.
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) line += text[i] == '\n' ? 1 : 0;
    throw ParseError("line " + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw ParseError("theory file: top level must be an object");

  std::string name = "unnamed";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("name: expected a string");
    name = doc["name"].get<std::string>();
  }
  if (!doc.contains("ambient_dim")) throw ParseError("ambient_dim: missing field");
  if (!doc["ambient_dim"].is_number_unsigned() || doc["ambient_dim"].get<std::size_t>() == 0) {
    throw ParseError("ambient_dim: expected a positive integer");
  }
  const auto dim = doc["ambient_dim"].get<std::size_t>();
  if (!doc.contains("vertices")) throw ParseError("vertices: missing field");
  const auto& verts = doc["vertices"];
  if (!verts.is_array() || verts.empty()) throw ParseError("vertices: expected a non-empty array");

  std::vector<RationalPoint> points;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    if (!verts[i].is_array()) throw ParseError(where + ": expected an array of coordinates");
    if (verts[i].size() != dim) {
      throw ParseError(where + ": has " + std::to_string(verts[i].size()) + " coordinates, ambient_dim is " +
                       std::to_string(dim));
    }
    RationalPoint p;
    for (std::size_t j = 0; j < dim; ++j) p.push_back(coordinate(verts[i][j], where + "[" + std::to_string(j) + "]"));
    points.push_back(std::move(p));
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const auto& l = doc["labels"];
    if (!l.is_array() || l.size() != points.size()) throw ParseError("labels: expected one string per vertex");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_string()) throw ParseError("labels[" + std::to_string(i) + "]: expected a string");
      labels.push_back(l[i].get<std::string>());
    }
  }
  try {
    return VPolytope(dim, std::move(points), std::move(name), std::move(labels));
  } catch (const DomainError& e) {
    throw ParseError(std::string("vertices: ") + e.what());
  }
}

VPolytope load_theory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open theory file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_theory(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

nlohmann::json theory_to_json(const VPolytope& k) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : k.vertices()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : v) row.push_back(to_string(c));
    verts.push_back(std::move(row));
  }
  return {{"name", k.name()}, {"ambient_dim", k.ambient_dim()}, {"vertices", std::move(verts)}, {"labels", k.labels()}};
}

}  // namespace convexstate
