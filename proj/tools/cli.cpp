#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "convexstate/errors.hpp"
#include "convexstate/jb.hpp"
#include "convexstate/protocols.hpp"
#include "convexstate/report.hpp"
#include "convexstate/theory_io.hpp"
#include "convexstate/traceability.hpp"
#include "convexstate/zoo.hpp"

namespace convexstate::cli {

namespace {

// Tokens such as "-e1" or "-1,0,0" would look like options to the parser, and
// "++" / "--" (product labels) are parser separators; all are shielded with
// this prefix and unshielded when resolved. A bare "--" is therefore a label.
constexpr char kShield = '\x1f';

std::string unshield(std::string s) {
  if (!s.empty() && s[0] == kShield) s.erase(0, 1);
  return s;
}

struct Config {
  std::string format = "json";
  std::string out_path;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--out", cfg.out_path, "Write the report to this file");
  sub->add_option("--tol", cfg.tol, "Equality tolerance (overrides CONVEXSTATE_TOL)")->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "Seed for stochastic searches");
}

Tolerances resolve_tolerances(const Config& cfg) {
  Tolerances tol;
  if (cfg.tol) {
    tol.equality = *cfg.tol;
  } else if (const char* env = std::getenv("CONVEXSTATE_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw ParseError(std::string("CONVEXSTATE_TOL: expected a positive number, got '") + env + "'");
    }
    tol.equality = v;
  }
  return tol;
}

StateSpaceHandle resolve_theory(const std::string& name) {
  const auto names = zoo_names();
  const bool zoo = name.rfind("simplex:", 0) == 0 || std::find(names.begin(), names.end(), name) != names.end();
  if (zoo) return make_zoo(name);
  if (std::filesystem::exists(name)) {
    VPolytope k = load_theory(name);
    std::string label = k.name().empty() ? name : k.name();
    return StateSpaceHandle(std::move(label), std::move(k));
  }
  std::string known;
  for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
  throw ParseError("unknown theory '" + name + "': not a zoo name (" + known + ") and no such file");
}

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(parse_rational(item)));
  return out;
}

bool looks_like_numbers(const std::string& s) {
  return !s.empty() && std::string("0123456789+-.").find(s[0]) != std::string::npos &&
         s.find_first_not_of("0123456789+-.,/eE ") == std::string::npos &&
         s.find_first_of("0123456789") != std::string::npos;
}

DensityMatrix load_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("state file '" + path + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("re")) throw ParseError("state file '" + path + "': expected an object with \"re\"");
  const auto& re = j["re"];
  if (!re.is_array() || re.empty()) throw ParseError("state file '" + path + "': \"re\" must be a square array");
  const std::size_t n = re.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!re[i].is_array() || re[i].size() != n) {
      throw ParseError("state file '" + path + "': re[" + std::to_string(i) + "] must have " + std::to_string(n) +
                       " entries");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double im = j.contains("im") ? j["im"].at(i).at(k).get<double>() : 0.0;
      m(i, k) = Complex(re[i][k].get<double>(), im);
    }
  }
  return DensityMatrix(HermitianMatrix(m));
}

State resolve_state(const StateSpaceHandle& h, const std::string& raw) {
  const std::string token = unshield(raw);
  switch (h.kind()) {
    case SpaceKind::VPolytope: {
      const VPolytope& k = h.polytope();
      if (auto i = k.find_label(token)) return VertexRef{*i};
      if (!token.empty() && token.find_first_not_of("0123456789") == std::string::npos) {
        const std::size_t i = std::stoul(token);
        if (i < k.size()) return VertexRef{i};
        throw DomainError("vertex index " + token + " out of range (theory has " + std::to_string(k.size()) +
                          " vertices)");
      }
      if (looks_like_numbers(token)) {
        RationalPoint p;
        std::stringstream ss(token);
        std::string item;
        while (std::getline(ss, item, ',')) p.push_back(parse_rational(item));
        if (auto i = k.find_vertex(p)) return VertexRef{*i};
        throw DomainError("point (" + token + ") is not a vertex of '" + h.name() + "'");
      }
      throw DomainError("state '" + token + "' is not a vertex label, index or coordinate list of '" + h.name() + "'");
    }
    case SpaceKind::BlochBall: {
      if (token.size() == 1 && std::string("01+-").find(token[0]) != std::string::npos) {
        return bloch_vector(HermitianMatrix::projector(qubit_ket(token[0])));
      }
      if (!looks_like_numbers(token)) throw DomainError("state '" + token + "' is not a Bloch vector");
      const auto v = parse_numbers(token);
      if (v.size() != 3) throw DomainError("Bloch vector '" + token + "' must have three components");
      return Vec3{v[0], v[1], v[2]};
    }
    case SpaceKind::FullQuantum:
    case SpaceKind::Separable2x2: {
      if (token.size() == 2 && token.find_first_not_of("01+-") == std::string::npos) {
        return DensityMatrix::pure(product_ket(token));
      }
      if (std::filesystem::exists(token)) return load_density(token);
      throw DomainError("state '" + token + "' is neither a two-qubit product label (e.g. 01, +-) nor a state file");
    }
  }
  throw InvariantViolation("resolve_state: unknown state space kind");
}

Json theory_header(const std::string& command, const StateSpaceHandle& h) {
  Json j{{"command", command}, {"theory", h.name()}, {"kind", to_string(h.kind())}};
  if (h.kind() == SpaceKind::VPolytope) {
    j["vertices"] = h.polytope().size();
    j["labels"] = h.polytope().labels();
  }
  return j;
}

Json analyze(const StateSpaceHandle& h, std::size_t steps, std::size_t grid, const Tolerances& tol) {
  Json j = theory_header("analyze", h);
  switch (h.kind()) {
    case SpaceKind::VPolytope: {
      const VPolytope& k = h.polytope();
      const JBVerdict v = root_theorem_check_polytope(k);
      j["verdict"] = verdict_json(v, &k);
      j["certificate_revalidated"] = revalidate(k, v);
      Json matrix = ratio_matrix_json(k);
      bool identity = true;
      for (std::size_t r = 0; r < k.size(); ++r) {
        for (std::size_t c = 0; c < k.size(); ++c) identity = identity && matrix["rows"][r][c] == (r == c ? "1" : "0");
      }
      j["ratio_matrix"] = std::move(matrix);
      j["ratio_matrix_identity_pattern"] = identity;
      break;
    }
    case SpaceKind::Separable2x2: {
      Json checks = Json::array();
      std::optional<Json> primary;
      for (const auto& [a, b] : {std::pair{"01", "10"}, std::pair{"00", "11"}}) {
        const DensityMatrix x = DensityMatrix::pure(product_ket(a));
        const DensityMatrix y = DensityMatrix::pure(product_ket(b));
        const JBVerdict v = root_theorem_check_separable(x, y, steps, grid, tol);
        Json c{{"x", a}, {"y", b}, {"verdict", verdict_json(v)}, {"certificate_revalidated", revalidate(v, tol)}};
        if (!primary) primary = c["verdict"];
        checks.push_back(std::move(c));
      }
      j["verdict"] = *primary;
      j["checks"] = std::move(checks);
      break;
    }
    case SpaceKind::BlochBall:
    case SpaceKind::FullQuantum: {
      State x, y;
      if (h.kind() == SpaceKind::BlochBall) {
        x = Vec3{0.0, 0.0, 1.0};
        y = Vec3{0.0, 0.0, -1.0};
      } else {
        x = DensityMatrix::pure(product_ket("00"));
        y = DensityMatrix::pure(product_ket("11"));
      }
      SuperposabilityOptions opts;
      opts.tol = tol;
      const auto cert = superposability_search(h, x, y, opts);
      j["verdict"] = Json{{"verdict", "not_refuted"},
                          {"failed_condition", nullptr},
                          {"summary", cert.found ? "orthogonal pure states are superposable; no necessary condition fails"
                                                 : "no certified obstruction"},
                          {"certificate", Json{{"superposability", superposability_json(cert)}}}};
      break;
    }
  }
  return j;
}

void emit(const Json& j, const Config& cfg, std::ostream& out, const std::string& text_override = {}) {
  const OutputFormat f = parse_output_format(cfg.format);
  const std::string body = (f == OutputFormat::Text && !text_override.empty()) ? text_override : render(j, f);
  if (cfg.out_path.empty()) {
    out << body;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw ParseError("cannot open output file '" + cfg.out_path + "'");
  file << body;
}

std::string trace_table_text() {
  const auto& t = traceability_table();
  std::size_t w0 = 5, w1 = 9;
  for (const auto& e : t) {
    w0 = std::max(w0, e.claim.size());
    w1 = std::max(w1, e.operation.size());
  }
  std::ostringstream os;
  auto row = [&](const std::string& a, const std::string& b, const std::string& c) {
    os << a << std::string(w0 - a.size() + 2, ' ') << b << std::string(w1 - b.size() + 2, ' ') << c << '\n';
  };
  row("claim", "operation", "check");
  row(std::string(w0, '-'), std::string(w1, '-'), "-----");
  for (const auto& e : t) row(e.claim, e.operation, e.check);
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convex state-space analysis: transition probabilities, faces and JB-algebra necessary conditions",
               "convexstate"};
  app.require_subcommand(1);
  Config cfg;
  std::string theory, x_tok, y_tok, mode = "rational";
  std::size_t steps = 64, grid = 1024;

  auto* analyze_cmd = app.add_subcommand("analyze", "Verdict and supporting checks for a theory");
  analyze_cmd->add_option("theory", theory, "Zoo name or theory file")->required();
  analyze_cmd->add_option("--steps", steps, "Path segments per leg (separable)")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--grid", grid, "Overlap-square grid side (separable)")->check(CLI::Range(2, 1 << 14));

  auto* ratio_cmd = app.add_subcommand("ratio", "Affine ratio r(x, y)");
  ratio_cmd->add_option("theory", theory)->required();
  ratio_cmd->add_option("x", x_tok)->required();
  ratio_cmd->add_option("y", y_tok)->required();
  ratio_cmd->add_option("--mode", mode, "LP arithmetic for polytopes")->check(CLI::IsMember({"rational", "float"}));

  auto* sup_cmd = app.add_subcommand("superposable", "Search for z with r(x,z) = r(y,z) = 1/2");
  sup_cmd->add_option("theory", theory)->required();
  sup_cmd->add_option("x", x_tok)->required();
  sup_cmd->add_option("y", y_tok)->required();
  sup_cmd->add_option("--grid", grid, "Overlap-square grid side (separable)")->check(CLI::Range(2, 1 << 14));

  auto* face_cmd = app.add_subcommand("face", "Minimal face of x, or face(x, y), in a polytope theory");
  face_cmd->add_option("theory", theory)->required();
  face_cmd->add_option("x", x_tok)->required();
  face_cmd->add_option("y", y_tok);

  auto* proto_cmd = app.add_subcommand("protocol", "Information-theoretic checks");
  proto_cmd->require_subcommand(1);
  BindingSearchOptions bc_opts;
  auto* bc_cmd = proto_cmd->add_subcommand("bc", "Bit-commitment analysis");
  bc_cmd->add_option("--starts", bc_opts.starts, "Multi-start count")->check(CLI::PositiveNumber);
  bc_cmd->add_option("--support", bc_opts.support, "Product states in the attack mixture")->check(CLI::PositiveNumber);
  bc_cmd->add_option("--budget", bc_opts.evaluations_per_start, "Evaluations per start")->check(CLI::PositiveNumber);
  double angle = 60.0;
  auto* clone_cmd = proto_cmd->add_subcommand("clone", "No-cloning chain for two Bloch vectors");
  clone_cmd->add_option("--bloch-angle", angle, "Angle between the Bloch vectors in degrees");

  auto* trace_cmd = app.add_subcommand("trace", "Claim-to-operation traceability table");

  for (auto* sub : {analyze_cmd, ratio_cmd, sup_cmd, face_cmd, bc_cmd, clone_cmd, trace_cmd}) add_common(sub, cfg);

  std::vector<std::string> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    const bool dash_token = (a.size() > 1 && a[0] == '-' && a[1] != '-' && a != "-h") || a == "--" || a == "++";
    argv.push_back(dash_token ? kShield + a : a);
  }
  std::reverse(argv.begin(), argv.end());

  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const Tolerances tol = resolve_tolerances(cfg);
    parse_output_format(cfg.format);
    if (*analyze_cmd) {
      emit(analyze(resolve_theory(theory), steps, grid, tol), cfg, out);
    } else if (*ratio_cmd) {
      const StateSpaceHandle h = resolve_theory(theory);
      const State x = resolve_state(h, x_tok), y = resolve_state(h, y_tok);
      Json j = theory_header("ratio", h);
      j["x"] = unshield(x_tok);
      j["y"] = unshield(y_tok);
      if (h.kind() == SpaceKind::VPolytope) {
        const auto& k = h.polytope();
        const LPMode m = mode == "float" ? LPMode::Float : LPMode::Rational;
        j["ratio"] = ratio_json(affine_ratio_polytope(k, std::get<VertexRef>(x).index, std::get<VertexRef>(y).index, m));
      } else {
        j["ratio"] = ratio_json(affine_ratio(h, x, y, tol));
      }
      emit(j, cfg, out);
    } else if (*sup_cmd) {
      const StateSpaceHandle h = resolve_theory(theory);
      const State x = resolve_state(h, x_tok), y = resolve_state(h, y_tok);
      SuperposabilityOptions opts;
      opts.grid = grid;
      opts.tol = tol;
      Json j = theory_header("superposable", h);
      j["x"] = unshield(x_tok);
      j["y"] = unshield(y_tok);
      const VPolytope* k = h.kind() == SpaceKind::VPolytope ? &h.polytope() : nullptr;
      j["result"] = superposability_json(superposability_search(h, x, y, opts), k);
      emit(j, cfg, out);
    } else if (*face_cmd) {
      const StateSpaceHandle h = resolve_theory(theory);
      const VPolytope& k = h.polytope();
      auto point = [&](const std::string& tok) {
        const std::string t = unshield(tok);
        if (looks_like_numbers(t) && t.find(',') != std::string::npos) {
          RationalPoint p;
          std::stringstream ss(t);
          std::string item;
          while (std::getline(ss, item, ',')) p.push_back(parse_rational(item));
          if (p.size() != k.ambient_dim()) {
            throw DomainError("point (" + t + ") has " + std::to_string(p.size()) + " coordinates, expected " +
                              std::to_string(k.ambient_dim()));
          }
          return p;
        }
        return k.vertex(std::get<VertexRef>(resolve_state(h, tok)).index);
      };
      const RationalPoint px = point(x_tok);
      const Face f = y_tok.empty() ? minimal_face(k, px) : generated_face(k, px, point(y_tok));
      Json j = theory_header("face", h);
      j["x"] = unshield(x_tok);
      if (!y_tok.empty()) j["y"] = unshield(y_tok);
      j["face"] = face_json(k, f);
      j["is_face"] = is_face(k, f.vertex_indices);
      emit(j, cfg, out);
    } else if (*bc_cmd) {
      bc_opts.seed = cfg.seed;
      Json j{{"command", "protocol bc"}};
      j["report"] = bit_commitment_json(bit_commitment_report(bc_opts));
      emit(j, cfg, out);
    } else if (*clone_cmd) {
      const double rad = angle * std::numbers::pi / 180.0;
      const Vec3 x{0.0, 0.0, 1.0};
      const Vec3 y{std::sin(rad), 0.0, std::cos(rad)};
      Json j{{"command", "protocol clone"}, {"bloch_angle_degrees", angle}};
      j["report"] = cloning_json(cloning_contradiction(x, y, tol));
      emit(j, cfg, out);
    } else if (*trace_cmd) {
      Json entries = Json::array();
      for (const auto& e : traceability_table()) {
        entries.push_back(Json{{"claim", e.claim}, {"operation", e.operation}, {"check", e.check}});
      }
      emit(Json{{"command", "trace"}, {"entries", std::move(entries)}}, cfg, out, trace_table_text());
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
  return kOk;
}

}  // namespace convexstate::cli
