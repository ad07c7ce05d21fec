#include "convexstate/report.hpp"

#include <sstream>

#include "convexstate/errors.hpp"

namespace convexstate {

OutputFormat parse_output_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw ParseError("unknown output format '" + s + "' (expected json, csv or text)");
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ri = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Json to_json(const HermitianMatrix& m) { return to_json(m.matrix()); }
Json to_json(const DensityMatrix& m) { return to_json(m.hermitian().matrix()); }

Json to_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Json to_json(const Ket& k) {
  Json re = Json::array(), im = Json::array();
  for (const auto& c : k) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

namespace {

Json labels_of(const VPolytope& k, const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(k.label(i));
  return out;
}

Json state_json(const State& s, const VPolytope* k) {
  if (const auto* v = std::get_if<VertexRef>(&s)) {
    Json j{{"vertex", v->index}};
    if (k != nullptr) j["label"] = k->label(v->index);
    return j;
  }
  if (const auto* b = std::get_if<Vec3>(&s)) return Json{{"bloch", to_json(*b)}};
  return Json{{"density", to_json(std::get<DensityMatrix>(s))}};
}

Json mixture_json(const VPolytope& k, const AmbiguousMixture& m) {
  return Json{{"kind", "ambiguous_mixture"},
              {"first_pair", labels_of(k, {m.w, m.x})},
              {"lambda", to_json(m.lambda)},
              {"second_pair", labels_of(k, {m.y, m.z})},
              {"mu", to_json(m.mu)},
              {"point", to_json(m.point)}};
}

}  // namespace

Json face_json(const VPolytope& k, const Face& f) {
  Json j{{"vertex_indices", f.vertex_indices}, {"labels", labels_of(k, f.vertex_indices)}};
  const BallDescriptor b = ball_descriptor(f);
  j["ball"] = b.n ? Json("B^" + std::to_string(*b.n)) : Json("not_a_ball");
  j["note"] = b.note;
  return j;
}

Json ratio_json(const RatioResult& r) {
  Json j;
  if (r.exact) {
    j["value"] = to_json(*r.exact);
  } else if (r.is_exact(1e-12)) {
    j["value"] = r.hi;
  }
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["lower_reason"] = r.lower_reason;
  if (r.full_space_value) j["full_space_value"] = *r.full_space_value;
  if (const auto* f = std::get_if<AffineFunctional<Rational>>(&r.witness)) {
    j["witness"] = Json{{"kind", "affine"}, {"normal", to_json(f->normal)}, {"offset", to_json(f->offset)}};
  } else if (const auto* g = std::get_if<AffineFunctional<double>>(&r.witness)) {
    j["witness"] = Json{{"kind", "affine"}, {"normal", g->normal}, {"offset", g->offset}};
  } else if (const auto* w = std::get_if<HermitianMatrix>(&r.witness)) {
    j["witness"] = Json{{"kind", "operator"}, {"matrix", to_json(*w)}};
  }
  if (r.lower_certificate) {
    const auto& c = *r.lower_certificate;
    j["lower_certificate"] = Json{{"t", c.t},
                                  {"delta", to_json(c.delta)},
                                  {"a", Json::array({c.a.real(), c.a.imag()})},
                                  {"b", Json::array({c.b.real(), c.b.imag()})},
                                  {"remainder", to_json(c.remainder)}};
  }
  return j;
}

Json ratio_matrix_json(const VPolytope& k) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < k.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < k.size(); ++j) row.push_back(to_string(*affine_ratio_polytope(k, i, j).exact));
    rows.push_back(std::move(row));
  }
  return Json{{"labels", k.labels()}, {"rows", std::move(rows)}};
}

Json superposability_json(const SuperposabilityCertificate& c, const VPolytope* k) {
  Json j{{"found", c.found}, {"method", c.method}};
  if (c.z) j["z"] = state_json(*c.z, k);
  j["ratio_xz"] = c.ratio_xz;
  j["ratio_yz"] = c.ratio_yz;
  if (c.a) j["overlaps"] = Json{{"a", *c.a}, {"b", *c.b}, {"c", *c.c}, {"d", *c.d}};
  if (c.search) {
    const auto& s = *c.search;
    Json maxima = Json::array();
    for (const auto& m : s.maximizers) {
      maxima.push_back(Json{{"a", m.a}, {"c", m.c}, {"value", m.value}, {"tp_xz", m.tp_xz}, {"tp_yz", m.tp_yz}});
    }
    Json near = Json::array();
    for (const auto& [a, cc] : s.near_max_grid_points) near.push_back(Json::array({a, cc}));
    j["overlap_search"] = Json{{"grid", s.grid},
                               {"max_value", s.max_value},
                               {"maximizers", std::move(maxima)},
                               {"near_tol", s.near_tol},
                               {"near_max_grid_points", std::move(near)}};
  }
  if (c.angle_sum) j["angle_sum"] = *c.angle_sum;
  if (!c.scan.empty()) {
    Json scan = Json::array();
    for (const auto& e : c.scan) {
      Json row{{"z", e.z}};
      if (k != nullptr) row["label"] = k->label(e.z);
      row["ratio_xz"] = to_json(e.ratio_xz);
      row["ratio_yz"] = to_json(e.ratio_yz);
      scan.push_back(std::move(row));
    }
    j["scan"] = std::move(scan);
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json path_json(const ProductPath& p) {
  Json pts = Json::array();
  for (const auto& pt : p.points) {
    pts.push_back(Json{{"a", to_json(bloch_vector(HermitianMatrix::projector(pt.factors.a)))},
                       {"b", to_json(bloch_vector(HermitianMatrix::projector(pt.factors.b)))},
                       {"moved", pt.moved == Subsystem::A ? "A" : "B"}});
  }
  return Json{{"points", p.points.size()}, {"max_step", p.max_step}, {"step_bound", p.step_bound},
              {"factor_bloch_vectors", std::move(pts)}};
}

Json verdict_json(const JBVerdict& v, const VPolytope* k) {
  Json j{{"verdict", to_string(v.admissible)}};
  j["failed_condition"] = v.failed_condition ? Json(to_string(*v.failed_condition)) : Json(nullptr);
  j["summary"] = v.summary;
  Json cert;
  if (const auto* ev = std::get_if<PolytopeEvidence>(&v.certificate); ev != nullptr && k != nullptr) {
    cert["affinely_independent"] = ev->simplex.affinely_independent;
    cert["unique_pair_decompositions"] = ev->simplex.unique_pair_decompositions;
    if (ev->simplex.certificate) cert["ambiguous_mixture"] = mixture_json(*k, *ev->simplex.certificate);
    if (ev->dependence) {
      const auto& d = *ev->dependence;
      cert["affine_dependence"] = Json{{"left", labels_of(*k, d.left)},
                                       {"lambda", to_json(d.lambda)},
                                       {"right", labels_of(*k, d.right)},
                                       {"mu", to_json(d.mu)},
                                       {"point", to_json(d.point)}};
    }
    if (ev->offending_pair) {
      const auto& pf = ev->pair_faces[*ev->offending_pair];
      cert["offending_face"] = Json{{"x", k->label(pf.x)}, {"y", k->label(pf.y)}, {"face", face_json(*k, pf.face)}};
    }
    Json faces = Json::array();
    for (const auto& pf : ev->pair_faces) {
      faces.push_back(Json{{"x", k->label(pf.x)},
                           {"y", k->label(pf.y)},
                           {"face", labels_of(*k, pf.face.vertex_indices)},
                           {"ball", pf.ball.n ? Json("B^" + std::to_string(*pf.ball.n)) : Json("not_a_ball")}});
    }
    cert["pair_faces"] = std::move(faces);
  } else if (const auto* sv = std::get_if<SeparableEvidence>(&v.certificate)) {
    cert["x"] = to_json(sv->x);
    cert["y"] = to_json(sv->y);
    cert["path"] = path_json(sv->path);
    cert["superposability"] = superposability_json(sv->superposability);
  }
  j["certificate"] = std::move(cert);
  return j;
}

Json cloning_json(const CloningCheckReport& r) {
  return Json{{"x", to_json(r.x)},
              {"y", to_json(r.y)},
              {"r", r.r},
              {"r_embed", r.r_embed},
              {"r_clone_bound", r.r_clone_bound},
              {"r_squared", r.r_squared},
              {"contradiction", r.contradiction}};
}

namespace {

Json channel_json(const KrausChannel& c) {
  Json ks = Json::array();
  for (const auto& k : c.kraus) ks.push_back(to_json(k));
  return Json{{"name", c.name}, {"kraus", std::move(ks)}, {"completeness_error", kraus_completeness_error(c)}};
}

}  // namespace

Json bit_commitment_json(const BitCommitmentReport& r) {
  Json transcript = Json::array();
  for (const auto& s : r.search.transcript) {
    transcript.push_back(Json{{"start", s.start}, {"residual", s.residual}, {"evaluations", s.evaluations}});
  }
  auto demo = [](const ChannelTranscript& t) {
    return Json{{"channel", channel_json(t.channel)},
                {"output", to_json(t.output)},
                {"distance_to_target", t.distance_to_target}};
  };
  return Json{{"D0", to_json(r.states.d0)},
              {"D1", to_json(r.states.d1)},
              {"E", to_json(r.states.e)},
              {"concealing", r.concealing},
              {"epr_pt_min_eigenvalue", r.epr_pt_min_eigenvalue},
              {"epr_separable", r.epr_separable},
              {"qm_unbinding_demonstrated", r.qm_unbinding_demonstrated},
              {"qm_unbinding", Json{{"to_D0", demo(r.demo.to_d0)},
                                    {"to_D1", demo(r.demo.to_d1)},
                                    {"outputs_separable", r.demo.outputs_separable}}},
              {"schr_binding_residual", r.search.residual},
              {"binding_search", Json{{"support", r.search.support},
                                      {"starts", r.search.starts},
                                      {"seed", r.search.seed},
                                      {"best_start", r.search.best_start},
                                      {"transcript", std::move(transcript)},
                                      {"sigma", to_json(r.search.sigma)},
                                      {"channel0", channel_json(r.search.channel0)},
                                      {"channel1", channel_json(r.search.channel1)}}},
              {"conclusion", r.conclusion}};
}

namespace {

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array()) {
    if (j.empty()) out.emplace_back(path, "[]");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out.emplace_back(path, j.get<std::string>());
  } else {
    out.emplace_back(path, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string render(const Json& j, OutputFormat format) {
  if (format == OutputFormat::Json) return j.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::ostringstream os;
  if (format == OutputFormat::Csv) {
    os << "path,value\n";
    for (const auto& [p, v] : rows) os << csv_field(p) << ',' << csv_field(v) << '\n';
  } else {
    for (const auto& [p, v] : rows) os << p << ": " << v << '\n';
  }
  return os.str();
}

}  // namespace convexstate
