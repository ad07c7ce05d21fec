#include "convexstate/transition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "convexstate/errors.hpp"

namespace convexstate {

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::VPolytope: return "vpolytope";
    case SpaceKind::BlochBall: return "bloch_ball";
    case SpaceKind::FullQuantum: return "full_quantum";
    case SpaceKind::Separable2x2: return "separable_2x2";
  }
  return "unknown";
}

const VPolytope& StateSpaceHandle::polytope() const {
  if (const auto* k = std::get_if<VPolytope>(&payload_)) return *k;
  throw DomainError("state space '" + name_ + "' is not a polytope");
}

namespace {

constexpr std::pair<std::size_t, std::size_t> kQubits{2, 2};

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

bool is_separable_cone_member(const HermitianMatrix& m, double slack) {
  return min_eigenvalue(m) >= -slack && min_eigenvalue(partial_transpose(m, Subsystem::A, kQubits)) >= -slack;
}

// 2x2 unitary with columns (v, v_perp).
ComplexMatrix frame(const Ket& v) {
  const Ket p = orthogonal_complement(v);
  return ComplexMatrix{{v[0], p[0]}, {v[1], p[1]}};
}

const DensityMatrix& require_density(const State& s, const char* what) {
  if (const auto* d = std::get_if<DensityMatrix>(&s)) return *d;
  throw DomainError(std::string(what) + ": expected a density matrix state");
}

std::size_t require_vertex(const State& s, const VPolytope& k, const char* what) {
  const auto* v = std::get_if<VertexRef>(&s);
  if (v == nullptr) throw DomainError(std::string(what) + ": expected a vertex of the polytope");
  if (v->index >= k.size()) {
    throw DomainError(std::string(what) + ": vertex index " + std::to_string(v->index) + " out of range (polytope has " +
                      std::to_string(k.size()) + " vertices)");
  }
  return v->index;
}

Vec3 require_bloch(const State& s, const char* what) {
  if (const auto* v = std::get_if<Vec3>(&s)) return *v;
  if (const auto* d = std::get_if<DensityMatrix>(&s); d != nullptr && d->dim() == 2) return bloch_vector(d->hermitian());
  throw DomainError(std::string(what) + ": expected a Bloch vector");
}

Ket top_eigenvector(const HermitianMatrix& h) {
  const auto eig = eigh(h);
  Ket v(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) v[i] = eig.vectors(i, h.dim() - 1);
  return v;
}

struct SecondOrderTerms {
  HermitianMatrix tangent;
  HermitianMatrix second_order;
};

SecondOrderTerms second_order_terms(const ProductKet& x, const Ket& delta, Complex a, Complex b) {
  const Ket xa_perp = orthogonal_complement(x.a);
  const Ket xb_perp = orthogonal_complement(x.b);
  const Ket xk = x.joint();
  const Ket perp_perp = kron(xa_perp, xb_perp);
  Ket d2 = kron(xa_perp, x.b);
  const Ket d2b = kron(x.a, xb_perp);
  for (std::size_t i = 0; i < 4; ++i) d2[i] = a * d2[i] + b * d2b[i];
  const ComplexMatrix xd = ComplexMatrix::outer(xk, delta);
  const ComplexMatrix cross = ComplexMatrix::outer(perp_perp, xk);
  ComplexMatrix h = ComplexMatrix::outer(d2, d2) + (a * b) * cross + std::conj(a * b) * cross.adjoint() -
                    (std::norm(a) + std::norm(b)) * ComplexMatrix::outer(xk, xk);
  return {make_hermitian_unchecked(xd + xd.adjoint()), make_hermitian_unchecked(h)};
}

}  // namespace

ProductKet require_pure_product(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 4) throw DomainError(std::string(what) + ": expected a two-qubit (4x4) state");
  if (!rho.is_pure(1e-9)) throw DomainError(std::string(what) + ": state is not pure");
  auto pk = factor_pure_product(rho, 1e-9);
  if (!pk) throw DomainError(std::string(what) + ": state is entangled, not a pure product state");
  return *pk;
}

// ---------------------------------------------------------------------------
// Ratios

RatioResult affine_ratio_polytope(const VPolytope& k, std::size_t x, std::size_t y, LPMode mode) {
  if (x >= k.size() || y >= k.size()) {
    throw DomainError("affine_ratio_polytope: vertex index out of range (polytope has " + std::to_string(k.size()) +
                      " vertices)");
  }
  const std::size_t d = k.ambient_dim();
  auto row = [d](const RationalPoint& p) {
    RationalVector r(p.begin(), p.end());
    r.push_back(1);
    (void)d;
    return r;
  };
  LPProblem<Rational> lp;
  lp.objective = row(k.vertex(y));
  lp.bounds.assign(d + 1, VariableBounds<Rational>::free());
  for (const auto& v : k.vertices()) {
    lp.add(row(v), Sense::GreaterEqual, 0);
    lp.add(row(v), Sense::LessEqual, 1);
  }
  lp.add(row(k.vertex(x)), Sense::Equal, 1);

  LPProblem<Rational> tie = lp;
  tie.direction = Direction::Maximize;
  tie.objective.assign(d + 1, Rational(1));
  tie.objective[d] = 0;

  RatioResult out;
  out.lower_reason = "exact";
  if (mode == LPMode::Rational) {
    const auto first = lp_solve(lp);
    if (!first.optimal()) throw InvariantViolation("affine_ratio_polytope: ratio LP is not optimal");
    tie.add(row(k.vertex(y)), Sense::Equal, first.value);
    const auto second = lp_solve(tie);
    const auto& point = second.optimal() ? second.point : first.point;
    AffineFunctional<Rational> f{RationalVector(point.begin(), point.begin() + static_cast<std::ptrdiff_t>(d)), point[d]};
    out.exact = first.value;
    out.lo = out.hi = to_double(first.value);
    out.witness = std::move(f);
  } else {
    const auto flp = to_float(lp);
    const auto first = lp_solve(flp);
    if (!first.optimal()) throw InvariantViolation("affine_ratio_polytope: ratio LP is not optimal");
    auto ftie = to_float(tie);
    ftie.add(to_double(row(k.vertex(y))), Sense::Equal, first.value);
    const auto second = lp_solve(ftie);
    const auto& point = second.optimal() ? second.point : first.point;
    AffineFunctional<double> f{std::vector<double>(point.begin(), point.begin() + static_cast<std::ptrdiff_t>(d)), point[d]};
    out.lo = out.hi = clamp01(first.value);
    out.witness = std::move(f);
  }
  return out;
}

double affine_ratio_bloch(const Vec3& x, const Vec3& y, const Tolerances& tol) {
  if (std::abs(norm(x) - 1.0) > tol.equality || std::abs(norm(y) - 1.0) > tol.equality) {
    throw DomainError("affine_ratio_bloch: inputs must be unit vectors (pure states)");
  }
  return 0.5 * (1.0 + dot(x, y));
}

double affine_ratio_quantum(const DensityMatrix& e, const DensityMatrix& f, const Tolerances& tol) {
  if (e.dim() != f.dim()) throw DomainError("affine_ratio_quantum: dimension mismatch");
  if (!e.is_pure(tol.equality) || !f.is_pure(tol.equality)) {
    throw DomainError("affine_ratio_quantum: inputs must be rank-one projections");
  }
  return trace_product(e.hermitian(), f.hermitian());
}

bool validate_separable_witness(const HermitianMatrix& w, const DensityMatrix& x, const Tolerances& tol) {
  if (w.dim() != 4 || x.dim() != 4) return false;
  if (std::abs(trace_product(w, x.hermitian()) - 1.0) > tol.equality) return false;
  if (max_eigenvalue(w) > 1.0 + tol.psd_slack) return false;
  return min_eigenvalue(partial_transpose(w, Subsystem::A, kQubits)) >= -tol.psd_slack;
}

bool validate_decomposition(const DecompositionCertificate& c, const DensityMatrix& x, const DensityMatrix& y,
                            const Tolerances& tol) {
  if (c.t < 0.0 || c.t > 1.0 + tol.equality || c.delta.size() != 4) return false;
  const ProductKet px = require_pure_product(x, "validate_decomposition");
  const Ket xk = px.joint();
  const Ket perp_perp = kron(orthogonal_complement(px.a), orthogonal_complement(px.b));
  if (std::abs(inner(xk, c.delta)) > tol.equality || std::abs(inner(perp_perp, c.delta)) > tol.equality) return false;
  const auto terms = second_order_terms(px, c.delta, c.a, c.b);
  if (hs_distance(terms.tangent, c.tangent) > tol.equality) return false;
  if (hs_distance(terms.second_order, c.second_order) > tol.equality) return false;
  const HermitianMatrix expected = y.hermitian() - c.t * x.hermitian() + c.tangent + c.second_order;
  if (hs_distance(expected, c.remainder) > tol.equality) return false;
  return is_separable_cone_member(c.remainder, tol.psd_slack);
}

RatioResult affine_ratio_separable(const DensityMatrix& x, const DensityMatrix& y, const SeparableRatioOptions& options) {
  const auto& tol = options.tol;
  const ProductKet px = require_pure_product(x, "affine_ratio_separable");
  const ProductKet py = require_pure_product(y, "affine_ratio_separable");

  RatioResult out;
  const double full = clamp01(trace_product(x.hermitian(), y.hermitian()));
  out.full_space_value = full;
  out.hi = full;
  out.witness = x.hermitian();

  // Witness W = Q^Gamma written in the frame (x_A, x_A^perp) (x) (x_B, x_B^perp).
  const Complex a0 = inner(px.a, py.a);
  const Complex a1 = inner(orthogonal_complement(px.a), py.a);
  const Complex b0 = inner(px.b, py.b);
  const Complex b1 = inner(orthogonal_complement(px.b), py.b);
  const double p = std::abs(a0 * b0);
  const double q = std::abs(a1 * b1);
  const double root_nu = q > 0.0 ? std::min(1.0, p / q) : 0.0;
  if (root_nu > 0.0) {
    const double phase = std::arg(std::conj(a1) * std::conj(b0) * a0 * b1);
    ComplexMatrix w0(4, 4);
    w0(0, 0) = 1.0;
    w0(3, 3) = root_nu * root_nu;
    w0(2, 1) = -root_nu * std::polar(1.0, -phase);
    w0(1, 2) = -root_nu * std::polar(1.0, phase);
    const ComplexMatrix u = tensor(frame(px.a), frame(px.b));
    const HermitianMatrix w = make_hermitian_unchecked(u * w0 * u.adjoint());
    const double value = clamp01(trace_product(w, y.hermitian()));
    if (value < out.hi && validate_separable_witness(w, x, tol)) {
      out.hi = value;
      out.witness = w;
    }
  }

  if (hs_distance(x.hermitian(), y.hermitian()) <= tol.equality) {
    out.lo = out.hi = 1.0;
    out.lower_reason = "trivial";
    return out;
  }
  if (out.hi <= tol.equality) {
    out.lo = 0.0;
    out.lower_reason = "trivial";
    return out;
  }
  // Lower bound, in the frame of x's factors with phases removed from y:
  // t = (p - q)^2, delta = -(p - q)(m1 |01> + m2 |10>), a = -b = sqrt(q (p - q)),
  // where m1 = |alpha_0 beta_1|, m2 = |alpha_1 beta_0|. The remainder is then
  // a sum of two real product states.
  out.lo = 0.0;
  out.lower_reason = "trivial";
  if (p > q) {
    const double gap = p - q;
    const double chi_a = std::arg(a1) - std::arg(a0);
    const double chi_b = std::arg(b1) - std::arg(b0);
    const double m1 = std::abs(a0) * std::abs(b1);
    const double m2 = std::abs(a1) * std::abs(b0);
    Ket delta_frame{0.0, -gap * m1 * std::polar(1.0, chi_b), -gap * m2 * std::polar(1.0, chi_a), 0.0};
    const ComplexMatrix f = tensor(frame(px.a), frame(px.b));
    const Ket delta = f * delta_frame;
    const double amp = std::sqrt(q * gap);
    const Complex ca = std::polar(amp, chi_a);
    const Complex cb = -std::polar(amp, chi_b);
    auto terms = second_order_terms(px, delta, ca, cb);
    const double t = gap * gap;
    DecompositionCertificate cert{t, delta, ca, cb, terms.tangent, terms.second_order, {}};
    cert.remainder = y.hermitian() - t * x.hermitian() + cert.tangent + cert.second_order;
    if (validate_decomposition(cert, x, y, tol)) {
      out.lo = std::min(t, out.hi);
      out.lower_reason = "decomposition";
      out.lower_certificate = std::move(cert);
    }
  }
  return out;
}

RatioResult affine_ratio(const StateSpaceHandle& h, const State& x, const State& y, const Tolerances& tol) {
  switch (h.kind()) {
    case SpaceKind::VPolytope: {
      const auto& k = h.polytope();
      return affine_ratio_polytope(k, require_vertex(x, k, "affine_ratio"), require_vertex(y, k, "affine_ratio"));
    }
    case SpaceKind::BlochBall: {
      RatioResult r;
      const Vec3 bx = require_bloch(x, "affine_ratio");
      const Vec3 by = require_bloch(y, "affine_ratio");
      r.lo = r.hi = affine_ratio_bloch(bx, by, tol);
      r.lower_reason = "closed_form";
      r.witness = AffineFunctional<double>{{0.5 * bx[0], 0.5 * bx[1], 0.5 * bx[2]}, 0.5};
      return r;
    }
    case SpaceKind::FullQuantum: {
      const auto& dx = require_density(x, "affine_ratio");
      const auto& dy = require_density(y, "affine_ratio");
      const std::size_t dim = std::get<FullQuantum>(h.payload()).dim;
      if (dx.dim() != dim || dy.dim() != dim) throw DomainError("affine_ratio: state dimension does not match the space");
      RatioResult r;
      r.lo = r.hi = affine_ratio_quantum(dx, dy, tol);
      r.lower_reason = "closed_form";
      r.witness = dx.hermitian();
      return r;
    }
    case SpaceKind::Separable2x2: {
      SeparableRatioOptions opts;
      opts.tol = tol;
      return affine_ratio_separable(require_density(x, "affine_ratio"), require_density(y, "affine_ratio"), opts);
    }
  }
  throw InvariantViolation("affine_ratio: unknown state space kind");
}

bool is_orthogonal(const StateSpaceHandle& h, const State& x, const State& y, const Tolerances& tol) {
  const auto r = affine_ratio(h, x, y, tol);
  if (r.exact) return *r.exact == 0;
  return r.hi <= tol.equality;
}

// ---------------------------------------------------------------------------
// Superposability

double bloch_angle(const Ket& u, const Ket& v) {
  return 2.0 * std::atan2(std::abs(inner(orthogonal_complement(u), v)), std::abs(inner(u, v)));
}

double factor_angle_sum(const ProductKet& x, const ProductKet& y) {
  return bloch_angle(x.a, y.a) + bloch_angle(x.b, y.b);
}


namespace {

// Midpoint of the great circle from a to b (b's phase aligned to a).
Ket geodesic_midpoint(const Ket& a, const Ket& b) {
  const Complex ov = inner(a, b);
  const Complex phase = std::abs(ov) > 0.0 ? std::conj(ov) / std::abs(ov) : Complex{1.0, 0.0};
  return normalized(Ket{a[0] + phase * b[0], a[1] + phase * b[1]});
}

OverlapPoint overlap_point(const ProductKet& x, const ProductKet& y, double a, double c) {
  // alpha = sqrt(a) x_A + sqrt(1-a) y_A,  beta = sqrt(1-c) x_B + sqrt(c) y_B
  Ket alpha(2), beta(2);
  for (std::size_t i = 0; i < 2; ++i) {
    alpha[i] = std::sqrt(a) * x.a[i] + std::sqrt(1.0 - a) * y.a[i];
    beta[i] = std::sqrt(1.0 - c) * x.b[i] + std::sqrt(c) * y.b[i];
  }
  const DensityMatrix z = ProductKet{alpha, beta}.density();
  OverlapPoint pt;
  pt.a = a;
  pt.c = c;
  pt.value = a + c - 2.0 * a * c;
  pt.tp_xz = trace_product(x.density().hermitian(), z.hermitian());
  pt.tp_yz = trace_product(y.density().hermitian(), z.hermitian());
  return pt;
}

// Coordinate ascent of the bilinear a + c - 2ac on the unit square.
std::pair<double, double> refine_overlap(double a, double c, double tol) {
  for (int iter = 0; iter < 100; ++iter) {
    const double slope_a = 1.0 - 2.0 * c;
    const double next_a = slope_a > 0.0 ? 1.0 : (slope_a < 0.0 ? 0.0 : a);
    const double slope_c = 1.0 - 2.0 * next_a;
    const double next_c = slope_c > 0.0 ? 1.0 : (slope_c < 0.0 ? 0.0 : c);
    const double change = std::abs(next_a - a) + std::abs(next_c - c);
    a = next_a;
    c = next_c;
    if (change <= tol) break;
  }
  return {a, c};
}

SuperposabilityCertificate overlap_square_search(const ProductKet& px, const ProductKet& py,
                                                 const SuperposabilityOptions& options) {
  SuperposabilityCertificate cert;
  cert.method = "overlap_square";
  OverlapSearch search;
  search.grid = std::max<std::size_t>(2, options.grid);
  const double step = 1.0 / static_cast<double>(search.grid - 1);
  double best = -1.0;
  std::pair<double, double> best_at{0.0, 0.0};
  for (std::size_t i = 0; i < search.grid; ++i) {
    const double a = static_cast<double>(i) * step;
    for (std::size_t j = 0; j < search.grid; ++j) {
      const double c = static_cast<double>(j) * step;
      const double v = a + c - 2.0 * a * c;
      if (v > best) {
        best = v;
        best_at = {a, c};
      }
      if (v >= 1.0 - search.near_tol) search.near_max_grid_points.emplace_back(a, c);
    }
  }
  std::vector<std::pair<double, double>> seeds = search.near_max_grid_points;
  seeds.push_back(best_at);
  for (const auto& [a0, c0] : seeds) {
    const auto [a, c] = refine_overlap(a0, c0, options.refine_tol);
    const bool seen = std::any_of(search.maximizers.begin(), search.maximizers.end(), [&](const OverlapPoint& p) {
      return std::abs(p.a - a) <= options.refine_tol && std::abs(p.c - c) <= options.refine_tol;
    });
    if (!seen) search.maximizers.push_back(overlap_point(px, py, a, c));
  }
  std::sort(search.maximizers.begin(), search.maximizers.end(),
            [](const OverlapPoint& l, const OverlapPoint& r) { return std::tie(l.a, l.c) < std::tie(r.a, r.c); });
  search.max_value = best;
  for (const auto& m : search.maximizers) search.max_value = std::max(search.max_value, m.value);

  for (const auto& m : search.maximizers) {
    if (std::abs(m.tp_xz - 0.5) <= options.ratio_tol && std::abs(m.tp_yz - 0.5) <= options.ratio_tol) cert.found = true;
  }
  const OverlapPoint& lead = search.maximizers.front();
  Ket alpha(2), beta(2);
  for (std::size_t i = 0; i < 2; ++i) {
    alpha[i] = std::sqrt(lead.a) * px.a[i] + std::sqrt(1.0 - lead.a) * py.a[i];
    beta[i] = std::sqrt(1.0 - lead.c) * px.b[i] + std::sqrt(lead.c) * py.b[i];
  }
  cert.z = ProductKet{alpha, beta}.density();
  cert.ratio_xz = lead.tp_xz;
  cert.ratio_yz = lead.tp_yz;
  cert.a = lead.a;
  cert.b = 1.0 - lead.c;
  cert.c = lead.c;
  cert.d = 1.0 - lead.a;
  cert.note =
      "r(x,z) + r(y,z) <= Tr(xz) + Tr(yz) = a + c - 2ac <= 1 with equality only at the corners, where one "
      "transition probability vanishes; no z reaches 1/2 for both";
  cert.search = std::move(search);
  return cert;
}

}  // namespace

bool validate_overlap_search(const OverlapSearch& s, double tol) {
  if (s.maximizers.empty()) return false;
  if (s.max_value > 1.0 + tol) return false;
  for (const auto& m : s.maximizers) {
    if (m.a < -tol || m.a > 1.0 + tol || m.c < -tol || m.c > 1.0 + tol) return false;
    const double v = m.a + m.c - 2.0 * m.a * m.c;
    if (std::abs(v - m.value) > tol) return false;
    // 1 - (a + c - 2ac) = (1-a)(1-c) + ac, a sum of nonnegative terms.
    if (std::abs((1.0 - v) - ((1.0 - m.a) * (1.0 - m.c) + m.a * m.c)) > tol) return false;
    if (std::abs(m.tp_xz - m.a * (1.0 - m.c)) > tol || std::abs(m.tp_yz - (1.0 - m.a) * m.c) > tol) return false;
    if (std::abs(v - 1.0) <= tol && std::min(m.tp_xz, m.tp_yz) > tol) return false;
  }
  for (const auto& [a, c] : s.near_max_grid_points) {
    const bool corner = (a == 1.0 && c == 0.0) || (a == 0.0 && c == 1.0);
    if (!corner) return false;
  }
  return true;
}

SuperposabilityCertificate superposability_search(const StateSpaceHandle& h, const State& x, const State& y,
                                                  const SuperposabilityOptions& options) {
  if (!is_orthogonal(h, x, y, options.tol)) {
    throw DomainError("superposability_search: the two states are not orthogonal");
  }
  switch (h.kind()) {
    case SpaceKind::VPolytope: {
      const auto& k = h.polytope();
      const std::size_t xi = require_vertex(x, k, "superposability_search");
      const std::size_t yi = require_vertex(y, k, "superposability_search");
      SuperposabilityCertificate cert;
      cert.method = "vertex_scan";
      const Rational half(1, 2);
      for (std::size_t z = 0; z < k.size(); ++z) {
        if (z == xi || z == yi) continue;
        VertexScanEntry e{z, *affine_ratio_polytope(k, xi, z).exact, *affine_ratio_polytope(k, yi, z).exact};
        if (!cert.found && e.ratio_xz == half && e.ratio_yz == half) {
          cert.found = true;
          cert.z = VertexRef{z};
          cert.ratio_xz = cert.ratio_yz = 0.5;
        }
        cert.scan.push_back(std::move(e));
      }
      return cert;
    }
    case SpaceKind::BlochBall: {
      const Vec3 bx = require_bloch(x, "superposability_search");
      const Vec3 by = require_bloch(y, "superposability_search");
      // Orthogonal pure states are antipodal; any unit z perpendicular to x works.
      std::size_t axis = 0;
      for (std::size_t i = 1; i < 3; ++i) {
        if (std::abs(bx[i]) < std::abs(bx[axis])) axis = i;
      }
      Vec3 z{0.0, 0.0, 0.0};
      z[axis] = 1.0;
      const double proj = dot(z, bx);
      for (std::size_t i = 0; i < 3; ++i) z[i] -= proj * bx[i];
      const double n = norm(z);
      for (auto& v : z) v /= n;
      SuperposabilityCertificate cert;
      cert.method = "closed_form";
      cert.z = z;
      cert.ratio_xz = affine_ratio_bloch(bx, z, options.tol);
      cert.ratio_yz = affine_ratio_bloch(by, z, options.tol);
      cert.found = std::abs(cert.ratio_xz - 0.5) <= options.ratio_tol && std::abs(cert.ratio_yz - 0.5) <= options.ratio_tol;
      return cert;
    }
    case SpaceKind::FullQuantum: {
      const auto& dx = require_density(x, "superposability_search");
      const auto& dy = require_density(y, "superposability_search");
      const Ket kx = top_eigenvector(dx.hermitian());
      const Ket ky = top_eigenvector(dy.hermitian());
      Ket kz(kx.size());
      for (std::size_t i = 0; i < kz.size(); ++i) kz[i] = kx[i] + ky[i];
      const DensityMatrix z = DensityMatrix::pure(kz);
      SuperposabilityCertificate cert;
      cert.method = "closed_form";
      cert.ratio_xz = affine_ratio_quantum(dx, z, options.tol);
      cert.ratio_yz = affine_ratio_quantum(dy, z, options.tol);
      cert.found = std::abs(cert.ratio_xz - 0.5) <= options.ratio_tol && std::abs(cert.ratio_yz - 0.5) <= options.ratio_tol;
      cert.z = z;
      return cert;
    }
    case SpaceKind::Separable2x2: {
      const auto& dx = require_density(x, "superposability_search");
      const auto& dy = require_density(y, "superposability_search");
      const ProductKet px = require_pure_product(dx, "superposability_search");
      const ProductKet py = require_pure_product(dy, "superposability_search");
      const double oa = std::norm(inner(px.a, py.a));
      const double ob = std::norm(inner(px.b, py.b));
      const double eps = options.tol.equality;
      if (oa <= eps && ob <= eps) return overlap_square_search(px, py, options);
      // Otherwise r(x,z) = cos^2((t_A + t_B)/2) for t_A + t_B <= pi (t_* the Bloch angles from x's
      // factors to z's), and the spherical triangle inequality bounds the worse of r(x,z), r(y,z)
      // by cos^2(s/4), s = theta_A + theta_B. Equality holds at the geodesic midpoints.
      SuperposabilityCertificate cert;
      const double sum = factor_angle_sum(px, py);
      cert.angle_sum = sum;
      const ProductKet z{geodesic_midpoint(px.a, py.a), geodesic_midpoint(px.b, py.b)};
      const DensityMatrix dz = z.density();
      SeparableRatioOptions ropts;
      ropts.tol = options.tol;
      const auto rx = affine_ratio_separable(dx, dz, ropts);
      const auto ry = affine_ratio_separable(dy, dz, ropts);
      cert.ratio_xz = rx.hi;
      cert.ratio_yz = ry.hi;
      cert.found = rx.is_exact(options.ratio_tol) && ry.is_exact(options.ratio_tol) &&
                   std::abs(rx.hi - 0.5) <= options.ratio_tol && std::abs(ry.hi - 0.5) <= options.ratio_tol;
      std::ostringstream os;
      os.precision(17);
      if (cert.found) {
        cert.method = "geodesic_midpoint";
        cert.z = dz;
        os << "theta_A + theta_B = " << sum << " = pi; the factor-wise geodesic midpoints give ratio 1/2 to both";
      } else {
        cert.method = "angle_sum_bound";
        const double bound = std::pow(std::cos(sum / 4.0), 2);
        os << "theta_A + theta_B = " << sum << ", so min(r(x,z), r(y,z)) <= cos^2(" << sum / 4.0 << ") = " << bound
           << " for every pure product z" << (bound < 0.5 - options.ratio_tol ? "" : " (inconclusive)");
      }
      cert.note = os.str();
      return cert;
    }
  }
  throw InvariantViolation("superposability_search: unknown state space kind");
}

// ---------------------------------------------------------------------------
// Paths

namespace {

// Points cos(k theta/steps) a + sin(k theta/steps) u, k = 0..steps, on the
// great circle from a to b (b's global phase aligned to a).
std::vector<Ket> geodesic(const Ket& a, const Ket& b, std::size_t steps) {
  const Complex ov = inner(a, b);
  const double mag = std::min(1.0, std::abs(ov));
  const Complex phase = mag > 0.0 ? std::conj(ov) / std::abs(ov) : Complex{1.0, 0.0};
  Ket b_aligned{b[0] * phase, b[1] * phase};
  const double theta = std::acos(mag);
  std::vector<Ket> out;
  if (theta <= 1e-15) {
    out.assign(steps + 1, a);
    return out;
  }
  const double st = std::sin(theta);
  Ket u{(b_aligned[0] - mag * a[0]) / st, (b_aligned[1] - mag * a[1]) / st};
  for (std::size_t k = 0; k <= steps; ++k) {
    const double ang = theta * static_cast<double>(k) / static_cast<double>(steps);
    out.push_back({std::cos(ang) * a[0] + std::sin(ang) * u[0], std::cos(ang) * a[1] + std::sin(ang) * u[1]});
  }
  out.back() = b_aligned;
  return out;
}

}  // namespace

ProductPath path_connect_product_states(const DensityMatrix& x, const DensityMatrix& y, std::size_t steps) {
  if (steps == 0) throw DomainError("path_connect_product_states: steps must be positive");
  const ProductKet px = require_pure_product(x, "path_connect_product_states");
  const ProductKet py = require_pure_product(y, "path_connect_product_states");

  ProductPath path;
  path.step_bound = std::sqrt(2.0) * std::numbers::pi / static_cast<double>(steps);
  const auto leg_a = geodesic(px.a, py.a, steps);
  const auto leg_b = geodesic(px.b, py.b, steps);
  path.points.push_back({px, x, Subsystem::A});
  for (std::size_t k = 1; k <= steps; ++k) {
    ProductKet f{leg_a[k], px.b};
    path.points.push_back({f, f.density(), Subsystem::A});
  }
  for (std::size_t k = 1; k <= steps; ++k) {
    ProductKet f{leg_a.back(), leg_b[k]};
    path.points.push_back({f, f.density(), Subsystem::B});
  }
  path.points.back().state = y;
  for (std::size_t i = 1; i < path.points.size(); ++i) {
    path.max_step =
        std::max(path.max_step, hs_distance(path.points[i - 1].state.hermitian(), path.points[i].state.hermitian()));
  }
  return path;
}

bool validate_path(const ProductPath& path, const DensityMatrix& x, const DensityMatrix& y, double tol) {
  if (path.points.size() < 2) return false;
  if (hs_distance(path.points.front().state.hermitian(), x.hermitian()) > tol) return false;
  if (hs_distance(path.points.back().state.hermitian(), y.hermitian()) > tol) return false;
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    const auto& p = path.points[i];
    if (!p.state.is_pure(1e-9) || !factor_pure_product(p.state, 1e-9)) return false;
    if (i == 0) continue;
    const auto& prev = path.points[i - 1];
    const double joint = hs_distance(prev.state.hermitian(), p.state.hermitian());
    const bool a_moves = p.moved == Subsystem::A;
    const double factor = a_moves ? hs_distance(HermitianMatrix::projector(prev.factors.a), HermitianMatrix::projector(p.factors.a))
                                  : hs_distance(HermitianMatrix::projector(prev.factors.b), HermitianMatrix::projector(p.factors.b));
    if (std::abs(joint - factor) > tol) return false;
    if (joint > path.step_bound + tol) return false;
  }
  return true;
}

}  // namespace convexstate
