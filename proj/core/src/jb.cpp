#include "convexstate/jb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "convexstate/errors.hpp"

namespace convexstate {

double check_jordan_identity(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("check_jordan_identity: dimension mismatch");
  const HermitianMatrix aa = jordan_product(a, a);
  const HermitianMatrix lhs = jordan_product(jordan_product(aa, b), a);
  const HermitianMatrix rhs = jordan_product(aa, jordan_product(b, a));
  return hs_norm((lhs - rhs).matrix());
}

NormInequalities check_jb_norm_inequalities(const HermitianMatrix& a, const HermitianMatrix& b, double slack) {
  if (a.dim() != b.dim()) throw DomainError("check_jb_norm_inequalities: dimension mismatch");
  const double na = operator_norm(a);
  const double nb = operator_norm(b);
  const HermitianMatrix aa = jordan_product(a, a);
  const double naa = operator_norm(aa);
  NormInequalities out;
  out.product_bound = operator_norm(jordan_product(a, b)) <= na * nb + slack;
  out.square_isometry = std::abs(naa - na * na) <= slack;
  out.square_monotone = naa <= operator_norm(aa + jordan_product(b, b)) + slack;
  return out;
}

const char* to_string(Admissibility a) { return a == Admissibility::Refuted ? "refuted" : "not_refuted"; }

const char* to_string(FailedCondition c) {
  switch (c) {
    case FailedCondition::FiniteNonsimplex: return "finite_nonsimplex";
    case FailedCondition::FaceNotBall: return "face_not_ball";
    case FailedCondition::ConnectedButUnsuperposable: return "connected_but_unsuperposable";
  }
  return "unknown";
}

BallDescriptor ball_descriptor(const Face& f) {
  BallDescriptor d;
  if (f.size() == 2) {
    d.n = 1;
    d.note = "segment";
  } else if (f.size() <= 1) {
    d.note = "single point: faces of distinct extreme points are never points";
  } else {
    d.note = std::to_string(f.size()) + " extreme points; B^n for n >= 2 has a continuum of them";
  }
  return d;
}

// ---------------------------------------------------------------------------
// Affine dependence

std::optional<AffineDependence> find_affine_dependence(const VPolytope& k) {
  const std::size_t n = k.size();
  const std::size_t rows = k.ambient_dim() + 1;
  // Columns (v_i, 1); reduced row echelon form, then one null vector.
  std::vector<RationalVector> m(rows, RationalVector(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i + 1 < rows; ++i) m[i][j] = k.vertex(j)[i];
    m[rows - 1][j] = 1;
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::optional<std::size_t> free_col;
  for (std::size_t c = 0; c < n && !free_col; ++c) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), c) == pivot_cols.end()) free_col = c;
  }
  if (!free_col) return std::nullopt;

  RationalVector coeff(n);
  coeff[*free_col] = 1;
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) coeff[pivot_cols[i]] = -m[i][*free_col];
  Rational positive_sum = 0;
  for (const auto& c : coeff) {
    if (c > 0) positive_sum += c;
  }
  AffineDependence d;
  d.point.assign(k.ambient_dim(), Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (coeff[j] > 0) {
      d.left.push_back(j);
      d.lambda.push_back(coeff[j] / positive_sum);
      for (std::size_t i = 0; i < k.ambient_dim(); ++i) d.point[i] += d.lambda.back() * k.vertex(j)[i];
    } else if (coeff[j] < 0) {
      d.right.push_back(j);
      d.mu.push_back(-coeff[j] / positive_sum);
    }
  }
  return d;
}

bool validate(const VPolytope& k, const AffineDependence& d) {
  if (d.left.empty() || d.right.empty()) return false;
  if (d.left.size() != d.lambda.size() || d.right.size() != d.mu.size()) return false;
  if (d.point.size() != k.ambient_dim()) return false;
  auto side = [&](const std::vector<std::size_t>& idx, const RationalVector& w) {
    RationalPoint p(k.ambient_dim(), Rational(0));
    Rational total = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (idx[j] >= k.size() || w[j] <= 0) return false;
      total += w[j];
      for (std::size_t i = 0; i < k.ambient_dim(); ++i) p[i] += w[j] * k.vertex(idx[j])[i];
    }
    return total == 1 && p == d.point;
  };
  for (auto i : d.left) {
    if (std::find(d.right.begin(), d.right.end(), i) != d.right.end()) return false;
  }
  return side(d.left, d.lambda) && side(d.right, d.mu);
}

// ---------------------------------------------------------------------------
// Polytopes

namespace {

std::string point_text(const RationalPoint& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s;
}

}  // namespace

JBVerdict root_theorem_check_polytope(const VPolytope& k) {
  PolytopeEvidence ev;
  ev.simplex = is_simplex(k);
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      Face f = generated_face(k, k.vertex(i), k.vertex(j));
      BallDescriptor b = ball_descriptor(f);
      ev.pair_faces.push_back({i, j, std::move(f), std::move(b)});
    }
  }

  JBVerdict v;
  std::ostringstream summary;
  if (ev.simplex.is_simplex()) {
    v.admissible = Admissibility::NotRefuted;
    summary << k.size() << " affinely independent vertices: a simplex, no necessary condition fails";
  } else {
    v.admissible = Admissibility::Refuted;
    if (const auto& m = ev.simplex.certificate) {
      v.failed_condition = FailedCondition::FiniteNonsimplex;
      summary << "finitely many extreme points but not a simplex: " << k.label(m->w) << "," << k.label(m->x)
              << " and " << k.label(m->y) << "," << k.label(m->z) << " both mix to (" << point_text(m->point) << ")";
    } else {
      for (std::size_t p = 0; p < ev.pair_faces.size() && !ev.offending_pair; ++p) {
        if (!ev.pair_faces[p].ball.is_ball()) ev.offending_pair = p;
      }
      if (ev.offending_pair) {
        const auto& pf = ev.pair_faces[*ev.offending_pair];
        v.failed_condition = FailedCondition::FaceNotBall;
        summary << "face(" << k.label(pf.x) << "," << k.label(pf.y) << ") has " << pf.face.size()
                << " extreme points and is not a ball";
      } else {
        v.failed_condition = FailedCondition::FiniteNonsimplex;
        ev.dependence = find_affine_dependence(k);
        if (!ev.dependence) throw InvariantViolation("root_theorem_check_polytope: non-simplex without a dependence");
        summary << "finitely many extreme points but affinely dependent: two disjoint vertex sets mix to ("
                << point_text(ev.dependence->point) << ")";
      }
    }
  }
  v.summary = summary.str();
  v.certificate = std::move(ev);
  return v;
}

bool revalidate(const VPolytope& k, const JBVerdict& v) {
  const auto* ev = std::get_if<PolytopeEvidence>(&v.certificate);
  if (ev == nullptr) return false;
  const auto simplex = is_simplex(k);
  if (!v.refuted()) return !v.failed_condition && simplex.is_simplex();
  if (!v.failed_condition || simplex.is_simplex()) return false;
  switch (*v.failed_condition) {
    case FailedCondition::FiniteNonsimplex:
      if (ev->simplex.certificate) return validate(k, *ev->simplex.certificate);
      return ev->dependence && validate(k, *ev->dependence);
    case FailedCondition::FaceNotBall: {
      if (!ev->offending_pair || *ev->offending_pair >= ev->pair_faces.size()) return false;
      const auto& pf = ev->pair_faces[*ev->offending_pair];
      const Face f = generated_face(k, k.vertex(pf.x), k.vertex(pf.y));
      return f.vertex_indices == pf.face.vertex_indices && f.size() >= 3 && is_face(k, f.vertex_indices);
    }
    case FailedCondition::ConnectedButUnsuperposable:
      return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Separable two-qubit states

namespace {

bool superposability_refutes(const SuperposabilityCertificate& c, const DensityMatrix& x, const DensityMatrix& y,
                             const Tolerances& tol) {
  if (c.found) return false;
  if (c.method == "overlap_square") return c.search && validate_overlap_search(*c.search, tol.equality);
  if (c.method == "angle_sum_bound") {
    if (!c.angle_sum) return false;
    const double sum = factor_angle_sum(require_pure_product(x, "revalidate"), require_pure_product(y, "revalidate"));
    return std::abs(sum - *c.angle_sum) <= 1e-9 && std::pow(std::cos(sum / 4.0), 2) < 0.5 - tol.equality;
  }
  return false;
}

}  // namespace

JBVerdict root_theorem_check_separable(const DensityMatrix& x, const DensityMatrix& y, std::size_t path_steps,
                                       std::size_t search_budget, const Tolerances& tol) {
  if (path_steps == 0 || search_budget < 2) throw DomainError("root_theorem_check_separable: budgets must be positive");
  const StateSpaceHandle sep("separable2x2", Separable2x2{});
  if (!is_orthogonal(sep, x, y, tol)) {
    throw DomainError("root_theorem_check_separable: x and y are not orthogonal in the separable state space");
  }
  SeparableEvidence ev{x, y, path_connect_product_states(x, y, path_steps), {}};
  SuperposabilityOptions opts;
  opts.grid = search_budget;
  opts.tol = tol;
  ev.superposability = superposability_search(sep, x, y, opts);

  JBVerdict v;
  const bool connected = validate_path(ev.path, x, y);
  if (!connected) throw InvariantViolation("root_theorem_check_separable: constructed path failed validation");
  if (superposability_refutes(ev.superposability, x, y, tol)) {
    v.admissible = Admissibility::Refuted;
    v.failed_condition = FailedCondition::ConnectedButUnsuperposable;
    v.summary = "x and y are joined by a norm-continuous path of pure states, yet no pure state has ratio 1/2 to both";
  } else {
    v.admissible = Admissibility::NotRefuted;
    v.summary = ev.superposability.found ? "x and y are connected and superposable"
                                         : "no certified obstruction for this pair";
  }
  v.certificate = std::move(ev);
  return v;
}

bool revalidate(const JBVerdict& v, const Tolerances& tol) {
  const auto* ev = std::get_if<SeparableEvidence>(&v.certificate);
  if (ev == nullptr) return false;
  const StateSpaceHandle sep("separable2x2", Separable2x2{});
  if (!is_orthogonal(sep, ev->x, ev->y, tol)) return false;
  if (!validate_path(ev->path, ev->x, ev->y)) return false;
  const bool refutes = superposability_refutes(ev->superposability, ev->x, ev->y, tol);
  if (v.refuted()) return v.failed_condition == FailedCondition::ConnectedButUnsuperposable && refutes;
  return !refutes;
}

}  // namespace convexstate
