#include "convexstate/polytope.hpp"

#include <algorithm>
#include <string>

#include "convexstate/errors.hpp"

namespace convexstate {

namespace {

// lambda >= 0, sum lambda = 1, sum lambda_i v_i = x; `skip` drops one vertex.
LPProblem<Rational> representation_problem(const std::vector<RationalPoint>& vertices, std::size_t dim,
                                           const RationalPoint& x, std::optional<std::size_t> skip = {}) {
  LPProblem<Rational> p;
  const std::size_t n = vertices.size();
  p.objective.assign(n, Rational(0));
  for (std::size_t d = 0; d < dim; ++d) {
    RationalVector row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = (skip && *skip == i) ? Rational(0) : vertices[i][d];
    p.add(std::move(row), Sense::Equal, x[d]);
  }
  RationalVector ones(n, Rational(1));
  if (skip) ones[*skip] = 0;
  p.add(std::move(ones), Sense::Equal, Rational(1));
  if (skip) {
    p.bounds.assign(n, VariableBounds<Rational>{});
    p.bounds[*skip] = VariableBounds<Rational>::box(0, 0);
  }
  return p;
}

bool feasible(const LPProblem<Rational>& p, LPMode mode) {
  if (mode == LPMode::Rational) return lp_solve(p).optimal();
  return lp_solve(to_float(p)).optimal();
}

// Vertices carrying positive weight in some representation of the point.
// Maximising the total weight on the undecided vertices either shows that
// none of them can be used (optimum 0) or moves at least one into the face.
std::vector<std::size_t> support_of_representations(const LPProblem<Rational>& base, std::size_t n, LPMode mode) {
  std::vector<bool> member(n, false);
  for (;;) {
    LPProblem<Rational> p = base;
    p.direction = Direction::Maximize;
    for (std::size_t i = 0; i < n; ++i) p.objective[i] = member[i] ? 0 : 1;
    bool grew = false;
    if (mode == LPMode::Rational) {
      const auto sol = lp_solve(p);
      if (!sol.optimal() || sol.value <= 0) break;
      for (std::size_t i = 0; i < n; ++i) {
        if (!member[i] && sol.point[i] > 0) member[i] = grew = true;
      }
    } else {
      const auto sol = lp_solve(to_float(p));
      if (!sol.optimal() || sol.value <= 1e-9) break;
      for (std::size_t i = 0; i < n; ++i) {
        if (!member[i] && sol.point[i] > 1e-12) member[i] = grew = true;
      }
    }
    if (!grew) break;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (member[i]) out.push_back(i);
  }
  return out;
}

void require_dim(const VPolytope& k, const RationalPoint& x, const char* what) {
  if (x.size() != k.ambient_dim()) {
    throw DomainError(std::string(what) + ": point of dimension " + std::to_string(x.size()) +
                      " does not match ambient dimension " + std::to_string(k.ambient_dim()));
  }
}

}  // namespace

VPolytope::VPolytope(std::size_t ambient_dim, std::vector<RationalPoint> vertices, std::string name,
                     std::vector<std::string> labels)
    : ambient_dim_(ambient_dim), vertices_(std::move(vertices)), name_(std::move(name)), labels_(std::move(labels)) {
  if (vertices_.empty()) throw DomainError("VPolytope: at least one vertex is required");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].size() != ambient_dim_) {
      throw DomainError("VPolytope: vertex " + std::to_string(i) + " has dimension " +
                        std::to_string(vertices_[i].size()) + ", expected " + std::to_string(ambient_dim_));
    }
  }
  if (labels_.empty()) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) labels_.push_back("v" + std::to_string(i));
  } else if (labels_.size() != vertices_.size()) {
    throw DomainError("VPolytope: label count does not match vertex count");
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (vertices_[i] == vertices_[j]) {
        throw DomainError("VPolytope: duplicate vertex " + std::to_string(j) + " and " + std::to_string(i));
      }
    }
  }
  if (vertices_.size() > 1) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (lp_solve(representation_problem(vertices_, ambient_dim_, vertices_[i], i)).optimal()) {
        throw DomainError("VPolytope: vertex " + std::to_string(i) +
                          " is a convex combination of the other vertices");
      }
    }
  }
}

std::optional<std::size_t> VPolytope::find_vertex(const RationalPoint& p) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] == p) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> VPolytope::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

bool Face::contains_vertex(std::size_t i) const {
  return std::binary_search(vertex_indices.begin(), vertex_indices.end(), i);
}

std::optional<RationalVector> convex_weights(const VPolytope& k, const RationalPoint& x) {
  require_dim(k, x, "convex_weights");
  auto sol = lp_solve(representation_problem(k.vertices(), k.ambient_dim(), x));
  if (!sol.optimal()) return std::nullopt;
  return std::move(sol.point);
}

bool contains(const VPolytope& k, const RationalPoint& x, LPMode mode) {
  require_dim(k, x, "contains");
  return feasible(representation_problem(k.vertices(), k.ambient_dim(), x), mode);
}

Face face_from_indices(const VPolytope& k, std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  Face f;
  for (std::size_t i : indices) {
    if (i >= k.size()) throw DomainError("face_from_indices: vertex index " + std::to_string(i) + " out of range");
    f.vertices.push_back(k.vertex(i));
  }
  f.vertex_indices = std::move(indices);
  return f;
}

Face minimal_face(const VPolytope& k, const RationalPoint& x, LPMode mode) {
  require_dim(k, x, "minimal_face");
  if (const auto v = k.find_vertex(x)) return face_from_indices(k, {*v});
  const auto base = representation_problem(k.vertices(), k.ambient_dim(), x);
  if (!feasible(base, mode)) throw DomainError("minimal_face: point is not contained in the polytope");
  return face_from_indices(k, support_of_representations(base, k.size(), mode));
}

Face generated_face(const VPolytope& k, const RationalPoint& x, const RationalPoint& y, LPMode mode) {
  require_dim(k, x, "generated_face");
  require_dim(k, y, "generated_face");
  RationalPoint mid(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mid[i] = (x[i] + y[i]) / 2;
  if (!contains(k, x, mode) || !contains(k, y, mode)) {
    throw DomainError("generated_face: both points must lie in the polytope");
  }
  return minimal_face(k, mid, mode);
}

bool is_face(const VPolytope& k, const std::vector<std::size_t>& vertex_indices) {
  if (vertex_indices.empty()) return false;
  const Face listed = face_from_indices(k, vertex_indices);
  RationalPoint centroid(k.ambient_dim(), Rational(0));
  for (const auto& v : listed.vertices) {
    for (std::size_t d = 0; d < centroid.size(); ++d) centroid[d] += v[d];
  }
  for (auto& c : centroid) c /= static_cast<long>(listed.size());
  return minimal_face(k, centroid).vertex_indices == listed.vertex_indices;
}

bool validate(const VPolytope& k, const AmbiguousMixture& m) {
  const std::size_t n = k.size();
  if (m.w >= n || m.x >= n || m.y >= n || m.z >= n) return false;
  if (m.w == m.y || m.w == m.z || m.w == m.x || m.y == m.z) return false;
  if (!(m.lambda > 0 && m.lambda < 1 && m.mu > 0 && m.mu < 1)) return false;
  if (m.point.size() != k.ambient_dim()) return false;
  for (std::size_t d = 0; d < k.ambient_dim(); ++d) {
    const Rational lhs = m.lambda * k.vertex(m.w)[d] + (1 - m.lambda) * k.vertex(m.x)[d];
    const Rational rhs = m.mu * k.vertex(m.y)[d] + (1 - m.mu) * k.vertex(m.z)[d];
    if (lhs != rhs || lhs != m.point[d]) return false;
  }
  return true;
}

std::optional<AmbiguousMixture> find_ambiguous_mixture(const VPolytope& k, LPMode mode) {
  const std::size_t n = k.size();
  const std::size_t dim = k.ambient_dim();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      const auto [w, x] = pairs[p];
      const auto [y, z] = pairs[q];
      if (w == y || w == z || x == y || x == z) continue;
      // Crossing segments need affinely dependent endpoints.
      if (dim >= 3) {
        std::vector<RationalVector> diffs(3, RationalVector(dim));
        for (std::size_t d = 0; d < dim; ++d) {
          diffs[0][d] = k.vertex(w)[d] - k.vertex(x)[d];
          diffs[1][d] = k.vertex(y)[d] - k.vertex(x)[d];
          diffs[2][d] = k.vertex(z)[d] - k.vertex(x)[d];
        }
        if (rank(std::move(diffs)) == 3) continue;
      }
      // variables (lambda, mu, t): maximise t with t <= lambda, 1-lambda, mu, 1-mu
      // and lambda (w - x) - mu (y - z) = z - x.
      LPProblem<Rational> lp;
      lp.direction = Direction::Maximize;
      lp.objective = {0, 0, 1};
      lp.bounds = {VariableBounds<Rational>::box(0, 1), VariableBounds<Rational>::box(0, 1),
                   VariableBounds<Rational>::box(0, 1)};
      for (std::size_t d = 0; d < dim; ++d) {
        lp.add({k.vertex(w)[d] - k.vertex(x)[d], k.vertex(z)[d] - k.vertex(y)[d], 0}, Sense::Equal,
               k.vertex(z)[d] - k.vertex(x)[d]);
      }
      lp.add({-1, 0, 1}, Sense::LessEqual, 0);
      lp.add({1, 0, 1}, Sense::LessEqual, 1);
      lp.add({0, -1, 1}, Sense::LessEqual, 0);
      lp.add({0, 1, 1}, Sense::LessEqual, 1);

      Rational lambda, mu;
      if (mode == LPMode::Rational) {
        const auto sol = lp_solve(lp);
        if (!sol.optimal() || sol.value <= 0) continue;
        lambda = sol.point[0];
        mu = sol.point[1];
      } else {
        // Float screening; the certificate is then recomputed exactly.
        const auto sol = lp_solve(to_float(lp));
        if (!sol.optimal() || sol.value <= 1e-9) continue;
        const auto exact = lp_solve(lp);
        if (!exact.optimal() || exact.value <= 0) continue;
        lambda = exact.point[0];
        mu = exact.point[1];
      }
      AmbiguousMixture m{w, x, y, z, lambda, mu, RationalPoint(dim)};
      for (std::size_t d = 0; d < dim; ++d) m.point[d] = lambda * k.vertex(w)[d] + (1 - lambda) * k.vertex(x)[d];
      return m;
    }
  }
  return std::nullopt;
}

SimplexCheck is_simplex(const VPolytope& k, LPMode mode) {
  SimplexCheck check;
  check.affinely_independent = affine_dimension(k) + 1 == k.size();
  check.certificate = find_ambiguous_mixture(k, mode);
  check.unique_pair_decompositions = !check.certificate.has_value();
  return check;
}

std::size_t rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

std::size_t affine_dimension(const std::vector<RationalPoint>& points) {
  if (points.size() <= 1) return 0;
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RationalVector d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return rank(std::move(diffs));
}

std::size_t affine_dimension(const VPolytope& k) { return affine_dimension(k.vertices()); }

VPolytope affine_image(const VPolytope& k, const std::vector<RationalVector>& matrix, const RationalVector& translation) {
  const std::size_t d = k.ambient_dim();
  if (matrix.size() != d || translation.size() != d) throw DomainError("affine_image: shape mismatch");
  for (const auto& row : matrix) {
    if (row.size() != d) throw DomainError("affine_image: matrix must be square");
  }
  if (rank(matrix) != d) throw DomainError("affine_image: matrix is singular");
  std::vector<RationalPoint> image;
  for (const auto& v : k.vertices()) {
    RationalPoint p = translation;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) p[i] += matrix[i][j] * v[j];
    }
    image.push_back(std::move(p));
  }
  return VPolytope(d, std::move(image), k.name(), k.labels());
}

}  // namespace convexstate
