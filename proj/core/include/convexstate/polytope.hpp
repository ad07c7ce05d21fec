#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "convexstate/lp.hpp"
#include "convexstate/rational.hpp"

namespace convexstate {

using RationalPoint = RationalVector;

/// f(x) = normal . x + offset.
template <class Scalar>
struct AffineFunctional {
  std::vector<Scalar> normal;
  Scalar offset{};

  Scalar operator()(const std::vector<Scalar>& x) const {
    Scalar v = offset;
    for (std::size_t i = 0; i < normal.size(); ++i) v += normal[i] * x[i];
    return v;
  }
};

/// A convex polytope given by its extreme points, with exact coordinates.
///
/// The vertex list is checked to be irredundant on construction: no vertex may
/// be a convex combination of the others (this also rejects duplicates).
class VPolytope {
 public:
  VPolytope(std::size_t ambient_dim, std::vector<RationalPoint> vertices, std::string name = {},
            std::vector<std::string> labels = {});

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return vertices_.size(); }
  const RationalPoint& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::vector<RationalPoint>& vertices() const { return vertices_; }
  const std::string& name() const { return name_; }
  /// Human-readable vertex names; defaults to "v0", "v1", ...
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> find_vertex(const RationalPoint& p) const;
  std::optional<std::size_t> find_label(const std::string& label) const;

 private:
  std::size_t ambient_dim_;
  std::vector<RationalPoint> vertices_;
  std::string name_;
  std::vector<std::string> labels_;
};

/// A face of a VPolytope, identified by the parent vertices it contains.
struct Face {
  std::vector<std::size_t> vertex_indices;  ///< ascending
  std::vector<RationalPoint> vertices;      ///< copies of the parent's vertices

  std::size_t size() const { return vertex_indices.size(); }
  bool contains_vertex(std::size_t i) const;
};

/// Convex weights reproducing x from the vertices, or nullopt when x is outside.
std::optional<RationalVector> convex_weights(const VPolytope& k, const RationalPoint& x);

bool contains(const VPolytope& k, const RationalPoint& x, LPMode mode = LPMode::Rational);

/// Smallest face containing x: vertex v belongs iff some convex representation
/// of x gives v positive weight. Throws DomainError when x is outside k.
Face minimal_face(const VPolytope& k, const RationalPoint& x, LPMode mode = LPMode::Rational);

/// face(x, y), computed as the minimal face of the midpoint.
Face generated_face(const VPolytope& k, const RationalPoint& x, const RationalPoint& y,
                    LPMode mode = LPMode::Rational);

Face face_from_indices(const VPolytope& k, std::vector<std::size_t> indices);

/// True iff conv(listed vertices) is a face of k. Certified by checking that the
/// minimal face of the listed vertices' centroid is exactly the listed set.
bool is_face(const VPolytope& k, const std::vector<std::size_t>& vertex_indices);

/// lambda*w + (1-lambda)*x == mu*y + (1-mu)*z with lambda, mu in (0,1) and
/// w not in {y, z}: a mixed state with two different pure decompositions.
struct AmbiguousMixture {
  std::size_t w = 0, x = 0, y = 0, z = 0;
  Rational lambda, mu;
  RationalPoint point;
};

/// Exact re-check of an ambiguous-mixture certificate against k.
bool validate(const VPolytope& k, const AmbiguousMixture& m);

/// Searches vertex pairs {w,x}, {y,z} (disjoint, lexicographic order) for
/// intersecting open segments.
std::optional<AmbiguousMixture> find_ambiguous_mixture(const VPolytope& k, LPMode mode = LPMode::Rational);

/// Both simplex notions: the standard one (affinely independent vertices) and
/// the four-point unique-decomposition form quantified over extreme points.
struct SimplexCheck {
  bool affinely_independent = false;
  bool unique_pair_decompositions = false;
  std::optional<AmbiguousMixture> certificate;

  bool is_simplex() const { return affinely_independent; }
};

SimplexCheck is_simplex(const VPolytope& k, LPMode mode = LPMode::Rational);

std::size_t rank(std::vector<RationalVector> rows);
std::size_t affine_dimension(const std::vector<RationalPoint>& points);
std::size_t affine_dimension(const VPolytope& k);

/// Image of k under x -> M x + t (M square, ambient_dim x ambient_dim).
/// Throws DomainError when M is singular.
VPolytope affine_image(const VPolytope& k, const std::vector<RationalVector>& matrix, const RationalVector& translation);

}  // namespace convexstate
