#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "convexstate/linalg.hpp"
#include "convexstate/polytope.hpp"
#include "convexstate/transition.hpp"

namespace convexstate {

// ---------------------------------------------------------------------------
// Jordan-algebra axioms on Hermitian matrices

/// || ((a.a).b).a - (a.a).(b.a) ||_HS with x.y = (xy + yx)/2.
double check_jordan_identity(const HermitianMatrix& a, const HermitianMatrix& b);

struct NormInequalities {
  bool product_bound = false;    ///< ||a.b|| <= ||a|| ||b||
  bool square_isometry = false;  ///< ||a.a|| == ||a||^2
  bool square_monotone = false;  ///< ||a.a|| <= ||a.a + b.b||

  bool all() const { return product_bound && square_isometry && square_monotone; }
};

/// Operator norms, each comparison with `slack` absolute tolerance.
NormInequalities check_jb_norm_inequalities(const HermitianMatrix& a, const HermitianMatrix& b, double slack = 1e-10);

// ---------------------------------------------------------------------------
// Verdicts

enum class Admissibility { Refuted, NotRefuted };
enum class FailedCondition { FiniteNonsimplex, FaceNotBall, ConnectedButUnsuperposable };

const char* to_string(Admissibility a);
const char* to_string(FailedCondition c);

/// B^n for a face, or not a ball. Polytope faces are balls only as segments.
struct BallDescriptor {
  std::optional<int> n;
  std::string note;

  bool is_ball() const { return n.has_value(); }
};

BallDescriptor ball_descriptor(const Face& f);

struct PairFace {
  std::size_t x = 0;
  std::size_t y = 0;
  Face face;
  BallDescriptor ball;
};

/// sum_i lambda_i v_i == sum_j mu_j v_j over disjoint vertex sets, both sides
/// convex combinations: an affine dependence among the vertices.
struct AffineDependence {
  std::vector<std::size_t> left;
  RationalVector lambda;
  std::vector<std::size_t> right;
  RationalVector mu;
  RationalPoint point;
};

std::optional<AffineDependence> find_affine_dependence(const VPolytope& k);
bool validate(const VPolytope& k, const AffineDependence& d);

struct PolytopeEvidence {
  SimplexCheck simplex;
  std::optional<AffineDependence> dependence;
  /// Index into pair_faces of the face that is not a ball (face_not_ball).
  std::optional<std::size_t> offending_pair;
  /// Every vertex pair i < j in lexicographic order.
  std::vector<PairFace> pair_faces;
};

struct SeparableEvidence {
  DensityMatrix x;
  DensityMatrix y;
  ProductPath path;
  SuperposabilityCertificate superposability;
};

using VerdictCertificate = std::variant<std::monostate, PolytopeEvidence, SeparableEvidence>;

/// `NotRefuted` only means no necessary condition failed; it never claims
/// that the set is a JB-algebra state space.
struct JBVerdict {
  Admissibility admissible = Admissibility::NotRefuted;
  std::optional<FailedCondition> failed_condition;
  VerdictCertificate certificate;
  std::string summary;

  bool refuted() const { return admissible == Admissibility::Refuted; }
};

/// Simplex -> not_refuted. Otherwise refuted, preferring a four-point
/// ambiguous mixture (finite_nonsimplex), then a generated pair face with at
/// least three vertices (face_not_ball), then a general affine dependence.
JBVerdict root_theorem_check_polytope(const VPolytope& k);

/// Orthogonal pure product states x, y: connecting path plus superposability
/// search. Refuted when the path validates and no superposing z exists.
/// `search_budget` is the side of the overlap-square grid.
JBVerdict root_theorem_check_separable(const DensityMatrix& x, const DensityMatrix& y, std::size_t path_steps = 64,
                                       std::size_t search_budget = 1024, const Tolerances& tol = kDefaultTolerances);

/// Re-checks a verdict's certificate from scratch.
bool revalidate(const VPolytope& k, const JBVerdict& v);
bool revalidate(const JBVerdict& v, const Tolerances& tol = kDefaultTolerances);

}  // namespace convexstate
