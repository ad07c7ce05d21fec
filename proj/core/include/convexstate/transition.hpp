#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "convexstate/linalg.hpp"
#include "convexstate/polytope.hpp"
#include "convexstate/qubit.hpp"
#include "convexstate/tolerances.hpp"

namespace convexstate {

// ---------------------------------------------------------------------------
// State spaces

struct BlochBall {};
/// All density matrices on C^dim.
struct FullQuantum {
  std::size_t dim = 4;
};
/// Separable states on C^2 (x) C^2.
struct Separable2x2 {};

enum class SpaceKind { VPolytope, BlochBall, FullQuantum, Separable2x2 };
const char* to_string(SpaceKind kind);

class StateSpaceHandle {
 public:
  using Payload = std::variant<VPolytope, BlochBall, FullQuantum, Separable2x2>;

  StateSpaceHandle(std::string name, Payload payload) : name_(std::move(name)), payload_(std::move(payload)) {}

  SpaceKind kind() const { return static_cast<SpaceKind>(payload_.index()); }
  const std::string& name() const { return name_; }
  const Payload& payload() const { return payload_; }
  /// Throws DomainError unless kind() == VPolytope.
  const VPolytope& polytope() const;

 private:
  std::string name_;
  Payload payload_;
};

struct VertexRef {
  std::size_t index = 0;
};

/// A point of some state space: a polytope vertex, a Bloch vector, or a
/// density matrix (full quantum and separable spaces).
using State = std::variant<VertexRef, Vec3, DensityMatrix>;

// ---------------------------------------------------------------------------
// Affine ratio

/// Certifies r(x, y) >= t through
///   M = y - t x + D + H  with M PSD and PPT,
/// where D = |x><delta| + |delta><x| is tangent to the pure product states at x
/// and H is the second-order term of the curve (x_A + e a x_A') (x) (x_B + e b x_B')
/// (primes: the orthogonal complements). An admissible f = Tr(W .) peaks at x
/// along that curve, so Tr(W D) = 0 and Tr(W H) <= 0, hence f(y) >= t.
struct DecompositionCertificate {
  double t = 0.0;
  Ket delta;
  Complex a{};
  Complex b{};
  HermitianMatrix tangent;
  HermitianMatrix second_order;
  HermitianMatrix remainder;
};

using Witness = std::variant<std::monostate, AffineFunctional<Rational>, AffineFunctional<double>, HermitianMatrix>;

/// Affine ratio r(x, y) or a certified enclosure lo <= r(x, y) <= hi.
///
/// `witness` is a feasible functional whose value at y equals hi: an affine
/// functional on a polytope, or an operator W acting as rho -> Tr(W rho).
struct RatioResult {
  double lo = 0.0;
  double hi = 1.0;
  std::optional<Rational> exact;
  Witness witness;
  /// Separable engine: Tr(xy), the ratio in the full two-qubit state space.
  std::optional<double> full_space_value;
  std::optional<DecompositionCertificate> lower_certificate;
  /// How lo was established: "exact", "closed_form", "trivial", "decomposition".
  std::string lower_reason = "exact";

  bool is_exact(double tol = 0.0) const { return hi - lo <= tol; }
};

/// LP over functionals (normal, offset): 0 <= f(v) <= 1 on every vertex,
/// f(x) = 1, minimise f(y). Among optimal functionals the witness maximises the
/// sum of the normal's components (falls back to the first optimum when that
/// secondary problem is unbounded).
RatioResult affine_ratio_polytope(const VPolytope& k, std::size_t x, std::size_t y, LPMode mode = LPMode::Rational);

/// Unit ball in R^3: (1 + x.y) / 2.
double affine_ratio_bloch(const Vec3& x, const Vec3& y, const Tolerances& tol = kDefaultTolerances);

/// Rank-one projections in a full quantum state space: Tr(ef).
double affine_ratio_quantum(const DensityMatrix& e, const DensityMatrix& f, const Tolerances& tol = kDefaultTolerances);

struct SeparableRatioOptions {
  Tolerances tol{};
};

/// Pure product states in the separable two-qubit set. With y = alpha (x) beta
/// written in the frame of x's factors, p = |alpha_0 beta_0| and
/// q = |alpha_1 beta_1|, both bounds meet at max(0, p - q)^2: hi from a witness
/// W = Q^Gamma, Q >= 0 (falling back to Tr(x .)), lo from a
/// DecompositionCertificate.
RatioResult affine_ratio_separable(const DensityMatrix& x, const DensityMatrix& y,
                                   const SeparableRatioOptions& options = {});

/// Checks that W defines a functional with range in [0,1] on separable
/// states and value 1 at x: W^Gamma >= 0, lambda_max(W) <= 1, Tr(Wx) = 1.
bool validate_separable_witness(const HermitianMatrix& w, const DensityMatrix& x, const Tolerances& tol = kDefaultTolerances);
bool validate_decomposition(const DecompositionCertificate& c, const DensityMatrix& x, const DensityMatrix& y,
                            const Tolerances& tol = kDefaultTolerances);

/// Dispatches on the handle's kind.
RatioResult affine_ratio(const StateSpaceHandle& h, const State& x, const State& y,
                         const Tolerances& tol = kDefaultTolerances);

/// r(x, y) == 0, judged on the certified upper bound.
bool is_orthogonal(const StateSpaceHandle& h, const State& x, const State& y, const Tolerances& tol = kDefaultTolerances);

// ---------------------------------------------------------------------------
// Superposability

struct VertexScanEntry {
  std::size_t z = 0;
  Rational ratio_xz;
  Rational ratio_yz;
};

/// Point of the overlap square where the full-space transition probabilities
/// were recomputed from explicit kets.
struct OverlapPoint {
  double a = 0.0;
  double c = 0.0;
  double value = 0.0;  ///< a + c - 2ac
  double tp_xz = 0.0;  ///< Tr(x z) for z = |alpha beta>
  double tp_yz = 0.0;
};

/// Maximisation of a + c - 2ac on [0,1]^2, the sum of the two full-space
/// transition probabilities from a candidate |alpha beta>.
struct OverlapSearch {
  std::size_t grid = 0;
  double max_value = 0.0;
  std::vector<OverlapPoint> maximizers;  ///< refined, deduplicated
  std::vector<std::pair<double, double>> near_max_grid_points;  ///< within `near_tol` of 1
  double near_tol = 1e-6;
};

struct SuperposabilityOptions {
  std::size_t grid = 1024;
  double refine_tol = 1e-10;
  double ratio_tol = 1e-8;
  Tolerances tol{};
};

struct SuperposabilityCertificate {
  bool found = false;
  std::string method;
  std::optional<State> z;
  double ratio_xz = 0.0;
  double ratio_yz = 0.0;
  // Overlaps a = |<x_A|alpha>|^2, b = |<x_B|beta>|^2, c = |<y_B|beta>|^2,
  // d = |<y_A|alpha>|^2 at the reported candidate (separable space).
  std::optional<double> a, b, c, d;
  std::optional<OverlapSearch> search;
  /// theta_A + theta_B (separable space, unless both factor pairs are orthogonal).
  std::optional<double> angle_sum;
  std::vector<VertexScanEntry> scan;
  std::string note;
};

/// Angle between the Bloch vectors of two unit qubit kets, in [0, pi].
double bloch_angle(const Ket& u, const Ket& v);
/// theta_A + theta_B for pure product states. In the separable space
/// r(x, y) = cos^2(s/2) for s <= pi and 0 beyond, so orthogonal pairs have s >= pi.
double factor_angle_sum(const ProductKet& x, const ProductKet& y);

/// Requires is_orthogonal(h, x, y). Polytopes: exact scan over vertices.
/// Ball/full quantum: closed-form z. Separable: the overlap-square reduction
/// when both factor pairs are orthogonal; otherwise the geodesic-midpoint
/// candidate, which succeeds iff theta_A + theta_B = pi, with the bound
/// min(r(x,z), r(y,z)) <= cos^2((theta_A + theta_B)/4) as the negative certificate.
SuperposabilityCertificate superposability_search(const StateSpaceHandle& h, const State& x, const State& y,
                                                  const SuperposabilityOptions& options = {});

/// Recomputes an overlap-square certificate: a + c - 2ac <= 1 everywhere
/// (1 - (a + c - 2ac) = (1-a)(1-c) + ac), and at every reported maximiser
/// one of the two transition probabilities vanishes.
bool validate_overlap_search(const OverlapSearch& s, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Paths of pure product states

struct ProductPathPoint {
  ProductKet factors;
  DensityMatrix state;
  /// Factor rotated on the segment that ends here (A for the first leg).
  Subsystem moved = Subsystem::A;
};

struct ProductPath {
  std::vector<ProductPathPoint> points;
  double max_step = 0.0;
  double step_bound = 0.0;  ///< sqrt(2) * pi / steps
};

/// Two-leg great-circle path: rotate the A factor from x_A to y_A, then the B
/// factor from x_B to y_B. Every point is a pure product state; endpoints are
/// the inputs themselves.
ProductPath path_connect_product_states(const DensityMatrix& x, const DensityMatrix& y, std::size_t steps);

/// Every point is a pure product state, consecutive HS distances equal the
/// moving factor's distances, endpoints match, and steps respect the bound.
bool validate_path(const ProductPath& path, const DensityMatrix& x, const DensityMatrix& y, double tol = 1e-12);

/// Throws DomainError unless rho is a pure product state of two qubits.
ProductKet require_pure_product(const DensityMatrix& rho, const char* what);

}  // namespace convexstate
