#include <doctest.h>

#include <cmath>
#include <numbers>

#include "convexstate/errors.hpp"
#include "convexstate/jb.hpp"
#include "convexstate/zoo.hpp"
#include "generators.hpp"

using namespace convexstate;

namespace {

DensityMatrix prod(const char* labels) { return DensityMatrix::pure(product_ket(labels)); }

double scale(const HermitianMatrix& a, const HermitianMatrix& b) {
  const double na = operator_norm(a), nb = operator_norm(b);
  return std::max(1.0, na * na * na * nb);
}

VPolytope square() {
  return VPolytope(2, {RationalPoint{1, 0}, RationalPoint{0, 1}, RationalPoint{-1, 0}, RationalPoint{0, -1}}, "square");
}

// Triangle with one apex above and one below: the apex segment pierces the
// triangle, so no two segments cross but the face generated by the apexes is
// the whole solid.
VPolytope bipyramid() {
  return VPolytope(3,
                   {RationalPoint{1, 0, 0}, RationalPoint{0, 1, 0}, RationalPoint{-1, -1, 0}, RationalPoint{0, 0, 1},
                    RationalPoint{0, 0, -1}},
                   "bipyramid");
}

// Cyclic polytope C(6, 4): every vertex pair spans an edge.
VPolytope cyclic() {
  std::vector<RationalPoint> v;
  for (int t = 0; t < 6; ++t) v.push_back({t, t * t, t * t * t, t * t * t * t});
  return VPolytope(4, v, "cyclic");
}

std::vector<RationalVector> random_invertible(gen::Rng& rng, std::size_t n) {
  for (;;) {
    std::vector<RationalVector> m(n, RationalVector(n));
    for (auto& row : m)
      for (auto& e : row) e = rng.rational(-3, 3, 4);
    if (rank(m) == n) return m;
  }
}

}  // namespace

TEST_CASE("Jordan identity examples") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianMatrix a = rng.hermitian(4), b = rng.hermitian(4);
    CHECK(check_jordan_identity(a, b) <= 1e-12 * scale(a, b));
    CHECK(check_jordan_identity(a, a) <= 1e-12 * scale(a, a));
  }
  CHECK(check_jordan_identity(pauli_x(), pauli_z()) <= 1e-14);
  CHECK_THROWS_AS(check_jordan_identity(HermitianMatrix::identity(2), HermitianMatrix::identity(3)), DomainError);
}

TEST_CASE("Jordan identity residuals stay at rounding level under scaling") {
  gen::Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const HermitianMatrix a = rng.hermitian(n), b = rng.hermitian(n);
    for (double t : {1.0, 2.0}) {
      const HermitianMatrix ta = t * a;
      // Both sides are cubic in a, so the residual bound scales with t^3.
      REQUIRE(check_jordan_identity(ta, b) <= 1e-11 * scale(ta, b));
      REQUIRE(scale(ta, b) >= scale(a, b));
    }
  }
}

TEST_CASE("JB norm inequalities on random pairs") {
  gen::Rng rng(33);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const NormInequalities r = check_jb_norm_inequalities(rng.hermitian(n), rng.hermitian(n));
    REQUIRE(r.product_bound);
    REQUIRE(r.square_isometry);
    REQUIRE(r.square_monotone);
    REQUIRE(r.all());
  }
}

TEST_CASE("JB norm inequality edge cases") {
  gen::Rng rng(34);
  const HermitianMatrix a = rng.hermitian(3);
  const HermitianMatrix zero = HermitianMatrix::zero(3);
  CHECK(check_jb_norm_inequalities(a, zero).all());
  const HermitianMatrix aa = jordan_product(a, a);
  CHECK(operator_norm(aa) == doctest::Approx(operator_norm(aa + jordan_product(zero, zero))));
  const HermitianMatrix id = HermitianMatrix::identity(3);
  CHECK(operator_norm(jordan_product(id, id)) == doctest::Approx(1.0));
  CHECK(check_jb_norm_inequalities(id, a).all());
}

TEST_CASE("ball_descriptor examples") {
  const VPolytope k = make_spekkens_hull();
  const BallDescriptor seg = ball_descriptor(face_from_indices(k, {0, 2}));
  CHECK(seg.is_ball());
  CHECK(*seg.n == 1);
  const BallDescriptor tri = ball_descriptor(face_from_indices(k, {0, 2, 4}));
  CHECK_FALSE(tri.is_ball());
  const BallDescriptor point = ball_descriptor(face_from_indices(k, {3}));
  CHECK_FALSE(point.is_ball());
  CHECK_FALSE(point.note.empty());
}

TEST_CASE("Spekkens octahedron is refuted with an exact certificate") {
  const VPolytope k = make_spekkens_hull();
  const JBVerdict v = root_theorem_check_polytope(k);
  CHECK(v.refuted());
  REQUIRE(v.failed_condition.has_value());
  CHECK(*v.failed_condition == FailedCondition::FiniteNonsimplex);
  CHECK(std::string(to_string(*v.failed_condition)) == "finite_nonsimplex");
  CHECK(std::string(to_string(v.admissible)) == "refuted");

  const auto& ev = std::get<PolytopeEvidence>(v.certificate);
  REQUIRE(ev.simplex.certificate.has_value());
  const AmbiguousMixture& m = *ev.simplex.certificate;
  CHECK(m.point == RationalPoint{0, 0, 0});
  CHECK(m.lambda == Rational(1, 2));
  CHECK(m.mu == Rational(1, 2));
  CHECK(validate(k, m));
  CHECK(revalidate(k, v));

  // Adjacent vertices generate edges; antipodal ones generate the whole solid.
  REQUIRE(ev.pair_faces.size() == 15);
  int segments = 0;
  for (const PairFace& pf : ev.pair_faces) {
    const bool antipodal = k.vertex(pf.x)[0] == -k.vertex(pf.y)[0] && k.vertex(pf.x)[1] == -k.vertex(pf.y)[1] &&
                           k.vertex(pf.x)[2] == -k.vertex(pf.y)[2];
    CHECK(pf.face.size() == (antipodal ? 6u : 2u));
    CHECK(pf.ball.is_ball() == !antipodal);
    segments += pf.ball.is_ball();
  }
  CHECK(segments == 12);
}

TEST_CASE("simplexes are not refuted") {
  CHECK_FALSE(root_theorem_check_polytope(VPolytope(2, {RationalPoint{0, 0}, RationalPoint{1, 0}, RationalPoint{0, 1}}))
                  .refuted());
  for (std::size_t n = 1; n <= 6; ++n) CHECK_FALSE(root_theorem_check_polytope(make_classical_simplex(n)).refuted());

  gen::Rng rng(35);
  int tested = 0;
  while (tested < 12) {
    const std::size_t n = 1 + rng.index(11);
    std::vector<RationalPoint> v;
    for (std::size_t i = 0; i <= n; ++i) {
      RationalPoint p(n);
      for (auto& c : p) c = rng.integer(-3, 3);
      v.push_back(p);
    }
    if (affine_dimension(v) != n) continue;
    ++tested;
    const JBVerdict verdict = root_theorem_check_polytope(VPolytope(n, v));
    CHECK_FALSE(verdict.refuted());
    CHECK_FALSE(verdict.failed_condition.has_value());
  }
}

TEST_CASE("square is refuted by its crossing diagonals") {
  const VPolytope k = square();
  const JBVerdict v = root_theorem_check_polytope(k);
  CHECK(v.refuted());
  CHECK(*v.failed_condition == FailedCondition::FiniteNonsimplex);
  CHECK(revalidate(k, v));
  CHECK(std::get<PolytopeEvidence>(v.certificate).simplex.certificate->point == RationalPoint{0, 0});
}

TEST_CASE("bipyramid is refuted through a generated face that is not a ball") {
  const VPolytope k = bipyramid();
  const SimplexCheck s = is_simplex(k);
  CHECK_FALSE(s.affinely_independent);
  CHECK(s.unique_pair_decompositions);
  const JBVerdict v = root_theorem_check_polytope(k);
  CHECK(v.refuted());
  CHECK(*v.failed_condition == FailedCondition::FaceNotBall);
  const auto& ev = std::get<PolytopeEvidence>(v.certificate);
  REQUIRE(ev.offending_pair.has_value());
  const PairFace& pf = ev.pair_faces[*ev.offending_pair];
  CHECK(pf.x == 3);
  CHECK(pf.y == 4);
  CHECK(pf.face.size() == 5);
  CHECK_FALSE(pf.ball.is_ball());
  CHECK(revalidate(k, v));
}

TEST_CASE("cyclic polytope is refuted through an affine dependence") {
  const VPolytope k = cyclic();
  const JBVerdict v = root_theorem_check_polytope(k);
  CHECK(v.refuted());
  CHECK(*v.failed_condition == FailedCondition::FiniteNonsimplex);
  const auto& ev = std::get<PolytopeEvidence>(v.certificate);
  CHECK_FALSE(ev.simplex.certificate.has_value());
  for (const PairFace& pf : ev.pair_faces) CHECK(pf.face.size() == 2);
  REQUIRE(ev.dependence.has_value());
  const AffineDependence& d = *ev.dependence;
  CHECK(validate(k, d));
  // Independent exact re-check of both convex combinations.
  Rational ls = 0, ms = 0;
  RationalPoint lp(4, 0), rp(4, 0);
  for (std::size_t i = 0; i < d.left.size(); ++i) {
    ls += d.lambda[i];
    for (int c = 0; c < 4; ++c) lp[c] += d.lambda[i] * k.vertex(d.left[i])[c];
  }
  for (std::size_t i = 0; i < d.right.size(); ++i) {
    ms += d.mu[i];
    for (int c = 0; c < 4; ++c) rp[c] += d.mu[i] * k.vertex(d.right[i])[c];
  }
  CHECK(ls == 1);
  CHECK(ms == 1);
  CHECK(lp == rp);
  CHECK(lp == d.point);
  CHECK(revalidate(k, v));

  AffineDependence bad = d;
  bad.mu[0] += Rational(1, 7);
  CHECK_FALSE(validate(k, bad));
}

TEST_CASE("tampered polytope certificates fail revalidation") {
  const VPolytope k = make_spekkens_hull();
  JBVerdict v = root_theorem_check_polytope(k);
  auto& ev = std::get<PolytopeEvidence>(v.certificate);
  ev.simplex.certificate->lambda = Rational(1, 3);
  CHECK_FALSE(revalidate(k, v));
  JBVerdict empty;
  empty.admissible = Admissibility::Refuted;
  empty.failed_condition = FailedCondition::FiniteNonsimplex;
  CHECK_FALSE(revalidate(k, empty));
}

TEST_CASE("verdicts are invariant under rational affine maps") {
  gen::Rng rng(36);
  for (const VPolytope& k : {make_spekkens_hull(), make_classical_simplex(3), square(), bipyramid()}) {
    const JBVerdict base = root_theorem_check_polytope(k);
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t n = k.ambient_dim();
      RationalVector t(n);
      for (auto& c : t) c = rng.rational(-5, 5, 3);
      const VPolytope img = affine_image(k, random_invertible(rng, n), t);
      const JBVerdict v = root_theorem_check_polytope(img);
      CHECK(v.admissible == base.admissible);
      CHECK(v.failed_condition == base.failed_condition);
      if (v.refuted()) CHECK(revalidate(img, v));
    }
  }
}

TEST_CASE("separable two-qubit states are refuted") {
  for (const auto& [x, y] : {std::pair{"01", "10"}, std::pair{"00", "11"}}) {
    const JBVerdict v = root_theorem_check_separable(prod(x), prod(y));
    CHECK(v.refuted());
    REQUIRE(v.failed_condition.has_value());
    CHECK(*v.failed_condition == FailedCondition::ConnectedButUnsuperposable);
    const auto& ev = std::get<SeparableEvidence>(v.certificate);
    CHECK(validate_path(ev.path, prod(x), prod(y)));
    CHECK_FALSE(ev.superposability.found);
    REQUIRE(ev.superposability.search.has_value());
    CHECK(validate_overlap_search(*ev.superposability.search));
    CHECK(revalidate(v));
  }
  CHECK_THROWS_AS(root_theorem_check_separable(prod("01"), prod("01")), DomainError);
  CHECK_THROWS_AS(root_theorem_check_separable(prod("00"), prod("+0")), DomainError);
}

TEST_CASE("tampered separable certificates fail revalidation") {
  JBVerdict v = root_theorem_check_separable(prod("01"), prod("10"), 16, 64);
  REQUIRE(revalidate(v));
  auto& ev = std::get<SeparableEvidence>(v.certificate);
  JBVerdict broken_path = v;
  std::get<SeparableEvidence>(broken_path.certificate).path.points.pop_back();
  CHECK_FALSE(revalidate(broken_path));
  ev.superposability.search->maximizers.front().tp_xz = 0.5;
  ev.superposability.search->maximizers.front().tp_yz = 0.5;
  CHECK_FALSE(revalidate(v));
}

TEST_CASE("separable verdicts from the angle-sum bound") {
  // Orthogonal A factors, B factors a quarter turn apart: connected but not superposable.
  const JBVerdict v = root_theorem_check_separable(prod("00"), prod("1+"));
  CHECK(v.refuted());
  CHECK(std::get<SeparableEvidence>(v.certificate).superposability.method == "angle_sum_bound");
  CHECK(revalidate(v));
  JBVerdict tampered = v;
  *std::get<SeparableEvidence>(tampered.certificate).superposability.angle_sum = std::numbers::pi;
  CHECK_FALSE(revalidate(tampered));
  // Angle sum exactly pi: superposable, so nothing is refuted.
  CHECK_FALSE(root_theorem_check_separable(prod("00"), prod("10")).refuted());
  CHECK_FALSE(root_theorem_check_separable(prod("00"), prod("++")).refuted());
}
