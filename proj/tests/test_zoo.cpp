#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "convexstate/errors.hpp"
#include "convexstate/transition.hpp"
#include "convexstate/zoo.hpp"
#include "generators.hpp"

using namespace convexstate;

namespace {

DensityMatrix singlet() {
  return DensityMatrix::pure(Ket{0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0});
}

Ket angle_ket(double theta, double phi) { return {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)}; }

// <ab|W|ab> summed directly over the 16 entries.
double product_value(const HermitianMatrix& w, const Ket& a, const Ket& b) {
  const Ket ab{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
  Complex v = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) v += std::conj(ab[i]) * w(i, j) * ab[j];
  return v.real();
}

struct GridOracle {
  double best = -1e300;
  std::vector<std::array<double, 4>> seeds;
};

// Brute force over an n^4 grid of Bloch angles (theta in [0, pi], phi in [0, 2pi)).
GridOracle grid_search(const HermitianMatrix& w, int n, std::size_t keep) {
  std::vector<std::pair<double, std::array<double, 4>>> all;
  std::vector<Ket> kets;
  std::vector<std::array<double, 2>> angles;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double th = std::numbers::pi * i / (n - 1), ph = 2 * std::numbers::pi * j / n;
      kets.push_back(angle_ket(th, ph));
      angles.push_back({th, ph});
    }
  }
  GridOracle g;
  for (std::size_t a = 0; a < kets.size(); ++a) {
    for (std::size_t b = 0; b < kets.size(); ++b) {
      const double v = product_value(w, kets[a], kets[b]);
      g.best = std::max(g.best, v);
      if (keep > 0) all.push_back({v, {angles[a][0], angles[a][1], angles[b][0], angles[b][1]}});
    }
  }
  if (keep > 0) {
    std::partial_sort(all.begin(), all.begin() + static_cast<long>(keep), all.end(),
                      [](const auto& l, const auto& r) { return l.first > r.first; });
    for (std::size_t i = 0; i < keep; ++i) g.seeds.push_back(all[i].second);
  }
  return g;
}

// Pattern search on the four angles, written independently of the library's optimiser.
double refine(const HermitianMatrix& w, std::array<double, 4> p) {
  auto f = [&](const std::array<double, 4>& q) { return product_value(w, angle_ket(q[0], q[1]), angle_ket(q[2], q[3])); };
  double best = f(p);
  for (double step = 0.1; step > 1e-10; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < 4; ++i) {
        for (double dir : {1.0, -1.0}) {
          auto q = p;
          q[i] += dir * step;
          const double v = f(q);
          if (v > best) best = v, p = q, moved = true;
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("Spekkens hull") {
  const VPolytope k = make_spekkens_hull();
  CHECK(k.size() == 6);
  CHECK(contains(k, {0, 0, 0}));
  CHECK_FALSE(contains(k, {1, 1, 0}));
  CHECK_FALSE(is_simplex(k).is_simplex());
  CHECK(k.labels() == std::vector<std::string>{"e1", "-e1", "e2", "-e2", "e3", "-e3"});
  for (std::size_t x = 0; x < 6; ++x)
    for (std::size_t y = 0; y < 6; ++y) CHECK(*affine_ratio_polytope(k, x, y).exact == (x == y ? 1 : 0));

  const LabeledPointSet s = make_spekkens_points();
  REQUIRE(s.points.size() == 7);
  CHECK(s.labels.back() == "mixed");
  CHECK(s.points.back() == RationalPoint{0, 0, 0});
}

TEST_CASE("classical simplexes") {
  const VPolytope seg = make_classical_simplex(1);
  CHECK(seg.size() == 2);
  CHECK(affine_dimension(seg) == 1);
  const VPolytope tri = make_classical_simplex(2);
  CHECK(tri.size() == 3);
  CHECK(is_simplex(tri).is_simplex());
  const VPolytope s4 = make_classical_simplex(4);
  for (std::size_t x = 0; x < s4.size(); ++x)
    for (std::size_t y = 0; y < s4.size(); ++y) CHECK(*affine_ratio_polytope(s4, x, y).exact == (x == y ? 1 : 0));
  CHECK_THROWS_AS(make_classical_simplex(0), DomainError);
}

TEST_CASE("separable_membership examples") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) CHECK(separable_membership(rng.pure_product()));
  CHECK_FALSE(separable_membership(singlet()));
  const DensityMatrix d0(
      0.5 * (HermitianMatrix::projector(product_ket("01")) + HermitianMatrix::projector(product_ket("10"))));
  CHECK(separable_membership(d0));
  CHECK(separable_membership(DensityMatrix::maximally_mixed(4)));
  CHECK_THROWS_AS(separable_membership(DensityMatrix::maximally_mixed(3)), DomainError);
}

TEST_CASE("separable_membership is closed under mixing") {
  gen::Rng rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    HermitianMatrix mix = HermitianMatrix::zero(4);
    const int parts = rng.integer(1, 4);
    double left = 1.0;
    for (int i = 0; i < parts; ++i) {
      const double wgt = i + 1 == parts ? left : left * rng.uniform();
      left -= wgt;
      mix += wgt * rng.pure_product().hermitian();
    }
    REQUIRE(separable_membership(DensityMatrix(mix)));
  }
  // Werner states cross the boundary at p = 1/3.
  for (double p : {0.3, 0.33}) {
    CHECK(separable_membership(DensityMatrix(p * singlet().hermitian() + (1 - p) * 0.25 * HermitianMatrix::identity(4))));
  }
  CHECK_FALSE(separable_membership(DensityMatrix(0.34 * singlet().hermitian() + 0.66 * 0.25 * HermitianMatrix::identity(4))));
}

TEST_CASE("sample_pure_product") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ProductStateParam p = sample_pure_product(seed);
    CHECK(norm(p.a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm(p.b) == doctest::Approx(1.0).epsilon(1e-12));
    const DensityMatrix d = p.density();
    CHECK(separable_membership(d));
    CHECK(d.is_pure());
    const auto ev = eigenvalues(d.hermitian());
    CHECK(ev[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ev[2]) <= 1e-12);
    const DensityMatrix other = sample_pure_product(seed + 1000).density();
    CHECK(hs_distance(d.hermitian(), other.hermitian()) > 0.0);
    CHECK(hs_distance(d.hermitian(), sample_pure_product(seed).density().hermitian()) == 0.0);
  }
}

TEST_CASE("sample_pure_product is spread over the sphere") {
  double mean[3] = {0, 0, 0};
  const int n = 4000;
  for (int s = 0; s < n; ++s) {
    const Vec3 a = sample_pure_product(static_cast<std::uint64_t>(s)).a;
    for (int i = 0; i < 3; ++i) mean[i] += a[i] / n;
  }
  for (double m : mean) CHECK(std::abs(m) < 0.05);
}

TEST_CASE("maximize_linear_over_separable examples") {
  const SeparableOptimum id = maximize_linear_over_separable(HermitianMatrix::identity(4));
  CHECK(id.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.tight);

  const SeparableOptimum e = maximize_linear_over_separable(singlet().hermitian());
  CHECK(e.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(e.upper_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(e.tight);
  // The maximiser has antiparallel Bloch vectors.
  CHECK(dot(e.argmax.a, e.argmax.b) == doctest::Approx(-1.0).epsilon(1e-6));

  const SeparableOptimum p = maximize_linear_over_separable(HermitianMatrix::projector(product_ket("00")));
  CHECK(p.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.argmax.a[2] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.argmax.b[2] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.tight);
}

TEST_CASE("see-saw matches a brute-force grid on the singlet") {
  const GridOracle g = grid_search(singlet().hermitian(), 50, 0);
  CHECK(g.best == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(maximize_linear_over_separable(singlet().hermitian()).value == doctest::Approx(g.best).epsilon(1e-6));
}

TEST_CASE("see-saw matches grid plus refinement on random operators") {
  gen::Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianMatrix w = rng.hermitian(4);
    const SeparableOptimum s = maximize_linear_over_separable(w, 16, static_cast<std::uint64_t>(trial));
    const GridOracle g = grid_search(w, 24, 12);
    double oracle = g.best;
    for (const auto& seed : g.seeds) oracle = std::max(oracle, refine(w, seed));
    CHECK(s.value == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(s.value <= max_eigenvalue(w) + 1e-12);
    CHECK(s.upper_bound == doctest::Approx(max_eigenvalue(w)).epsilon(1e-12));
    // The reported argmax attains the reported value.
    CHECK(trace_product(w, s.argmax.density().hermitian()) == doctest::Approx(s.value).epsilon(1e-12));
  }
}

TEST_CASE("see-saw is deterministic in the seed") {
  gen::Rng rng(44);
  const HermitianMatrix w = rng.hermitian(4);
  const SeparableOptimum a = maximize_linear_over_separable(w, 8, 5);
  const SeparableOptimum b = maximize_linear_over_separable(w, 8, 5);
  CHECK(a.value == b.value);
  CHECK(a.best_start == b.best_start);
  CHECK(a.argmax.a == b.argmax.a);
  CHECK_THROWS_AS(maximize_linear_over_separable(HermitianMatrix::identity(3)), DomainError);
}

TEST_CASE("zoo names") {
  CHECK(zoo_names() == std::vector<std::string>{"spekkens", "simplex:n", "bloch", "full2x2", "separable2x2"});
  CHECK(make_zoo("spekkens").kind() == SpaceKind::VPolytope);
  CHECK(make_zoo("simplex:3").polytope().size() == 4);
  CHECK(make_zoo("bloch").kind() == SpaceKind::BlochBall);
  CHECK(make_zoo("full2x2").kind() == SpaceKind::FullQuantum);
  CHECK(make_zoo("separable2x2").kind() == SpaceKind::Separable2x2);
  CHECK_THROWS_AS(make_zoo("octahedron"), DomainError);
  CHECK_THROWS_AS(make_zoo("simplex:0"), DomainError);
  CHECK_THROWS_AS(make_zoo("simplex:x"), DomainError);
  CHECK_THROWS_AS(make_zoo("simplex:"), DomainError);
}
