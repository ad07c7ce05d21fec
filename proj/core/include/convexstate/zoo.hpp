#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convexstate/polytope.hpp"
#include "convexstate/qubit.hpp"
#include "convexstate/transition.hpp"

namespace convexstate {

/// conv{+-e1, +-e2, +-e3} in R^3, labels e1, -e1, e2, -e2, e3, -e3.
VPolytope make_spekkens_hull();

/// The six pure states plus the mixed state at the origin, as a plain labeled
/// point list (not convex; analyses use the hull).
struct LabeledPointSet {
  std::vector<std::string> labels;
  std::vector<RationalPoint> points;
};
LabeledPointSet make_spekkens_points();

/// Standard n-simplex conv{0, e1, ..., en} in R^n. Throws DomainError for n = 0.
VPolytope make_classical_simplex(std::size_t n);

/// PPT test on a two-qubit state: min eigenvalue of the partial transpose
/// >= -slack. Throws DomainError unless rho is 4x4.
bool separable_membership(const DensityMatrix& rho, double slack = 1e-10);

/// A pure product state given by the Bloch vectors of its factors.
struct ProductStateParam {
  Vec3 a{0.0, 0.0, 1.0};
  Vec3 b{0.0, 0.0, 1.0};

  ProductKet kets() const;
  DensityMatrix density() const;
};

/// Haar-random factors (uniform on each Bloch sphere), deterministic in seed.
ProductStateParam sample_pure_product(std::uint64_t seed);

struct SeparableOptimum {
  double value = 0.0;
  ProductStateParam argmax;
  double upper_bound = 0.0;  ///< lambda_max(w)
  bool tight = false;        ///< value == upper_bound within 1e-9
  std::size_t best_start = 0;
};

/// See-saw ascent of Tr(w rho) over pure product states: fix the B factor,
/// take the top eigenvector of the B-contracted operator for A, alternate until
/// the value changes by less than 1e-12. Start s begins from
/// sample_pure_product(seed + s); the best value wins, ties go to the lower start.
SeparableOptimum maximize_linear_over_separable(const HermitianMatrix& w, std::size_t starts = 16,
                                                std::uint64_t seed = 0);

/// Names accepted by make_zoo: "spekkens", "simplex:n", "bloch", "full2x2",
/// "separable2x2".
std::vector<std::string> zoo_names();

/// Throws DomainError for unknown names or a malformed simplex size.
StateSpaceHandle make_zoo(const std::string& name);

}  // namespace convexstate
