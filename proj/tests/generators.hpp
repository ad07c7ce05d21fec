#pragma once

// Hand-rolled random generators shared by the property tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "convexstate/linalg.hpp"
#include "convexstate/qubit.hpp"
#include "convexstate/rational.hpp"

namespace gen {

using namespace convexstate;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>()(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

  Vec3 unit_vector() {
    for (;;) {
      Vec3 v{normal(), normal(), normal()};
      const double n = norm(v);
      if (n > 1e-6) return {v[0] / n, v[1] / n, v[2] / n};
    }
  }

  Ket qubit() {
    Ket k{Complex(normal(), normal()), Complex(normal(), normal())};
    return normalized(k);
  }

  Ket ket(std::size_t dim) {
    Ket k(dim);
    for (auto& c : k) c = Complex(normal(), normal());
    return normalized(k);
  }

  ComplexMatrix complex_matrix(std::size_t r, std::size_t c) {
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex(normal(), normal());
    }
    return m;
  }

  HermitianMatrix hermitian(std::size_t n) {
    const ComplexMatrix g = complex_matrix(n, n);
    ComplexMatrix h = g + g.adjoint();
    h *= Complex(0.5);
    return HermitianMatrix(h);
  }

  DensityMatrix density(std::size_t n) {
    const ComplexMatrix g = complex_matrix(n, n);
    ComplexMatrix p = g * g.adjoint();
    p *= Complex(1.0 / p.trace().real());
    return DensityMatrix(HermitianMatrix(p));
  }

  DensityMatrix pure_product() {
    return DensityMatrix::pure(kron(qubit(), qubit()));
  }

  Rational rational(int lo, int hi, int max_den = 6) {
    return Rational(integer(lo, hi)) / Rational(integer(1, max_den));
  }

 private:
  std::mt19937_64 engine_;
};

// Independent of the library's Jacobi solver: characteristic polynomial roots
// of a 2x2 Hermitian matrix.
inline std::pair<double, double> eig2(const HermitianMatrix& h) {
  const double a = h(0, 0).real(), d = h(1, 1).real();
  const double off = std::abs(h(0, 1));
  const double mid = 0.5 * (a + d), rad = std::hypot(0.5 * (a - d), off);
  return {mid - rad, mid + rad};
}

}  // namespace gen
