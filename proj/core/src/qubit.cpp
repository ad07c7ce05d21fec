#include "convexstate/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "convexstate/errors.hpp"

namespace convexstate {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Ket basis_ket(std::size_t dim, std::size_t i) {
  if (i >= dim) throw DomainError("basis_ket: index " + std::to_string(i) + " out of range for dim " + std::to_string(dim));
  Ket k(dim);
  k[i] = 1.0;
  return k;
}

Ket kron(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

Complex inner(const Ket& a, const Ket& b) {
  if (a.size() != b.size()) throw DomainError("inner: dimension mismatch");
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Ket normalized(Ket v) {
  double n = 0.0;
  for (const auto& x : v) n += std::norm(x);
  if (n == 0.0) throw DomainError("normalized: zero vector");
  n = std::sqrt(n);
  for (auto& x : v) x /= n;
  return v;
}

Ket qubit_ket(char label) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (label) {
    case '0': return {1.0, 0.0};
    case '1': return {0.0, 1.0};
    case '+': return {h, h};
    case '-': return {h, -h};
    default: throw DomainError(std::string("qubit_ket: unknown label '") + label + "'");
  }
}

Ket product_ket(std::string_view labels) {
  if (labels.empty()) throw DomainError("product_ket: empty label");
  Ket k = qubit_ket(labels.front());
  for (std::size_t i = 1; i < labels.size(); ++i) k = kron(k, qubit_ket(labels[i]));
  return k;
}

HermitianMatrix pauli_x() { return HermitianMatrix(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}); }
HermitianMatrix pauli_y() { return HermitianMatrix(ComplexMatrix{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}}); }
HermitianMatrix pauli_z() { return HermitianMatrix(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}); }

HermitianMatrix bloch_density(const Vec3& r) {
  return HermitianMatrix(ComplexMatrix{{0.5 * (1.0 + r[2]), 0.5 * Complex{r[0], -r[1]}},
                                       {0.5 * Complex{r[0], r[1]}, 0.5 * (1.0 - r[2])}});
}

Ket bloch_ket(const Vec3& r) {
  const double n = norm(r);
  if (std::abs(n - 1.0) > 1e-10) throw DomainError("bloch_ket: Bloch vector is not a unit vector");
  // |psi> = cos(t/2)|0> + e^{i phi} sin(t/2)|1>
  const double z = std::clamp(r[2] / n, -1.0, 1.0);
  const double c = std::sqrt(0.5 * (1.0 + z));
  const double s = std::sqrt(0.5 * (1.0 - z));
  const double phi = (r[0] == 0.0 && r[1] == 0.0) ? 0.0 : std::atan2(r[1], r[0]);
  if (c == 0.0) return {0.0, 1.0};
  return {c, std::polar(s, phi)};
}

Vec3 bloch_vector(const HermitianMatrix& rho) {
  if (rho.dim() != 2) throw DomainError("bloch_vector: expected a 2x2 matrix");
  return {trace_product(rho, pauli_x()), trace_product(rho, pauli_y()), trace_product(rho, pauli_z())};
}

DensityMatrix ProductKet::density() const { return DensityMatrix::pure(joint()); }

namespace {

// Top eigenvector of a 2x2 reduced state, phase-fixed.
Ket dominant_ket(const HermitianMatrix& reduced) {
  const auto eig = eigh(reduced);
  Ket v{eig.vectors(0, 1), eig.vectors(1, 1)};
  const std::size_t lead = std::abs(v[0]) >= std::abs(v[1]) ? 0 : 1;
  const Complex phase = std::abs(v[lead]) > 0.0 ? std::conj(v[lead]) / std::abs(v[lead]) : Complex{1.0, 0.0};
  for (auto& x : v) x *= phase;
  return v;
}

}  // namespace

std::optional<ProductKet> factor_pure_product(const DensityMatrix& rho, double tol) {
  if (rho.dim() != 4) return std::nullopt;
  const auto reduced_a = make_hermitian_unchecked(partial_trace(rho.matrix(), Subsystem::B, {2, 2}));
  const auto reduced_b = make_hermitian_unchecked(partial_trace(rho.matrix(), Subsystem::A, {2, 2}));
  ProductKet pk{dominant_ket(reduced_a), dominant_ket(reduced_b)};
  const auto rebuilt = pk.density();
  if (hs_distance(rebuilt.hermitian(), rho.hermitian()) > tol) return std::nullopt;
  return pk;
}

Ket orthogonal_complement(const Ket& a) {
  if (a.size() != 2) throw DomainError("orthogonal_complement: expected a qubit ket");
  return normalized({-std::conj(a[1]), std::conj(a[0])});
}

}  // namespace convexstate
