#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "convexstate/linalg.hpp"

namespace convexstate {

using Ket = std::vector<Complex>;
using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);

/// Computational basis vector |i> in C^dim.
Ket basis_ket(std::size_t dim, std::size_t i);
/// |a> (x) |b>, first factor slow.
Ket kron(const Ket& a, const Ket& b);
Complex inner(const Ket& a, const Ket& b);  ///< <a|b>
Ket normalized(Ket v);

/// Single-qubit ket for one of '0', '1', '+', '-'.
Ket qubit_ket(char label);
/// Product ket for a label such as "01" or "+-"; one character per qubit.
Ket product_ket(std::string_view labels);

HermitianMatrix pauli_x();
HermitianMatrix pauli_y();
HermitianMatrix pauli_z();

/// (I + r.sigma)/2 for a Bloch vector r with |r| <= 1.
HermitianMatrix bloch_density(const Vec3& r);
/// A unit ket whose projector has Bloch vector r (|r| = 1), phase fixed so the
/// first nonzero amplitude is real and nonnegative.
Ket bloch_ket(const Vec3& r);
/// r_i = Tr(rho sigma_i) for a 2x2 Hermitian matrix.
Vec3 bloch_vector(const HermitianMatrix& rho);

/// A two-qubit pure product state |a>|b> held by its factors.
struct ProductKet {
  Ket a;
  Ket b;

  Ket joint() const { return kron(a, b); }
  DensityMatrix density() const;
};

/// Recovers unit factor kets when rho is (within tol) a pure product state on
/// C^2 (x) C^2; nullopt otherwise.
std::optional<ProductKet> factor_pure_product(const DensityMatrix& rho, double tol = 1e-9);

/// Any unit vector orthogonal to a unit qubit ket.
Ket orthogonal_complement(const Ket& a);

}  // namespace convexstate
