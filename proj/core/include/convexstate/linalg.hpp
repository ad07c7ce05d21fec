#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "convexstate/tolerances.hpp"

namespace convexstate {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v);

/// Largest entrywise modulus of a - b.
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert-Schmidt (Frobenius) norm, Tr(A*A)^{1/2}.
double hs_norm(const ComplexMatrix& a);

/// Kronecker product; the first factor indexes the slow (subsystem A) digit.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Complex Hermitian matrix. Construction checks A == A* entrywise within
/// `tol.hermitian` and stores the exactly symmetrized matrix.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m, const Tolerances& tol = kDefaultTolerances);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zero(std::size_t n);
  /// |v><v| without normalisation.
  static HermitianMatrix projector(std::span<const Complex> v);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& other);
  HermitianMatrix& operator-=(const HermitianMatrix& other);
  HermitianMatrix& operator*=(double scale);

 private:
  struct Unchecked {};
  HermitianMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
  friend HermitianMatrix make_hermitian_unchecked(ComplexMatrix m);

  ComplexMatrix m_;
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator*(double scale, HermitianMatrix a);

/// Real part of Tr(AB); exact for Hermitian pairs up to rounding.
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  ComplexMatrix vectors;       ///< column k is the unit eigenvector for values[k]
};

/// Cyclic Jacobi on the real 2n x 2n embedding [[Re, -Im], [Im, Re]].
EigenDecomposition eigh(const HermitianMatrix& a, const Tolerances& tol = kDefaultTolerances);
std::vector<double> eigenvalues(const HermitianMatrix& a, const Tolerances& tol = kDefaultTolerances);
double min_eigenvalue(const HermitianMatrix& a, const Tolerances& tol = kDefaultTolerances);
double max_eigenvalue(const HermitianMatrix& a, const Tolerances& tol = kDefaultTolerances);

/// f(A) through the spectral decomposition.
template <class F>
HermitianMatrix spectral_apply(const HermitianMatrix& a, F&& f, const Tolerances& tol = kDefaultTolerances);

/// Positive semidefinite trace-one Hermitian matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix h, const Tolerances& tol = kDefaultTolerances);

  /// |v><v| / <v|v>.
  static DensityMatrix pure(std::span<const Complex> v);
  static DensityMatrix maximally_mixed(std::size_t n);

  std::size_t dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const ComplexMatrix& matrix() const { return h_.matrix(); }
  const Complex& operator()(std::size_t r, std::size_t c) const { return h_(r, c); }

  /// Rank-one check via idempotence ||rho^2 - rho||_HS <= tol.
  bool is_pure(double tol = 1e-10) const;

 private:
  HermitianMatrix h_;
};

enum class Subsystem { A, B };

/// Operator (spectral) norm max |lambda|.
double operator_norm(const HermitianMatrix& a, const Tolerances& tol = kDefaultTolerances);

/// A o B = (AB + BA) / 2.
HermitianMatrix jordan_product(const HermitianMatrix& a, const HermitianMatrix& b);

/// Tr((a - b)^2)^{1/2}.
double hs_distance(const HermitianMatrix& a, const HermitianMatrix& b);

/// Traces out `traced` from a (dims.first x dims.second)-dimensional operator.
ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced, std::pair<std::size_t, std::size_t> dims);
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced, std::pair<std::size_t, std::size_t> dims);

/// Transposes the tensor factor `transposed` in the product basis.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem transposed, std::pair<std::size_t, std::size_t> dims);
HermitianMatrix partial_transpose(const HermitianMatrix& rho, Subsystem transposed,
                                  std::pair<std::size_t, std::size_t> dims);

HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Internal: builds a Hermitian matrix from data already known to be Hermitian
// (symmetrised in place, no tolerance check).
HermitianMatrix make_hermitian_unchecked(ComplexMatrix m);

template <class F>
HermitianMatrix spectral_apply(const HermitianMatrix& a, F&& f, const Tolerances& tol) {
  const auto eig = eigh(a, tol);
  const std::size_t n = a.dim();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += fk * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
      }
    }
  }
  return make_hermitian_unchecked(std::move(out));
}

}  // namespace convexstate
