#include "convexstate/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "convexstate/errors.hpp"

namespace convexstate {

namespace {

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError(std::string(what) + ": dimension mismatch " + shape(a.rows(), a.cols()) + " vs " +
                      shape(b.rows(), b.cols()));
  }
}

void require_product_dims(const ComplexMatrix& m, std::pair<std::size_t, std::size_t> dims, const char* what) {
  const std::size_t n = dims.first * dims.second;
  if (!m.is_square() || m.rows() != n || dims.first == 0 || dims.second == 0) {
    throw DomainError(std::string(what) + ": operator of shape " + shape(m.rows(), m.cols()) +
                      " is inconsistent with factor dims " + std::to_string(dims.first) + "x" +
                      std::to_string(dims.second));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DomainError("ComplexMatrix: " + std::to_string(data_.size()) + " entries do not fill a " +
                      shape(rows_, cols_) + " matrix");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DomainError("ComplexMatrix: ragged initializer list");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
  ComplexMatrix m(ket.size(), bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i) {
    for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DomainError("matrix product: dimension mismatch " + shape(a.rows(), a.cols()) + " * " +
                      shape(b.rows(), b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) {
    throw DomainError("matrix-vector product: " + shape(a.rows(), a.cols()) + " * " + std::to_string(v.size()));
  }
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  }
  return out;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_difference");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

double hs_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix make_hermitian_unchecked(ComplexMatrix m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Complex{m(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
  return HermitianMatrix(std::move(m), HermitianMatrix::Unchecked{});
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, const Tolerances& tol) {
  if (!m.is_square()) throw DomainError("HermitianMatrix: matrix of shape " + shape(m.rows(), m.cols()) + " is not square");
  const double dev = max_abs_difference(m, m.adjoint());
  if (dev > tol.hermitian) {
    std::ostringstream os;
    os << "HermitianMatrix: matrix deviates from its adjoint by " << dev;
    throw DomainError(os.str());
  }
  m_ = make_hermitian_unchecked(m).m_;
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) { return make_hermitian_unchecked(ComplexMatrix::identity(n)); }
HermitianMatrix HermitianMatrix::zero(std::size_t n) { return make_hermitian_unchecked(ComplexMatrix(n, n)); }

HermitianMatrix HermitianMatrix::projector(std::span<const Complex> v) {
  return make_hermitian_unchecked(ComplexMatrix::outer(v, v));
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  m_ += other.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& other) {
  m_ -= other.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double scale) {
  m_ *= scale;
  return *this;
}

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
HermitianMatrix operator*(double scale, HermitianMatrix a) { return a *= scale; }

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_shape(a.matrix(), b.matrix(), "trace_product");
  double t = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t += (a(i, j) * b(j, i)).real();
  }
  return t;
}

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

// Cyclic Jacobi sweeps on a dense real symmetric matrix; returns eigenvalues
// on the diagonal of `a` and eigenvectors in the columns of `v`.
void jacobi_symmetric(std::vector<double>& a, std::vector<double>& v, std::size_t n, double stop) {
  auto at = [n](std::vector<double>& m, std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };
  v.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) at(v, i, i) = 1.0;

  double total = 0.0;
  for (double x : a) total += x * x;
  const double threshold = stop * std::max(1.0, std::sqrt(total));

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * at(a, i, j) * at(a, i, j);
    }
    if (std::sqrt(off) <= threshold) return;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0.0) continue;
        const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(a, k, p);
          const double akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(a, p, k);
          const double aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = at(v, k, p);
          const double vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
}

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& h, const Tolerances& tol) {
  const std::size_t n = h.dim();
  const std::size_t m = 2 * n;
  std::vector<double> real(m * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = h(i, j);
      real[i * m + j] = z.real();
      real[i * m + (j + n)] = -z.imag();
      real[(i + n) * m + j] = z.imag();
      real[(i + n) * m + (j + n)] = z.real();
    }
  }
  std::vector<double> vecs;
  jacobi_symmetric(real, vecs, m, tol.iteration_stop);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return real[a * m + a] < real[b * m + b]; });

  // Every complex eigenvector u + iv appears twice in the real embedding, as
  // (u; v) and (-v; u). Keep one representative per complex direction.
  EigenDecomposition out;
  out.vectors = ComplexMatrix(n, n);
  std::vector<std::vector<Complex>> chosen;
  for (std::size_t idx : order) {
    if (chosen.size() == n) break;
    std::vector<Complex> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = Complex{vecs[i * m + idx], vecs[(i + n) * m + idx]};
    for (const auto& prev : chosen) {
      Complex overlap{};
      for (std::size_t i = 0; i < n; ++i) overlap += std::conj(prev[i]) * c[i];
      for (std::size_t i = 0; i < n; ++i) c[i] -= overlap * prev[i];
    }
    double norm = 0.0;
    for (const auto& x : c) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm < 0.5) continue;
    for (auto& x : c) x /= norm;
    out.values.push_back(real[idx * m + idx]);
    chosen.push_back(std::move(c));
  }
  if (chosen.size() != n) throw InvariantViolation("eigh: failed to recover a complete eigenbasis");
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = chosen[k][i];
  }
  return out;
}

std::vector<double> eigenvalues(const HermitianMatrix& a, const Tolerances& tol) { return eigh(a, tol).values; }
double min_eigenvalue(const HermitianMatrix& a, const Tolerances& tol) { return eigh(a, tol).values.front(); }
double max_eigenvalue(const HermitianMatrix& a, const Tolerances& tol) { return eigh(a, tol).values.back(); }

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(HermitianMatrix h, const Tolerances& tol) : h_(std::move(h)) {
  if (h_.dim() == 0) throw DomainError("DensityMatrix: empty matrix");
  const double tr = h_.trace();
  if (std::abs(tr - 1.0) > tol.equality) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw DomainError(os.str());
  }
  const double lo = min_eigenvalue(h_, tol);
  if (lo < -tol.psd_slack) {
    std::ostringstream os;
    os << "DensityMatrix: minimum eigenvalue " << lo << " is negative";
    throw DomainError(os.str());
  }
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> v) {
  double norm = 0.0;
  for (const auto& x : v) norm += std::norm(x);
  if (norm == 0.0) throw DomainError("DensityMatrix::pure: zero vector");
  HermitianMatrix p = HermitianMatrix::projector(v);
  p *= 1.0 / norm;
  return DensityMatrix(std::move(p));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
  HermitianMatrix h = HermitianMatrix::identity(n);
  h *= 1.0 / static_cast<double>(n);
  return DensityMatrix(std::move(h));
}

bool DensityMatrix::is_pure(double tol) const {
  const ComplexMatrix sq = matrix() * matrix();
  return hs_norm(sq - matrix()) <= tol;
}

// ---------------------------------------------------------------------------
// Operations

double operator_norm(const HermitianMatrix& a, const Tolerances& tol) {
  const auto values = eigenvalues(a, tol);
  return std::max(std::abs(values.front()), std::abs(values.back()));
}

HermitianMatrix jordan_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("jordan_product: dimension mismatch " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
  ComplexMatrix ab = a.matrix() * b.matrix();
  ab += b.matrix() * a.matrix();
  ab *= 0.5;
  return make_hermitian_unchecked(std::move(ab));
}

double hs_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  return hs_norm(a.matrix() - b.matrix());
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced, std::pair<std::size_t, std::size_t> dims) {
  require_product_dims(m, dims, "partial_trace");
  const auto [da, db] = dims;
  if (traced == Subsystem::A) {
    ComplexMatrix out(db, db);
    for (std::size_t k = 0; k < db; ++k) {
      for (std::size_t l = 0; l < db; ++l) {
        for (std::size_t i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
      }
    }
    return out;
  }
  ComplexMatrix out(da, da);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      for (std::size_t k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced, std::pair<std::size_t, std::size_t> dims) {
  return DensityMatrix(make_hermitian_unchecked(partial_trace(rho.matrix(), traced, dims)));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem transposed,
                                std::pair<std::size_t, std::size_t> dims) {
  require_product_dims(m, dims, "partial_transpose");
  const auto [da, db] = dims;
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) {
          if (transposed == Subsystem::A) {
            out(i * db + k, j * db + l) = m(j * db + k, i * db + l);
          } else {
            out(i * db + k, j * db + l) = m(i * db + l, j * db + k);
          }
        }
      }
    }
  }
  return out;
}

HermitianMatrix partial_transpose(const HermitianMatrix& rho, Subsystem transposed,
                                  std::pair<std::size_t, std::size_t> dims) {
  return make_hermitian_unchecked(partial_transpose(rho.matrix(), transposed, dims));
}

HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b) {
  return make_hermitian_unchecked(tensor(a.matrix(), b.matrix()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.hermitian(), b.hermitian()));
}

}  // namespace convexstate
