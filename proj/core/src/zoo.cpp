#include "convexstate/zoo.hpp"

#include <cmath>
#include <random>

#include "convexstate/errors.hpp"

namespace convexstate {

VPolytope make_spekkens_hull() {
  std::vector<RationalPoint> v;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < 3; ++i) {
    for (int sign : {1, -1}) {
      RationalPoint p(3, Rational(0));
      p[i] = sign;
      v.push_back(std::move(p));
      labels.push_back((sign < 0 ? "-e" : "e") + std::to_string(i + 1));
    }
  }
  return VPolytope(3, std::move(v), "spekkens", std::move(labels));
}

LabeledPointSet make_spekkens_points() {
  const VPolytope hull = make_spekkens_hull();
  LabeledPointSet s{hull.labels(), hull.vertices()};
  s.labels.push_back("mixed");
  s.points.emplace_back(3, Rational(0));
  return s;
}

VPolytope make_classical_simplex(std::size_t n) {
  if (n == 0) throw DomainError("make_classical_simplex: n must be at least 1");
  std::vector<RationalPoint> v(1, RationalPoint(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    RationalPoint p(n, Rational(0));
    p[i] = 1;
    v.push_back(std::move(p));
  }
  return VPolytope(n, std::move(v), "simplex:" + std::to_string(n));
}

bool separable_membership(const DensityMatrix& rho, double slack) {
  if (rho.dim() != 4) {
    throw DomainError("separable_membership: expected a 4x4 density matrix, got " + std::to_string(rho.dim()) + "x" +
                      std::to_string(rho.dim()));
  }
  return min_eigenvalue(partial_transpose(rho.hermitian(), Subsystem::A, {2, 2})) >= -slack;
}

ProductKet ProductStateParam::kets() const { return {bloch_ket(a), bloch_ket(b)}; }

DensityMatrix ProductStateParam::density() const { return kets().density(); }

ProductStateParam sample_pure_product(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto factor = [&] {
    Ket k{Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng))};
    return bloch_vector(HermitianMatrix::projector(normalized(std::move(k))));
  };
  ProductStateParam p;
  p.a = factor();
  p.b = factor();
  return p;
}

namespace {

Ket top_eigenvector(const HermitianMatrix& h) {
  const auto eig = eigh(h);
  Ket v(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) v[i] = eig.vectors(i, h.dim() - 1);
  return v;
}

// sum_{kl} conj(b_k) W_{(ik),(jl)} b_l, the operator on A with B fixed.
HermitianMatrix contract_b(const ComplexMatrix& w, const Ket& b) {
  ComplexMatrix out(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(i, j) += std::conj(b[k]) * w(2 * i + k, 2 * j + l) * b[l];
  return make_hermitian_unchecked(0.5 * (out + out.adjoint()));
}

HermitianMatrix contract_a(const ComplexMatrix& w, const Ket& a) {
  ComplexMatrix out(2, 2);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out(k, l) += std::conj(a[i]) * w(2 * i + k, 2 * j + l) * a[j];
  return make_hermitian_unchecked(0.5 * (out + out.adjoint()));
}

}  // namespace

SeparableOptimum maximize_linear_over_separable(const HermitianMatrix& w, std::size_t starts, std::uint64_t seed) {
  if (w.dim() != 4) throw DomainError("maximize_linear_over_separable: expected a 4x4 operator");
  if (starts == 0) throw DomainError("maximize_linear_over_separable: starts must be positive");
  SeparableOptimum best;
  bool have = false;
  const ComplexMatrix& m = w.matrix();
  for (std::size_t s = 0; s < starts; ++s) {
    ProductKet pk = sample_pure_product(seed + s).kets();
    double value = trace_product(w, pk.density().hermitian());
    for (int iter = 0; iter < 1000; ++iter) {
      pk.a = top_eigenvector(contract_b(m, pk.b));
      pk.b = top_eigenvector(contract_a(m, pk.a));
      const double next = trace_product(w, pk.density().hermitian());
      const double change = std::abs(next - value);
      value = next;
      if (change < 1e-12) break;
    }
    if (!have || value > best.value) {
      have = true;
      best.value = value;
      best.best_start = s;
      best.argmax.a = bloch_vector(HermitianMatrix::projector(pk.a));
      best.argmax.b = bloch_vector(HermitianMatrix::projector(pk.b));
    }
  }
  best.upper_bound = max_eigenvalue(w);
  best.tight = std::abs(best.upper_bound - best.value) <= 1e-9;
  return best;
}

std::vector<std::string> zoo_names() { return {"spekkens", "simplex:n", "bloch", "full2x2", "separable2x2"}; }

StateSpaceHandle make_zoo(const std::string& name) {
  if (name == "spekkens") return {name, make_spekkens_hull()};
  if (name == "bloch") return {name, BlochBall{}};
  if (name == "full2x2") return {name, FullQuantum{4}};
  if (name == "separable2x2") return {name, Separable2x2{}};
  if (name.rfind("simplex:", 0) == 0) {
    const std::string digits = name.substr(8);
    if (digits.empty() || digits.size() > 3 || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw DomainError("make_zoo: malformed simplex size in '" + name + "' (expected simplex:n with 1 <= n <= 999)");
    }
    return {name, make_classical_simplex(std::stoul(digits))};
  }
  std::string known;
  for (const auto& n : zoo_names()) known += (known.empty() ? "" : ", ") + n;
  throw DomainError("unknown theory '" + name + "' (known: " + known + ")");
}

}  // namespace convexstate
