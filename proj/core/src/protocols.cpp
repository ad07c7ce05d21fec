#include "convexstate/protocols.hpp"

#include <cmath>
#include <random>

#include "convexstate/errors.hpp"
#include "convexstate/optimize.hpp"
#include "convexstate/transition.hpp"

namespace convexstate {

CloningCheckReport cloning_contradiction(const Vec3& x, const Vec3& y, const Tolerances& tol) {
  CloningCheckReport rep;
  rep.x = x;
  rep.y = y;
  rep.r = affine_ratio_bloch(x, y, tol);
  if (rep.r <= tol.equality || rep.r >= 1.0 - tol.equality) {
    throw DomainError("cloning_contradiction: inputs must be distinct and non-orthogonal (ratio strictly in (0,1))");
  }
  const DensityMatrix dx = DensityMatrix::pure(bloch_ket(x));
  const DensityMatrix dy = DensityMatrix::pure(bloch_ket(y));
  const DensityMatrix blank = DensityMatrix::pure(basis_ket(2, 0));
  rep.r_embed = affine_ratio_quantum(tensor(dx, blank), tensor(dy, blank), tol);
  rep.r_clone_bound = affine_ratio_quantum(tensor(dx, dx), tensor(dy, dy), tol);
  rep.r_squared = rep.r * rep.r;
  if (std::abs(rep.r_embed - rep.r) > tol.equality || std::abs(rep.r_clone_bound - rep.r_squared) > tol.equality) {
    throw InvariantViolation("cloning_contradiction: full-space ratios disagree with r and r^2");
  }
  rep.contradiction = rep.r > rep.r_clone_bound;
  return rep;
}

BB84States build_bb84_states() {
  auto mix = [](const char* p, const char* q) {
    const HermitianMatrix h =
        0.5 * (HermitianMatrix::projector(product_ket(p)) + HermitianMatrix::projector(product_ket(q)));
    return DensityMatrix(h);
  };
  Ket singlet = product_ket("01");
  const Ket ten = product_ket("10");
  for (std::size_t i = 0; i < 4; ++i) singlet[i] = (singlet[i] - ten[i]) / std::sqrt(2.0);
  return {mix("01", "10"), mix("+-", "-+"), DensityMatrix::pure(singlet)};
}

bool concealment_check(const DensityMatrix& d0, const DensityMatrix& d1, double tol) {
  if (d0.dim() != 4 || d1.dim() != 4) throw DomainError("concealment_check: expected two-qubit states");
  const auto r0 = partial_trace(d0, Subsystem::A, {2, 2});
  const auto r1 = partial_trace(d1, Subsystem::A, {2, 2});
  return hs_distance(r0.hermitian(), r1.hermitian()) <= tol;
}

KrausChannel measurement_channel(const Ket& u0, const Ket& u1, std::string name) {
  if (u0.size() != 2 || u1.size() != 2) throw DomainError("measurement basis vectors must be qubit kets");
  if (std::abs(std::norm(inner(u0, u0)) - 1) > 1e-12 || std::abs(std::norm(inner(u1, u1)) - 1) > 1e-12 ||
      std::abs(inner(u0, u1)) > 1e-12)
    throw DomainError("measurement basis is not orthonormal");
  return {std::move(name), {ComplexMatrix::outer(u0, u0), ComplexMatrix::outer(u1, u1)}};
}

double kraus_completeness_error(const KrausChannel& c) {
  ComplexMatrix sum(2, 2);
  for (const auto& k : c.kraus) sum += k.adjoint() * k;
  return hs_norm(sum - ComplexMatrix::identity(2));
}

namespace {

ComplexMatrix apply_raw(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho, Subsystem on) {
  ComplexMatrix out(4, 4);
  const ComplexMatrix id = ComplexMatrix::identity(2);
  for (const auto& k : kraus) {
    const ComplexMatrix full = on == Subsystem::A ? tensor(k, id) : tensor(id, k);
    out += full * rho * full.adjoint();
  }
  return out;
}

double hs_distance_squared(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double d = hs_norm(a - b);
  return d * d;
}

}  // namespace

DensityMatrix apply_local_channel(const KrausChannel& c, const DensityMatrix& rho, Subsystem on) {
  if (rho.dim() != 4) throw DomainError("apply_local_channel: expected a two-qubit state");
  for (const auto& k : c.kraus) {
    if (k.rows() != 2 || k.cols() != 2) throw DomainError("apply_local_channel: Kraus operators must be 2x2");
  }
  return DensityMatrix(HermitianMatrix(apply_raw(c.kraus, rho.hermitian().matrix(), on)));
}

UnbindingDemo qm_unbinding_demo(const DensityMatrix& e) {
  const BB84States s = build_bb84_states();
  if (e.dim() != 4 || hs_distance(e.hermitian(), s.e.hermitian()) > 1e-10) {
    throw DomainError("qm_unbinding_demo: input must be the singlet projector");
  }
  auto run = [&](KrausChannel c, const DensityMatrix& target) {
    DensityMatrix out = apply_local_channel(c, e);
    const double d = hs_distance(out.hermitian(), target.hermitian());
    if (d > 1e-12) throw InvariantViolation("qm_unbinding_demo: channel '" + c.name + "' misses its target");
    return ChannelTranscript{std::move(c), std::move(out), d};
  };
  UnbindingDemo demo{run(measurement_channel(qubit_ket('0'), qubit_ket('1'), "measure_A_computational"), s.d0),
                     run(measurement_channel(qubit_ket('+'), qubit_ket('-'), "measure_A_plus_minus"), s.d1),
                     false};
  demo.outputs_separable =
      min_eigenvalue(partial_transpose(demo.to_d0.output.hermitian(), Subsystem::A, {2, 2})) >= -1e-10 &&
      min_eigenvalue(partial_transpose(demo.to_d1.output.hermitian(), Subsystem::A, {2, 2})) >= -1e-10;
  return demo;
}

double binding_residual(const DensityMatrix& sigma, const KrausChannel& l0, const KrausChannel& l1,
                        const DensityMatrix& d0, const DensityMatrix& d1) {
  const ComplexMatrix& s = sigma.hermitian().matrix();
  return hs_distance_squared(apply_raw(l0.kraus, s, Subsystem::A), d0.hermitian().matrix()) +
         hs_distance_squared(apply_raw(l1.kraus, s, Subsystem::A), d1.hermitian().matrix());
}

namespace {

constexpr std::size_t kKraus = 4;
constexpr std::size_t kChannelParams = kKraus * 8;

std::vector<ComplexMatrix> channel_from(const double* p) {
  std::vector<ComplexMatrix> g(kKraus, ComplexMatrix(2, 2));
  ComplexMatrix s(2, 2);
  for (std::size_t i = 0; i < kKraus; ++i) {
    for (std::size_t e = 0; e < 4; ++e) g[i](e / 2, e % 2) = Complex(p[8 * i + 2 * e], p[8 * i + 2 * e + 1]);
    s += g[i].adjoint() * g[i];
  }
  s += 1e-12 * ComplexMatrix::identity(2);
  const HermitianMatrix inv_sqrt =
      spectral_apply(make_hermitian_unchecked(0.5 * (s + s.adjoint())), [](double v) { return 1.0 / std::sqrt(v); });
  for (auto& k : g) k = k * inv_sqrt.matrix();
  return g;
}

ComplexMatrix sigma_from(const double* p, std::size_t support) {
  double top = p[4];
  for (std::size_t k = 1; k < support; ++k) top = std::max(top, p[5 * k + 4]);
  double total = 0.0;
  for (std::size_t k = 0; k < support; ++k) total += std::exp(p[5 * k + 4] - top);
  ComplexMatrix out(4, 4);
  for (std::size_t k = 0; k < support; ++k) {
    const double* q = p + 5 * k;
    const Ket a{std::cos(q[0]), std::polar(std::sin(q[0]), q[1])};
    const Ket b{std::cos(q[2]), std::polar(std::sin(q[2]), q[3])};
    const Ket ab = kron(a, b);
    out += Complex(std::exp(q[4] - top) / total) * ComplexMatrix::outer(ab, ab);
  }
  return out;
}

}  // namespace

BindingSearchResult schr_binding_search(const DensityMatrix& d0, const DensityMatrix& d1,
                                        const BindingSearchOptions& options) {
  if (options.support == 0 || options.starts == 0 || options.evaluations_per_start == 0) {
    throw DomainError("schr_binding_search: support, starts and budget must be positive");
  }
  if (!concealment_check(d0, d1)) throw DomainError("schr_binding_search: the commitment is not concealing");
  const std::size_t sigma_params = 5 * options.support;
  const ComplexMatrix& t0 = d0.hermitian().matrix();
  const ComplexMatrix& t1 = d1.hermitian().matrix();
  auto objective = [&](const std::vector<double>& p) {
    const ComplexMatrix sigma = sigma_from(p.data(), options.support);
    return hs_distance_squared(apply_raw(channel_from(p.data() + sigma_params), sigma, Subsystem::A), t0) +
           hs_distance_squared(apply_raw(channel_from(p.data() + sigma_params + kChannelParams), sigma, Subsystem::A),
                               t1);
  };

  double best_value = 0.0;
  std::size_t best_start = 0;
  std::vector<BindingStart> transcript;
  std::vector<double> best_x;
  for (std::size_t s = 0; s < options.starts; ++s) {
    std::mt19937_64 rng(options.seed + s);
    std::normal_distribution<double> gauss;
    std::vector<double> x0(sigma_params + 2 * kChannelParams);
    for (auto& v : x0) v = gauss(rng);
    auto r = compass_minimize(objective, std::move(x0), 0.5, 1e-6, options.evaluations_per_start);
    transcript.push_back({s, r.value, r.evaluations});
    if (best_x.empty() || r.value < best_value) {
      best_value = r.value;
      best_start = s;
      best_x = std::move(r.x);
    }
  }
  return BindingSearchResult{
      .residual = best_value,
      .support = options.support,
      .starts = options.starts,
      .seed = options.seed,
      .best_start = best_start,
      .transcript = std::move(transcript),
      .sigma = DensityMatrix(HermitianMatrix(sigma_from(best_x.data(), options.support))),
      .channel0 = {"attack_0", channel_from(best_x.data() + sigma_params)},
      .channel1 = {"attack_1", channel_from(best_x.data() + sigma_params + kChannelParams)},
  };
}

BitCommitmentReport bit_commitment_report(const BindingSearchOptions& options) {
  BB84States states = build_bb84_states();
  const bool concealing = concealment_check(states.d0, states.d1);
  const double pt_min = min_eigenvalue(partial_transpose(states.e.hermitian(), Subsystem::A, {2, 2}));
  UnbindingDemo demo = qm_unbinding_demo(states.e);
  BindingSearchResult search = schr_binding_search(states.d0, states.d1, options);
  std::string conclusion = search.residual > 0.01
                               ? "no separable attack found within budget (evidence of binding, not a proof)"
                               : "search found a near-successful separable attack; binding not supported";
  return BitCommitmentReport{
      .states = std::move(states),
      .concealing = concealing,
      .epr_pt_min_eigenvalue = pt_min,
      .epr_separable = pt_min >= -1e-10,
      .qm_unbinding_demonstrated = true,
      .demo = std::move(demo),
      .search = std::move(search),
      .conclusion = std::move(conclusion),
  };
}

}  // namespace convexstate
