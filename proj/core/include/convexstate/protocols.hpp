#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convexstate/linalg.hpp"
#include "convexstate/qubit.hpp"
#include "convexstate/tolerances.hpp"

namespace convexstate {

// ---------------------------------------------------------------------------
// No cloning

struct CloningCheckReport {
  Vec3 x{};
  Vec3 y{};
  double r = 0.0;              ///< (1 + x.y)/2
  double r_embed = 0.0;        ///< Tr[(x (x) x0)(y (x) x0)], x0 = |0><0|
  double r_clone_bound = 0.0;  ///< Tr[(x (x) x)(y (x) y)]
  double r_squared = 0.0;
  /// A cloning map could not decrease the ratio, so it would need r <= r^2.
  bool contradiction = false;
};

/// Throws DomainError unless 0 < r < 1 (beyond tol.equality) and
/// InvariantViolation if the full-space values disagree with r and r^2.
CloningCheckReport cloning_contradiction(const Vec3& x, const Vec3& y, const Tolerances& tol = kDefaultTolerances);

// ---------------------------------------------------------------------------
// Bit commitment

struct BB84States {
  DensityMatrix d0;  ///< (|01><01| + |10><10|)/2
  DensityMatrix d1;  ///< (|ab><ab| + |ba><ba|)/2 with a = |+>, b = |->
  DensityMatrix e;   ///< projector onto (|01> - |10>)/sqrt(2)
};

BB84States build_bb84_states();

/// ||Tr_A d0 - Tr_A d1||_HS <= tol: Bob's reduced states agree.
bool concealment_check(const DensityMatrix& d0, const DensityMatrix& d1, double tol = 1e-12);

struct KrausChannel {
  std::string name;
  std::vector<ComplexMatrix> kraus;  ///< 2x2 operators
};

/// Nonselective projective measurement in the orthonormal basis {u0, u1}.
KrausChannel measurement_channel(const Ket& u0, const Ket& u1, std::string name);

/// ||sum_i K_i^dagger K_i - I||_HS.
double kraus_completeness_error(const KrausChannel& c);

/// (Lambda (x) id)(rho) for Lambda acting on the chosen qubit of a two-qubit state.
DensityMatrix apply_local_channel(const KrausChannel& c, const DensityMatrix& rho, Subsystem on = Subsystem::A);

struct ChannelTranscript {
  KrausChannel channel;
  DensityMatrix output;
  double distance_to_target = 0.0;  ///< HS distance
};

struct UnbindingDemo {
  ChannelTranscript to_d0;
  ChannelTranscript to_d1;
  bool outputs_separable = false;
};

/// Local measurements on A turn the singlet into d0 (computational basis) or
/// d1 (the +/- basis). Throws DomainError unless e is the singlet projector and
/// InvariantViolation if either output misses its target by more than 1e-12.
UnbindingDemo qm_unbinding_demo(const DensityMatrix& e);

/// ||(L0 (x) id) sigma - d0||^2 + ||(L1 (x) id) sigma - d1||^2 (HS norms).
double binding_residual(const DensityMatrix& sigma, const KrausChannel& l0, const KrausChannel& l1,
                        const DensityMatrix& d0, const DensityMatrix& d1);

struct BindingStart {
  std::size_t start = 0;
  double residual = 0.0;
  std::size_t evaluations = 0;
};

struct BindingSearchResult {
  double residual = 0.0;
  std::size_t support = 0;
  std::size_t starts = 0;
  std::uint64_t seed = 0;
  std::size_t best_start = 0;
  std::vector<BindingStart> transcript;
  DensityMatrix sigma;
  KrausChannel channel0;
  KrausChannel channel1;
};

struct BindingSearchOptions {
  std::size_t support = 8;
  std::size_t starts = 32;
  std::uint64_t seed = 0;
  std::size_t evaluations_per_start = 4000;
};

/// Falsification search for a separable attack: sigma is a mixture of
/// `support` pure product states, the two A-side channels have four Kraus
/// operators each (K_i = G_i S^{-1/2}, S = sum G_i^dagger G_i, from free 2x2
/// seeds). Compass coordinate descent per start, start s seeded with seed + s;
/// lowest residual wins, ties to the lower start. A large residual is evidence
/// that no attack exists within the budget, not a proof.
BindingSearchResult schr_binding_search(const DensityMatrix& d0, const DensityMatrix& d1,
                                        const BindingSearchOptions& options = {});

struct BitCommitmentReport {
  BB84States states;
  bool concealing = false;
  double epr_pt_min_eigenvalue = 0.0;
  bool epr_separable = false;
  bool qm_unbinding_demonstrated = false;
  UnbindingDemo demo;
  BindingSearchResult search;
  std::string conclusion;
};

BitCommitmentReport bit_commitment_report(const BindingSearchOptions& options = {});

}  // namespace convexstate
