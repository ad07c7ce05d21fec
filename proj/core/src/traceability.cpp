#include "convexstate/traceability.hpp"

namespace convexstate {

const std::vector<TraceEntry>& traceability_table() {
  static const std::vector<TraceEntry> table = {
      {"transition probability of rank-one projections is Tr(ef)", "affine_ratio_quantum", "AC3, test_transition"},
      {"qubit transition probability is (1 + x.y)/2", "affine_ratio_bloch", "AC3, test_transition"},
      {"classical simplexes have 0/1 transition probabilities", "affine_ratio_polytope", "test_zoo"},
      {"octahedron: distinct pure states are pairwise orthogonal", "affine_ratio_polytope, ratio_matrix_json",
       "AC1, AC2"},
      {"JB state spaces with finitely many extreme points are simplexes", "root_theorem_check_polytope", "AC1, test_jb"},
      {"faces generated by two extreme points are balls", "generated_face, ball_descriptor", "test_jb"},
      {"separable ratios never exceed full-space ratios", "affine_ratio_separable", "test_transition"},
      {"orthogonal extreme points of a JB state space are superposable", "superposability_search", "AC4, test_transition"},
      {"pure product states are joined by norm-continuous paths", "path_connect_product_states", "AC5, test_transition"},
      {"connected but unsuperposable pure states exclude a JB state space", "root_theorem_check_separable",
       "AC6, test_jb"},
      {"Jordan identity and JB norm conditions", "check_jordan_identity, check_jb_norm_inequalities", "AC7, test_jb"},
      {"a cloning map would force r <= r^2", "cloning_contradiction", "AC8, test_protocols"},
      {"BB84 analogue: concealing, unbound by entanglement, no separable attack found",
       "concealment_check, qm_unbinding_demo, schr_binding_search", "AC9, test_protocols"},
      {"linear optimisation over separable states", "maximize_linear_over_separable", "AC10, test_zoo"},
      {"verdicts are invariant under affine isomorphism", "affine_image, root_theorem_check_polytope", "AC11, test_jb"},
  };
  return table;
}

}  // namespace convexstate
