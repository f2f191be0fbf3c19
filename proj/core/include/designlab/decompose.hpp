#ifndef DESIGNLAB_DECOMPOSE_HPP
#define DESIGNLAB_DECOMPOSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "designlab/incidence.hpp"
#include "designlab/permgroup.hpp"

namespace designlab {

// |B ∩ Δ| over all blocks B and classes Δ takes exactly the values 0 and
// k0 for a single constant k0 >= 2. Also certifies k0 | k and the ratio
// identity (v-1)(k0-1) = (v0-1)(k-1).
u64 intersection_constant(const IncidenceStructure& d, const Partition& sigma,
                          std::vector<Check>* checks = nullptr);

enum class ComponentKind { TwoDesign, SymmetricOneDesign };

const char* component_kind_name(ComponentKind k);

struct InnerDesign {
  IncidenceStructure d0;        // distinct traces on the class, relabeled
  u64 mu = 0;                   // multiplicity of each trace
  ComponentKind kind = ComponentKind::TwoDesign;
  std::optional<DesignParams> params;  // set when d0 is a 2-design
};

InnerDesign inner_design(const IncidenceStructure& d, const Partition& sigma, u32 class_index);

struct QuotientDesign {
  IncidenceStructure d1;        // distinct class-sets
  u64 eta = 0;                  // multiplicity of each class-set
  u64 k1 = 0;
  u64 r1_counted = 0;           // distinct quotient blocks through a class
  ComponentKind kind = ComponentKind::TwoDesign;
  std::optional<DesignParams> params;  // set when d1 is a 2-design
};

QuotientDesign quotient_design(const IncidenceStructure& d, const Partition& sigma);

struct GroupFacts {
  u128 group_order = 0;
  bool flag_transitive = false;
  u128 induced_order = 0;        // |G^Sigma|
  u128 kernel_order = 0;
  u128 class_stabilizer = 0;     // |G_Delta^Sigma|
  std::vector<u64> induced_subdegrees;
  bool order_bound_holds = false;       // |G^Sigma| < |G_Delta^Sigma|^2
  std::optional<bool> ratio_bound_holds;    // (r1/(r1,lambda1))^2 > v1
  std::optional<bool> subdegree_div_holds; // r1/(r1,lambda1) | gcd(subdegrees, v1-1)
};

struct DecompositionReport {
  DesignParams params;
  u64 v0 = 0, v1 = 0, k0 = 0, k1 = 0;
  u64 mu = 0, eta = 0;
  ComponentKind d0_kind = ComponentKind::TwoDesign;
  ComponentKind d1_kind = ComponentKind::TwoDesign;
  std::optional<DesignParams> d0_params;
  std::optional<DesignParams> d1_params;
  std::optional<u64> lambda0;
  std::optional<u64> lambda1;
  u64 r1 = 0;                    // distinct quotient blocks through a fixed class
  u64 b1 = 0;                    // distinct quotient blocks
  std::optional<u64> eta0, eta1, r1_prime;
  std::string split_note;      // empty or "split not applicable"
  std::optional<GroupFacts> group;
  std::vector<Check> certificates;

  bool all_pass() const { return designlab::all_pass(certificates); }
};

// Full decomposition over sigma. When g is supplied, sigma must be
// g-invariant; flag-transitivity and the group predicates are computed and
// recorded as facts, not required.
DecompositionReport full_report(const IncidenceStructure& d, const Partition& sigma,
                                const PermGroup* g = nullptr);

struct RankReport {
  u64 rank_points = 0;
  u64 rank_block = 0;
  bool equal = false;
};

// Rank of g on points versus the rank of a block stabilizer acting on its
// own block. Requires flag-transitivity; equality is reported, not assumed.
RankReport rank_equality_check(const PermGroup& g, const IncidenceStructure& d);

}  // namespace designlab

#endif
