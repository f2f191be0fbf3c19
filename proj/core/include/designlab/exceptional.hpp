#ifndef DESIGNLAB_EXCEPTIONAL_HPP
#define DESIGNLAB_EXCEPTIONAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "designlab/decompose.hpp"
#include "designlab/feasibility.hpp"
#include "designlab/incidence.hpp"
#include "designlab/permgroup.hpp"

namespace designlab {

// Elements of the group are 4-bit vectors 0..15 under XOR.
struct DifferenceSet16 {
  std::vector<u32> elements;  // six distinct values, 0 included
};

// Lexicographically first 6-subset of {0..15} containing 0 whose 30 ordered
// XOR-differences hit every nonzero value exactly twice.
DifferenceSet16 find_difference_set_16_6_2();

// Blocks {d ^ g : d in D} for each g, in ascending g order.
IncidenceStructure develop_difference_set(const DifferenceSet16& ds);

// The sixteen XOR-translations x -> x ^ g, ascending g.
std::vector<Perm> translation_generators();

// All 35 order-4 subgroups of the group, each as a sorted 4-element list,
// in lexicographic order.
std::vector<std::vector<u32>> order4_subgroups();

// Partition of {0..15} into the four cosets of the given subgroup, classes
// numbered by smallest element order.
Partition coset_partition(const std::vector<u32>& subgroup);

// Subgroups whose coset partition gives a constant block intersection on
// the developed design, with that constant.
struct SubgroupScan {
  std::vector<u32> subgroup;
  u64 k0 = 0;
};
std::vector<SubgroupScan> constant_intersection_subgroups(const IncidenceStructure& d);

// Lines of the affine plane AG_2(q) over GF(q), q in {2,4,8,16}: a
// 2-(q^2, q, 1) design with q(q+1) lines.
IncidenceStructure affine_plane(u32 q);

// All k-subsets of n points.
IncidenceStructure complete_design(u32 n, u32 k);

struct Certificate {
  DesignParams params;
  bool flag_transitive = false;
  u64 flag_orbit = 0;
  bool imprimitive = false;
  Partition partition;
  DecompositionReport report;
  std::optional<u64> table_row_k0;  // matched symmetric-family row
  std::vector<Check> checks;

  bool all_pass() const { return designlab::all_pass(checks); }
};

// Verify a (design, group, partition) triple end to end against the
// expected parameters and the matching symmetric-family table row.
Certificate load_certified(const std::string& design_path, const std::string& gens_path,
                           const std::string& partition_path, const DesignParams& expected);

struct FermatFrame {
  ParamCandidate candidate;
  std::optional<IncidenceStructure> inner;     // AG_2(2^(2^j)) when buildable
  std::optional<DesignParams> inner_params;
  std::optional<IncidenceStructure> quotient;  // complete (q+2 choose q+1) structure
  std::optional<DesignParams> quotient_params;
  bool components_built = false;
  std::string status;  // "OPEN" plus a scale note when components are omitted
};

// Components forced for the Fermat parameter set: the affine plane of order
// 2^(2^j) and the trivial symmetric design on 2^(2^j)+2 points. Built
// explicitly for j <= 2; larger j records parameters only (ScaleLimit note).
FermatFrame fermat_frame(u64 j);

}  // namespace designlab

#endif
