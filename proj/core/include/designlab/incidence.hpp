#ifndef DESIGNLAB_INCIDENCE_HPP
#define DESIGNLAB_INCIDENCE_HPP

#include <iosfwd>
#include <vector>

#include "designlab/arith.hpp"

namespace designlab {

// Point set is {0, ..., v-1}. Each block is stored strictly ascending; the
// block list keeps its input order. Repeated blocks are allowed and counted
// with multiplicity.
struct IncidenceStructure {
  u32 v = 0;
  std::vector<std::vector<u32>> blocks;

  u64 b() const { return blocks.size(); }
  bool operator==(const IncidenceStructure&) const = default;
};

// Validates ranges, rejects duplicate points inside a block and empty
// blocks, then canonicalizes.
IncidenceStructure make_incidence(u32 v, std::vector<std::vector<u32>> blocks);

struct DesignParams {
  u64 v = 0;
  u64 b = 0;
  u64 r = 0;
  u64 k = 0;
  u64 lambda = 0;

  bool operator==(const DesignParams&) const = default;
};

// Throws unless every block has the same size, every point lies in the same
// number of blocks, and every unordered point pair lies in the same positive
// number of blocks.
DesignParams verify_2design(const IncidenceStructure& d);

// The standard counting identities and bounds for the given parameters.
std::vector<Check> check_identities(const DesignParams& p);

bool is_symmetric(const DesignParams& p);

// 2 < k < v.
bool is_nontrivial(const DesignParams& p);

IncidenceStructure parse_design(std::istream& in);
void write_design(std::ostream& out, const IncidenceStructure& d);

}  // namespace designlab

#endif
