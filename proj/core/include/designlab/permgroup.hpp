#ifndef DESIGNLAB_PERMGROUP_HPP
#define DESIGNLAB_PERMGROUP_HPP

#include <optional>
#include <vector>

#include "designlab/arith.hpp"
#include "designlab/incidence.hpp"

namespace designlab {

// A permutation of [0, n) as its image list.
struct Perm {
  std::vector<u32> img;

  u32 degree() const { return static_cast<u32>(img.size()); }
  u32 operator()(u32 x) const { return img[x]; }
  bool is_identity() const;
  bool operator==(const Perm&) const = default;
};

Perm identity_perm(u32 n);
Perm inverse(const Perm& p);
// Left-to-right composition: then(a, b) maps x to b(a(x)).
Perm then(const Perm& a, const Perm& b);
bool is_valid_perm(const Perm& p);

// Equal-size classes covering [0, v). class_of[x] is the class index.
struct Partition {
  u32 v = 0;
  u32 v0 = 0;  // class size
  u32 v1 = 0;  // class count
  std::vector<u32> class_of;

  std::vector<std::vector<u32>> classes() const;
  bool is_nontrivial() const { return v0 > 1 && v0 < v; }
  bool operator==(const Partition&) const = default;
};

// Validates that class indices are exactly [0, v1) and all classes have the
// same size.
Partition make_partition(u32 v, std::vector<u32> class_of);

// Generated permutation group with a deterministic stabilizer chain
// (Schreier vectors per level). Immutable after construction.
class PermGroup {
public:
  // base_hint points are placed first in the base while they are moved by
  // the residual group; remaining base points are chosen as the smallest
  // moved point. Degree ceiling 10^4.
  PermGroup(u32 degree, std::vector<Perm> generators, std::vector<u32> base_hint = {});

  u32 degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  u128 order() const { return order_; }
  const std::vector<u32>& base() const { return base_; }

  std::vector<u32> orbit(u32 x) const;
  bool is_transitive() const;
  bool contains(const Perm& g) const;

  // Generators of the stabilizer of x (strong generators of the chain built
  // with x first in the base), plus its order.
  PermGroup point_stabilizer(u32 x) const;

  // Finest invariant partition whose class containing x also contains y;
  // nullopt when that partition has a single class. Requires transitivity.
  std::optional<Partition> minimal_block_system(u32 x, u32 y) const;
  bool is_primitive() const;
  // Every nontrivial invariant partition, deduplicated, ordered by class
  // size then by smallest-class contents. Requires transitivity.
  std::vector<Partition> invariant_partitions() const;

  // Orbit lengths of the stabilizer of x on the other points, ascending.
  std::vector<u64> subdegrees(u32 x) const;

  // Sifts `words` pseudorandom generator words through the chain; true when
  // every one reduces to the identity and the order equals the product of
  // basic orbit lengths.
  bool verify_chain(u64 seed, int words) const;

private:
  struct Level {
    u32 base_point = 0;
    std::vector<Perm> gens;          // strong generators moving this level
    std::vector<u32> orbit;          // discovery order, orbit[0] = base_point
    std::vector<i64> where;          // point -> index in orbit, -1 outside
    std::vector<i64> sv_gen;         // Schreier vector: generator index
    std::vector<u32> sv_from;        // Schreier vector: preimage point
  };

  void rebuild_orbit(Level& lv) const;
  Perm transversal(const Level& lv, u32 pt) const;
  // Returns the first level at which g fails to sift, or levels_.size().
  std::size_t sift(Perm& g) const;

  u32 degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
  u128 order_ = 1;
  std::vector<u32> base_;
};

bool preserves_blocks(const Perm& g, const IncidenceStructure& d);

// True when the orbit of one flag covers all b*k flags. Every generator must
// preserve the block multiset.
bool is_flag_transitive(const PermGroup& g, const IncidenceStructure& d);

struct InducedAction {
  PermGroup image;
  u128 kernel_order = 0;
};

// Action of g on class indices; throws PartitionNotInvariant with the
// offending generator and class when sigma is not g-invariant.
InducedAction induced_action(const PermGroup& g, const Partition& sigma);

u128 class_stabilizer_order(const PermGroup& g, const Partition& sigma, u32 class_index);

}  // namespace designlab

#endif
