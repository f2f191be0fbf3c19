#include "designlab/permgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "designlab/errors.hpp"

namespace designlab {

namespace {
constexpr u32 kDegreeLimit = 10000;
}

bool Perm::is_identity() const {
  for (u32 x = 0; x < img.size(); ++x)
    if (img[x] != x) return false;
  return true;
}

Perm identity_perm(u32 n) {
  Perm p;
  p.img.resize(n);
  std::iota(p.img.begin(), p.img.end(), 0u);
  return p;
}

Perm inverse(const Perm& p) {
  Perm q;
  q.img.resize(p.img.size());
  for (u32 x = 0; x < p.img.size(); ++x) q.img[p.img[x]] = x;
  return q;
}

Perm then(const Perm& a, const Perm& b) {
  Perm c;
  c.img.resize(a.img.size());
  for (u32 x = 0; x < a.img.size(); ++x) c.img[x] = b.img[a.img[x]];
  return c;
}

bool is_valid_perm(const Perm& p) {
  std::vector<bool> seen(p.img.size(), false);
  for (u32 y : p.img) {
    if (y >= p.img.size() || seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

std::vector<std::vector<u32>> Partition::classes() const {
  std::vector<std::vector<u32>> out(v1);
  for (u32 p = 0; p < v; ++p) out[class_of[p]].push_back(p);
  return out;
}

Partition make_partition(u32 v, std::vector<u32> class_of) {
  if (v == 0 || class_of.size() != v)
    throw Error(errc::parse_error, "partition must assign a class to each of the v points");
  u32 v1 = 0;
  for (u32 c : class_of) v1 = std::max(v1, c + 1);
  std::vector<u32> sizes(v1, 0);
  for (u32 c : class_of) ++sizes[c];
  for (u32 c = 0; c < v1; ++c) {
    if (sizes[c] == 0)
      throw Error(errc::parse_error, "class " + std::to_string(c) + " is empty");
    if (sizes[c] != sizes[0])
      throw Error(errc::parse_error, "classes 0 and " + std::to_string(c) +
                                         " have sizes " + std::to_string(sizes[0]) + " and " +
                                         std::to_string(sizes[c]));
  }
  Partition s;
  s.v = v;
  s.v0 = sizes[0];
  s.v1 = v1;
  s.class_of = std::move(class_of);
  return s;
}

namespace {

// Renumber an arbitrary class labeling by first appearance.
std::vector<u32> normalize_classes(const std::vector<u32>& raw) {
  std::vector<u32> out(raw.size());
  std::map<u32, u32> seen;
  for (std::size_t p = 0; p < raw.size(); ++p) {
    auto [it, fresh] = seen.emplace(raw[p], static_cast<u32>(seen.size()));
    out[p] = it->second;
  }
  return out;
}

struct UnionFind {
  std::vector<u32> parent;
  explicit UnionFind(u32 n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  u32 find(u32 a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  // Returns the losing root, or UINT32_MAX when already joined.
  u32 unite(u32 a, u32 b) {
    u32 ra = find(a), rb = find(b);
    if (ra == rb) return UINT32_MAX;
    u32 win = std::min(ra, rb), lose = std::max(ra, rb);
    parent[lose] = win;
    return lose;
  }
};

}  // namespace

PermGroup::PermGroup(u32 degree, std::vector<Perm> generators, std::vector<u32> base_hint)
    : degree_(degree), gens_(std::move(generators)) {
  if (degree_ == 0) throw Error(errc::parse_error, "group degree must be positive");
  if (degree_ > kDegreeLimit)
    throw Error(errc::degree_limit,
                "degree " + std::to_string(degree_) + " exceeds " + std::to_string(kDegreeLimit));
  for (const auto& g : gens_) {
    if (g.degree() != degree_)
      throw Error(errc::degree_mismatch, "generator degree " + std::to_string(g.degree()) +
                                             ", group degree " + std::to_string(degree_));
    if (!is_valid_perm(g)) throw Error(errc::parse_error, "generator is not a bijection");
  }
  if (gens_.empty()) gens_.push_back(identity_perm(degree_));

  std::vector<Perm> seed;
  for (const auto& g : gens_)
    if (!g.is_identity()) seed.push_back(g);

  std::vector<u32> hints = base_hint;
  auto hint_used = [&](u32 x) {
    for (const auto& lv : levels_)
      if (lv.base_point == x) return true;
    return false;
  };
  auto pick_base = [&](const std::vector<Perm>& moving) -> u32 {
    for (u32 h : hints) {
      if (h >= degree_ || hint_used(h)) continue;
      for (const auto& g : moving)
        if (g(h) != h) return h;
    }
    for (u32 x = 0; x < degree_; ++x)
      for (const auto& g : moving)
        if (g(x) != x) return x;
    return UINT32_MAX;
  };
  auto add_level = [&](const std::vector<Perm>& moving) {
    Level lv;
    lv.base_point = pick_base(moving);
    levels_.push_back(std::move(lv));
  };

  if (!seed.empty()) {
    // Assign every generator to the levels whose base prefix it fixes.
    add_level(seed);
    levels_[0].gens = seed;
    for (;;) {
      const Level& last = levels_.back();
      std::vector<Perm> deeper;
      for (const auto& g : last.gens)
        if (g(last.base_point) == last.base_point) deeper.push_back(g);
      if (deeper.empty()) break;
      add_level(deeper);
      levels_.back().gens = std::move(deeper);
    }
    for (auto& lv : levels_) rebuild_orbit(lv);

    // Deterministic Schreier-Sims: verify levels bottom-up, drop to the
    // level a new strong generator lands on. levels_ may reallocate inside
    // the loop, so everything is accessed through the index.
    std::size_t i = levels_.size() - 1;
    for (;;) {
      rebuild_orbit(levels_[i]);
      bool complete = true;
      for (std::size_t oi = 0; complete && oi < levels_[i].orbit.size(); ++oi) {
        const u32 beta = levels_[i].orbit[oi];
        const Perm u_beta = transversal(levels_[i], beta);
        for (std::size_t gi = 0; complete && gi < levels_[i].gens.size(); ++gi) {
          const Perm s = levels_[i].gens[gi];
          Perm h = then(then(u_beta, s), inverse(transversal(levels_[i], s(beta))));
          if (h.is_identity()) continue;
          Perm residue = std::move(h);
          std::size_t j = i + 1;
          for (; j < levels_.size(); ++j) {
            u32 p = residue(levels_[j].base_point);
            if (levels_[j].where[p] < 0) break;
            residue = then(residue, inverse(transversal(levels_[j], p)));
          }
          if (residue.is_identity()) continue;
          if (j == levels_.size()) add_level({residue});
          for (std::size_t l = i + 1; l <= j; ++l) {
            levels_[l].gens.push_back(residue);
            rebuild_orbit(levels_[l]);
          }
          i = j;
          complete = false;
        }
      }
      if (complete) {
        if (i == 0) break;
        --i;
      }
    }
  }

  order_ = 1;
  for (auto& lv : levels_) {
    rebuild_orbit(lv);
    order_ = mul128(order_, lv.orbit.size());
    base_.push_back(lv.base_point);
  }
}

void PermGroup::rebuild_orbit(Level& lv) const {
  lv.orbit.clear();
  lv.where.assign(degree_, -1);
  lv.sv_gen.assign(degree_, -1);
  lv.sv_from.assign(degree_, 0);
  lv.orbit.push_back(lv.base_point);
  lv.where[lv.base_point] = 0;
  for (std::size_t qi = 0; qi < lv.orbit.size(); ++qi) {
    u32 p = lv.orbit[qi];
    for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
      u32 q = lv.gens[gi](p);
      if (lv.where[q] < 0) {
        lv.where[q] = static_cast<i64>(lv.orbit.size());
        lv.orbit.push_back(q);
        lv.sv_gen[q] = static_cast<i64>(gi);
        lv.sv_from[q] = p;
      }
    }
  }
}

Perm PermGroup::transversal(const Level& lv, u32 pt) const {
  std::vector<std::size_t> path;
  u32 p = pt;
  while (p != lv.base_point) {
    path.push_back(static_cast<std::size_t>(lv.sv_gen[p]));
    p = lv.sv_from[p];
  }
  Perm u = identity_perm(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it) u = then(u, lv.gens[*it]);
  return u;
}

std::size_t PermGroup::sift(Perm& g) const {
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    u32 p = g(levels_[l].base_point);
    if (levels_[l].where[p] < 0) return l;
    g = then(g, inverse(transversal(levels_[l], p)));
  }
  return levels_.size();
}

std::vector<u32> PermGroup::orbit(u32 x) const {
  if (x >= degree_) throw Error(errc::out_of_range_point, "point " + std::to_string(x));
  std::vector<u32> orb{x};
  std::vector<bool> seen(degree_, false);
  seen[x] = true;
  for (std::size_t qi = 0; qi < orb.size(); ++qi)
    for (const auto& g : gens_) {
      u32 q = g(orb[qi]);
      if (!seen[q]) {
        seen[q] = true;
        orb.push_back(q);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

bool PermGroup::is_transitive() const { return orbit(0).size() == degree_; }

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) throw Error(errc::degree_mismatch, "degree mismatch in contains");
  if (!is_valid_perm(g)) throw Error(errc::parse_error, "not a bijection");
  Perm r = g;
  sift(r);
  return r.is_identity();
}

PermGroup PermGroup::point_stabilizer(u32 x) const {
  if (x >= degree_) throw Error(errc::out_of_range_point, "point " + std::to_string(x));
  PermGroup fresh(degree_, gens_, {x});
  if (fresh.levels_.empty() || fresh.levels_[0].base_point != x) return fresh;  // x is fixed
  std::vector<Perm> sg;
  if (fresh.levels_.size() > 1) sg = fresh.levels_[1].gens;
  return PermGroup(degree_, sg);
}

std::optional<Partition> PermGroup::minimal_block_system(u32 x, u32 y) const {
  if (!is_transitive()) throw Error(errc::not_transitive, "minimal_block_system needs a transitive group");
  if (x == y || x >= degree_ || y >= degree_)
    throw Error(errc::parse_error, "minimal_block_system needs two distinct points");

  UnionFind uf(degree_);
  std::vector<u32> queue;
  queue.push_back(uf.unite(x, y));
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    u32 gamma = queue[qi];
    u32 delta = uf.find(gamma);
    for (const auto& g : gens_) {
      u32 lose = uf.unite(g(gamma), g(delta));
      if (lose != UINT32_MAX) queue.push_back(lose);
    }
  }

  std::vector<u32> raw(degree_);
  for (u32 p = 0; p < degree_; ++p) raw[p] = uf.find(p);
  Partition part = make_partition(degree_, normalize_classes(raw));
  if (part.v1 == 1) return std::nullopt;
  return part;
}

bool PermGroup::is_primitive() const {
  if (!is_transitive()) throw Error(errc::not_transitive, "is_primitive needs a transitive group");
  for (u32 y = 1; y < degree_; ++y)
    if (minimal_block_system(0, y)) return false;
  return true;
}

std::vector<Partition> PermGroup::invariant_partitions() const {
  if (!is_transitive())
    throw Error(errc::not_transitive, "invariant_partitions needs a transitive group");

  // Minimal systems through the base point are the atoms; every invariant
  // partition of a transitive group is a join of them.
  std::set<std::vector<u32>> found;
  std::vector<std::vector<u32>> atoms, work;
  for (u32 y = 1; y < degree_; ++y) {
    if (auto p = minimal_block_system(0, y)) {
      if (found.insert(p->class_of).second) {
        atoms.push_back(p->class_of);
        work.push_back(p->class_of);
      }
    }
  }

  auto join = [&](const std::vector<u32>& a, const std::vector<u32>& b) {
    UnionFind uf(degree_);
    std::vector<u32> first_a(degree_, UINT32_MAX), first_b(degree_, UINT32_MAX);
    for (u32 p = 0; p < degree_; ++p) {
      if (first_a[a[p]] == UINT32_MAX) first_a[a[p]] = p;
      if (first_b[b[p]] == UINT32_MAX) first_b[b[p]] = p;
      uf.unite(p, first_a[a[p]]);
      uf.unite(p, first_b[b[p]]);
    }
    std::vector<u32> raw(degree_);
    for (u32 p = 0; p < degree_; ++p) raw[p] = uf.find(p);
    return normalize_classes(raw);
  };

  for (std::size_t wi = 0; wi < work.size(); ++wi) {
    std::vector<u32> cur = work[wi];
    for (const auto& atom : atoms) {
      std::vector<u32> j = join(cur, atom);
      u32 v1 = *std::max_element(j.begin(), j.end()) + 1;
      if (v1 == 1) continue;
      if (found.insert(j).second) work.push_back(j);
    }
  }

  std::vector<Partition> out;
  out.reserve(found.size());
  for (const auto& cls : found) out.push_back(make_partition(degree_, cls));
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.v0 != b.v0) return a.v0 < b.v0;
    return a.class_of < b.class_of;
  });
  return out;
}

std::vector<u64> PermGroup::subdegrees(u32 x) const {
  if (!is_transitive()) throw Error(errc::not_transitive, "subdegrees need a transitive group");
  PermGroup stab = point_stabilizer(x);
  std::vector<bool> seen(degree_, false);
  seen[x] = true;
  std::vector<u64> lengths;
  for (u32 p = 0; p < degree_; ++p) {
    if (seen[p]) continue;
    std::vector<u32> orb{p};
    seen[p] = true;
    for (std::size_t qi = 0; qi < orb.size(); ++qi)
      for (const auto& g : stab.generators()) {
        u32 q = g(orb[qi]);
        if (!seen[q]) {
          seen[q] = true;
          orb.push_back(q);
        }
      }
    lengths.push_back(orb.size());
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

bool PermGroup::verify_chain(u64 seed, int words) const {
  // Orbit lengths must multiply to the cached order.
  u128 prod = 1;
  for (const auto& lv : levels_) {
    std::vector<bool> seen(degree_, false);
    std::vector<u32> orb{lv.base_point};
    seen[lv.base_point] = true;
    for (std::size_t qi = 0; qi < orb.size(); ++qi)
      for (const auto& g : lv.gens) {
        u32 q = g(orb[qi]);
        if (!seen[q]) {
          seen[q] = true;
          orb.push_back(q);
        }
      }
    if (orb.size() != lv.orbit.size()) return false;
    prod = mul128(prod, orb.size());
  }
  if (prod != order_) return false;

  for (const auto& g : gens_) {
    Perm r = g;
    sift(r);
    if (!r.is_identity()) return false;
  }

  u64 s = seed ? seed : 0x9e3779b97f4a7c15ull;
  auto next = [&s]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  };
  for (int w = 0; w < words; ++w) {
    Perm word = identity_perm(degree_);
    int len = 8 + static_cast<int>(next() % 9);
    for (int i = 0; i < len; ++i) word = then(word, gens_[next() % gens_.size()]);
    Perm r = word;
    sift(r);
    if (!r.is_identity()) return false;
  }
  return true;
}

namespace {

std::map<std::vector<u32>, u64> content_counts(const IncidenceStructure& d) {
  std::map<std::vector<u32>, u64> counts;
  for (const auto& blk : d.blocks) ++counts[blk];
  return counts;
}

}  // namespace

bool preserves_blocks(const Perm& g, const IncidenceStructure& d) {
  if (g.degree() != d.v)
    throw Error(errc::degree_mismatch, "permutation degree " + std::to_string(g.degree()) +
                                           ", design has " + std::to_string(d.v) + " points");
  auto counts = content_counts(d);
  for (const auto& blk : d.blocks) {
    std::vector<u32> img;
    img.reserve(blk.size());
    for (u32 p : blk) img.push_back(g(p));
    std::sort(img.begin(), img.end());
    auto it = counts.find(img);
    if (it == counts.end() || it->second == 0) return false;
    --it->second;
  }
  return true;
}

bool is_flag_transitive(const PermGroup& g, const IncidenceStructure& d) {
  if (g.degree() != d.v) throw Error(errc::degree_mismatch, "group degree != point count");
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi)
    if (!preserves_blocks(g.generators()[gi], d))
      throw Error(errc::not_an_automorphism_group,
                  "generator " + std::to_string(gi) + " does not preserve the block multiset");
  if (d.blocks.empty()) return false;

  // Act on distinct block contents; a preserved multiset forces constant
  // multiplicity along orbits, so transitivity on distinct flags decides it.
  std::map<std::vector<u32>, u32> index;
  std::vector<const std::vector<u32>*> contents;
  for (const auto& blk : d.blocks) {
    if (index.emplace(blk, static_cast<u32>(index.size())).second) contents.push_back(nullptr);
  }
  for (auto& [blk, idx] : index) contents[idx] = &blk;
  const u32 b0 = static_cast<u32>(contents.size());
  const u64 k = d.blocks.front().size();

  std::vector<std::vector<u32>> cimg(g.generators().size(), std::vector<u32>(b0));
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
    const Perm& p = g.generators()[gi];
    for (u32 c = 0; c < b0; ++c) {
      std::vector<u32> img;
      img.reserve(contents[c]->size());
      for (u32 pt : *contents[c]) img.push_back(p(pt));
      std::sort(img.begin(), img.end());
      cimg[gi][c] = index.at(img);
    }
  }

  std::vector<bool> seen(static_cast<std::size_t>(b0) * d.v, false);
  std::vector<std::pair<u32, u32>> orb;  // (content index, point)
  auto push = [&](u32 c, u32 p) {
    std::size_t id = static_cast<std::size_t>(c) * d.v + p;
    if (!seen[id]) {
      seen[id] = true;
      orb.emplace_back(c, p);
    }
  };
  u32 c0 = index.at(d.blocks.front());
  push(c0, d.blocks.front().front());
  for (std::size_t qi = 0; qi < orb.size(); ++qi) {
    auto [c, p] = orb[qi];
    for (std::size_t gi = 0; gi < g.generators().size(); ++gi)
      push(cimg[gi][c], g.generators()[gi](p));
  }
  if (orb.size() != static_cast<std::size_t>(b0) * k) return false;
  return d.blocks.size() % b0 == 0;
}

InducedAction induced_action(const PermGroup& g, const Partition& sigma) {
  if (g.degree() != sigma.v) throw Error(errc::degree_mismatch, "group degree != partition size");
  std::vector<Perm> imgs;
  imgs.reserve(g.generators().size());
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
    const Perm& p = g.generators()[gi];
    Perm q;
    q.img.assign(sigma.v1, UINT32_MAX);
    for (u32 x = 0; x < sigma.v; ++x) {
      u32 c = sigma.class_of[x];
      u32 ic = sigma.class_of[p(x)];
      if (q.img[c] == UINT32_MAX) {
        q.img[c] = ic;
      } else if (q.img[c] != ic) {
        throw Error(errc::partition_not_invariant,
                    "generator " + std::to_string(gi) + " splits class " + std::to_string(c));
      }
    }
    imgs.push_back(std::move(q));
  }
  InducedAction ia{PermGroup(sigma.v1, std::move(imgs)), 0};
  u128 go = g.order(), io = ia.image.order();
  ia.kernel_order = go / io;
  if (mul128(ia.kernel_order, io) != go)
    throw Error(errc::identity_violation, "image order does not divide the group order");
  return ia;
}

u128 class_stabilizer_order(const PermGroup& g, const Partition& sigma, u32 class_index) {
  if (class_index >= sigma.v1)
    throw Error(errc::out_of_range_point, "class " + std::to_string(class_index));
  InducedAction ia = induced_action(g, sigma);
  u64 orb = ia.image.orbit(class_index).size();
  u128 io = ia.image.order();
  u128 stab = io / orb;
  if (mul128(stab, orb) != io)
    throw Error(errc::identity_violation, "orbit length does not divide the induced order");
  return stab;
}

}  // namespace designlab
