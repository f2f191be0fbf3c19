#include "designlab/decompose.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "designlab/errors.hpp"

namespace designlab {

const char* component_kind_name(ComponentKind k) {
  return k == ComponentKind::TwoDesign ? "2-design" : "symmetric 1-design";
}

u64 intersection_constant(const IncidenceStructure& d, const Partition& sigma,
                          std::vector<Check>* checks) {
  if (sigma.v != d.v) throw Error(errc::degree_mismatch, "partition size != point count");
  if (!sigma.is_nontrivial())
    throw Error(errc::trivial_partition,
                "need 1 < class size < v, got class size " + std::to_string(sigma.v0));
  DesignParams p = verify_2design(d);

  u64 k0 = 0;
  std::vector<u64> count(sigma.v1, 0);
  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    std::vector<u32> touched;
    for (u32 pt : d.blocks[bi]) {
      u32 c = sigma.class_of[pt];
      if (count[c]++ == 0) touched.push_back(c);
    }
    for (u32 c : touched) {
      u64 n = count[c];
      count[c] = 0;
      if (k0 == 0) k0 = n;
      if (n != k0)
        throw Error(errc::non_constant_intersection,
                    "block " + std::to_string(bi) + " meets class " + std::to_string(c) +
                        " in " + std::to_string(n) + " points, expected " + std::to_string(k0));
    }
  }
  if (k0 == 1)
    throw Error(errc::constant_is_one, "every nonempty block-class intersection is a single point");

  if (checks) {
    checks->push_back(make_check_pred("k0_divides_k", p.k % k0, 0, p.k % k0 == 0));
    checks->push_back(make_check("rel1", mul128(p.v - 1, k0 - 1), mul128(sigma.v0 - 1, p.k - 1)));
  }
  return k0;
}

namespace {

struct Collapsed {
  std::vector<std::vector<u32>> distinct;  // lexicographic order
  u64 multiplicity = 0;                    // uniform count of each distinct member
};

// Collapse a multiset of sorted point lists, requiring uniform multiplicity.
Collapsed collapse(const std::vector<std::vector<u32>>& items, const char* what) {
  std::map<std::vector<u32>, u64> counts;
  for (const auto& it : items) ++counts[it];
  Collapsed out;
  for (const auto& [key, n] : counts) {
    if (out.multiplicity == 0) out.multiplicity = n;
    if (n != out.multiplicity)
      throw Error(errc::non_constant_multiplicity,
                  std::string(what) + " repeated " + std::to_string(n) + " times where another is repeated " +
                      std::to_string(out.multiplicity));
    out.distinct.push_back(key);
  }
  return out;
}

}  // namespace

InnerDesign inner_design(const IncidenceStructure& d, const Partition& sigma, u32 class_index) {
  if (sigma.v != d.v) throw Error(errc::degree_mismatch, "partition size != point count");
  if (class_index >= sigma.v1)
    throw Error(errc::out_of_range_point, "class " + std::to_string(class_index));

  std::vector<u32> pos(d.v, UINT32_MAX);
  {
    u32 next = 0;
    for (u32 p = 0; p < d.v; ++p)
      if (sigma.class_of[p] == class_index) pos[p] = next++;
  }

  std::vector<std::vector<u32>> traces;
  for (const auto& blk : d.blocks) {
    std::vector<u32> tr;
    for (u32 p : blk)
      if (pos[p] != UINT32_MAX) tr.push_back(pos[p]);
    if (!tr.empty()) traces.push_back(std::move(tr));
  }
  if (traces.empty())
    throw Error(errc::non_constant_intersection,
                "no block meets class " + std::to_string(class_index));

  Collapsed col = collapse(traces, "trace");
  InnerDesign out;
  out.d0 = make_incidence(sigma.v0, col.distinct);
  out.mu = col.multiplicity;

  u64 k0 = out.d0.blocks.front().size();
  out.kind = (k0 == sigma.v0 - 1) ? ComponentKind::SymmetricOneDesign : ComponentKind::TwoDesign;
  try {
    out.params = verify_2design(out.d0);
  } catch (const Error& e) {
    if (out.kind == ComponentKind::TwoDesign)
      throw Error(errc::inner_not_design,
                  "traces on class " + std::to_string(class_index) + " are not a 2-design (" +
                      e.what() + ")");
    // k0 = v0-1 branch: at minimum the distinct traces must replicate evenly.
    std::vector<u64> rep(sigma.v0, 0);
    for (const auto& tr : out.d0.blocks)
      for (u32 p : tr) ++rep[p];
    for (u32 x = 0; x < sigma.v0; ++x)
      if (rep[x] != rep[0])
        throw Error(errc::inner_not_design,
                    "traces on class " + std::to_string(class_index) + " are not a 1-design");
  }
  return out;
}

QuotientDesign quotient_design(const IncidenceStructure& d, const Partition& sigma) {
  if (sigma.v != d.v) throw Error(errc::degree_mismatch, "partition size != point count");

  std::vector<std::vector<u32>> class_sets;
  class_sets.reserve(d.blocks.size());
  u64 k1 = 0;
  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    std::vector<u32> cs;
    for (u32 p : d.blocks[bi]) cs.push_back(sigma.class_of[p]);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    if (k1 == 0) k1 = cs.size();
    if (cs.size() != k1)
      throw Error(errc::non_constant_trace_count,
                  "block " + std::to_string(bi) + " meets " + std::to_string(cs.size()) +
                      " classes, block 0 meets " + std::to_string(k1));
    class_sets.push_back(std::move(cs));
  }
  if (k1 <= 1)
    throw Error(errc::trivial_quotient, "every block lies inside a single class");

  Collapsed col = collapse(class_sets, "class-set");
  QuotientDesign out;
  out.d1 = make_incidence(sigma.v1, col.distinct);
  out.eta = col.multiplicity;
  out.k1 = k1;

  std::vector<u64> rep(sigma.v1, 0);
  for (const auto& cs : out.d1.blocks)
    for (u32 c : cs) ++rep[c];
  for (u32 c = 0; c < sigma.v1; ++c)
    if (rep[c] != rep[0])
      throw Error(errc::non_constant_trace_count,
                  "class 0 lies in " + std::to_string(rep[0]) +
                      " distinct quotient blocks, class " + std::to_string(c) + " in " +
                      std::to_string(rep[c]));
  out.r1_counted = rep[0];

  out.kind = (k1 == sigma.v1 - 1) ? ComponentKind::SymmetricOneDesign : ComponentKind::TwoDesign;
  try {
    out.params = verify_2design(out.d1);
  } catch (const Error&) {
    if (out.kind == ComponentKind::TwoDesign) throw;
    // k1 = v1-1 with even replication: acceptable as a symmetric 1-design.
  }
  return out;
}

DecompositionReport full_report(const IncidenceStructure& d, const Partition& sigma,
                                const PermGroup* g) {
  DecompositionReport rep;
  rep.params = verify_2design(d);

  u64 k0 = intersection_constant(d, sigma, &rep.certificates);
  rep.v0 = sigma.v0;
  rep.v1 = sigma.v1;
  rep.k0 = k0;

  InnerDesign inner = inner_design(d, sigma, 0);
  rep.mu = inner.mu;
  rep.d0_kind = inner.kind;
  rep.d0_params = inner.params;
  if (inner.params) rep.lambda0 = inner.params->lambda;

  bool classes_agree = true;
  for (u32 c = 1; c < sigma.v1; ++c) {
    InnerDesign other = inner_design(d, sigma, c);
    if (other.mu != inner.mu || other.kind != inner.kind || other.params != inner.params ||
        other.d0.blocks.size() != inner.d0.blocks.size())
      classes_agree = false;
  }
  rep.certificates.push_back(make_check_pred("inner_classes_agree", classes_agree ? sigma.v1 : 0,
                                             sigma.v1, classes_agree));

  QuotientDesign quot = quotient_design(d, sigma);
  rep.k1 = quot.k1;
  rep.eta = quot.eta;
  rep.d1_kind = quot.kind;
  rep.d1_params = quot.params;
  if (quot.params) rep.lambda1 = quot.params->lambda;
  rep.b1 = quot.d1.blocks.size();

  const u64 v = rep.params.v, k = rep.params.k, lambda = rep.params.lambda;
  rep.certificates.push_back(make_check("v_eq_v0v1", v, mul128(rep.v0, rep.v1)));
  rep.certificates.push_back(make_check("k_eq_k0k1", k, mul128(rep.k0, rep.k1)));
  rep.certificates.push_back(
      make_check("rel2", mul128(mul128(rep.v1 - 1, rep.v0), rep.k0 - 1),
                 mul128(mul128(rep.k1 - 1, rep.k0), rep.v0 - 1)));
  if (rep.lambda0)
    rep.certificates.push_back(make_check("lambda0", mul128(rep.mu, *rep.lambda0), lambda));
  if (rep.lambda1)
    rep.certificates.push_back(make_check("lambda1",
                                          mul128(mul128(*rep.lambda1, rep.k0), mul128(rep.k0, rep.eta)),
                                          mul128(mul128(rep.v0, rep.v0), lambda)));

  // Pair coverage inside classes collapses with multiplicity mu.
  if (v <= 200) {
    bool all_pairs = true;
    u128 bad_lhs = lambda, bad_rhs = lambda;
    for (u32 c = 0; c < sigma.v1 && all_pairs; ++c) {
      std::vector<u32> pts;
      for (u32 p = 0; p < sigma.v; ++p)
        if (sigma.class_of[p] == c) pts.push_back(p);
      for (std::size_t i = 0; i < pts.size() && all_pairs; ++i) {
        for (std::size_t j = i + 1; j < pts.size() && all_pairs; ++j) {
          std::map<std::vector<u32>, bool> seen;
          for (const auto& blk : d.blocks) {
            bool hi = std::binary_search(blk.begin(), blk.end(), pts[i]);
            bool hj = std::binary_search(blk.begin(), blk.end(), pts[j]);
            if (hi && hj) {
              std::vector<u32> tr;
              for (u32 p : blk)
                if (sigma.class_of[p] == c) tr.push_back(p);
              seen[tr] = true;
            }
          }
          if (mul128(rep.mu, seen.size()) != lambda) {
            all_pairs = false;
            bad_lhs = mul128(rep.mu, seen.size());
            bad_rhs = lambda;
          }
        }
      }
    }
    rep.certificates.push_back(make_check_pred("pair_trace_cover", bad_lhs, bad_rhs, all_pairs));
  }

  // Replication and block counts of the quotient.
  if (rep.lambda1) {
    u128 num = mul128(rep.v1 - 1, *rep.lambda1);
    bool integral = num % (rep.k1 - 1) == 0;
    rep.certificates.push_back(make_check_pred("r1_integral", num, rep.k1 - 1, integral));
    if (integral) {
      u64 r1 = static_cast<u64>(num / (rep.k1 - 1));
      rep.r1 = r1;
      rep.certificates.push_back(make_check("r1_counted", r1, quot.r1_counted));
    } else {
      rep.r1 = quot.r1_counted;
    }
  } else {
    rep.r1 = quot.r1_counted;
  }
  rep.certificates.push_back(make_check("b_eq_b1_eta", rep.params.b, mul128(rep.b1, rep.eta)));
  rep.certificates.push_back(
      make_check("b1_identity", mul128(mul128(rep.b1, mul128(k, rep.k0 - 1)), rep.eta),
                 mul128(mul128(v, rep.v0 - 1), lambda)));

  const bool lambda_prime = is_prime(lambda);
  if (rep.v0 % rep.k0 == 0 && lambda_prime) {
    u64 eta0 = std::gcd(rep.eta, rep.v0 / rep.k0);
    u64 eta1 = rep.eta / eta0;
    rep.eta0 = eta0;
    rep.eta1 = eta1;
    u128 num = mul128(rep.v0, rep.v0 - 1);
    u128 den = mul128(mul128(rep.k0, rep.k0 - 1), eta0);
    bool integral = num % den == 0;
    rep.certificates.push_back(make_check_pred("r1_prime_integral", num, den, integral));
    if (integral) {
      rep.r1_prime = static_cast<u64>(num / den);
      rep.certificates.push_back(
          make_check("replication_split", mul128(rep.r1, eta1), mul128(*rep.r1_prime, lambda)));
    }
  } else {
    rep.split_note = "split not applicable";
  }

  if (rep.lambda1 && lambda_prime && rep.params.r % lambda == 0) {
    u64 gcd_r1 = std::gcd(rep.r1, *rep.lambda1);
    rep.certificates.push_back(make_check("reduced_ratio", mul128(rep.r1, rep.k0 - 1),
                                          mul128(gcd_r1, rep.v0 - 1)));
  }

  if (g) {
    GroupFacts gf;
    gf.group_order = g->order();
    InducedAction ia = induced_action(*g, sigma);  // throws when sigma is not invariant
    gf.induced_order = ia.image.order();
    gf.kernel_order = ia.kernel_order;
    gf.class_stabilizer = class_stabilizer_order(*g, sigma, 0);
    gf.flag_transitive = is_flag_transitive(*g, d);
    gf.order_bound_holds = gf.induced_order < mul128(gf.class_stabilizer, gf.class_stabilizer);
    if (ia.image.is_transitive()) {
      gf.induced_subdegrees = ia.image.subdegrees(0);
      if (rep.lambda1) {
        u64 ratio = rep.r1 / std::gcd(rep.r1, *rep.lambda1);
        gf.ratio_bound_holds = mul128(ratio, ratio) > rep.v1;
        u64 gg = rep.v1 - 1;
        for (u64 s : gf.induced_subdegrees) gg = std::gcd(gg, s);
        gf.subdegree_div_holds = gg % ratio == 0;
      }
    }
    rep.group = std::move(gf);
  }
  return rep;
}

RankReport rank_equality_check(const PermGroup& g, const IncidenceStructure& d) {
  if (!is_flag_transitive(g, d))
    throw Error(errc::not_flag_transitive, "rank comparison needs a flag-transitive group");

  RankReport out;
  out.rank_points = 1 + g.subdegrees(0).size();

  std::map<std::vector<u32>, u32> index;
  for (const auto& blk : d.blocks) index.emplace(blk, static_cast<u32>(index.size()));
  std::vector<const std::vector<u32>*> contents(index.size());
  for (const auto& [blk, idx] : index) contents[idx] = &blk;
  const u32 b0 = static_cast<u32>(contents.size());
  const u32 v = d.v;

  std::vector<Perm> mixed;
  mixed.reserve(g.generators().size());
  for (const auto& p : g.generators()) {
    Perm m;
    m.img.resize(v + b0);
    for (u32 x = 0; x < v; ++x) m.img[x] = p(x);
    for (u32 c = 0; c < b0; ++c) {
      std::vector<u32> img;
      img.reserve(contents[c]->size());
      for (u32 pt : *contents[c]) img.push_back(p(pt));
      std::sort(img.begin(), img.end());
      m.img[v + c] = v + index.at(img);
    }
    mixed.push_back(std::move(m));
  }

  const u32 c0 = index.at(d.blocks.front());
  const u32 x0 = contents[c0]->front();
  PermGroup gm(v + b0, mixed, {v + c0, x0});
  PermGroup block_stab = gm.point_stabilizer(v + c0);
  PermGroup both_stab = block_stab.point_stabilizer(x0);

  std::vector<bool> seen(v + b0, false);
  u64 orbits = 0;
  for (u32 start : *contents[c0]) {
    if (seen[start]) continue;
    ++orbits;
    std::vector<u32> orb{start};
    seen[start] = true;
    for (std::size_t qi = 0; qi < orb.size(); ++qi)
      for (const auto& s : both_stab.generators()) {
        u32 q = s(orb[qi]);
        if (!seen[q]) {
          seen[q] = true;
          orb.push_back(q);
        }
      }
  }
  out.rank_block = orbits;
  out.equal = out.rank_points == out.rank_block;
  return out;
}

}  // namespace designlab
