#include "designlab/exceptional.hpp"

#include <algorithm>
#include <set>

#include "designlab/errors.hpp"
#include "designlab/io.hpp"

namespace designlab {

namespace {

bool is_difference_set(const std::vector<u32>& d) {
  // Every nonzero XOR-difference must occur exactly twice over ordered pairs.
  u32 count[16] = {0};
  for (u32 a : d)
    for (u32 b : d)
      if (a != b) ++count[a ^ b];
  for (u32 x = 1; x < 16; ++x)
    if (count[x] != 2) return false;
  return true;
}

}  // namespace

DifferenceSet16 find_difference_set_16_6_2() {
  for (u32 a = 1; a < 16; ++a)
    for (u32 b = a + 1; b < 16; ++b)
      for (u32 c = b + 1; c < 16; ++c)
        for (u32 d = c + 1; d < 16; ++d)
          for (u32 e = d + 1; e < 16; ++e) {
            std::vector<u32> cand = {0, a, b, c, d, e};
            if (is_difference_set(cand)) return {cand};
          }
  throw Error(errc::identity_violation, "exhaustive (16,6,2) difference-set search found nothing");
}

IncidenceStructure develop_difference_set(const DifferenceSet16& ds) {
  if (ds.elements.size() != 6 || !is_difference_set(ds.elements))
    throw Error(errc::parse_error, "not a (16,6,2) difference set");
  std::vector<std::vector<u32>> blocks;
  blocks.reserve(16);
  for (u32 g = 0; g < 16; ++g) {
    std::vector<u32> blk;
    for (u32 x : ds.elements) blk.push_back(x ^ g);
    blocks.push_back(std::move(blk));
  }
  return make_incidence(16, std::move(blocks));
}

std::vector<Perm> translation_generators() {
  std::vector<Perm> out;
  out.reserve(16);
  for (u32 g = 0; g < 16; ++g) {
    Perm p;
    p.img.resize(16);
    for (u32 x = 0; x < 16; ++x) p.img[x] = x ^ g;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<u32>> order4_subgroups() {
  std::set<std::vector<u32>> seen;
  for (u32 a = 1; a < 16; ++a)
    for (u32 b = a + 1; b < 16; ++b) {
      std::vector<u32> sub = {0, a, b, a ^ b};
      std::sort(sub.begin(), sub.end());
      seen.insert(std::move(sub));
    }
  return {seen.begin(), seen.end()};
}

Partition coset_partition(const std::vector<u32>& subgroup) {
  if (subgroup.size() != 4)
    throw Error(errc::parse_error, "expected an order-4 subgroup");
  for (u32 s : subgroup)
    if (s >= 16) throw Error(errc::out_of_range_point, "element " + std::to_string(s));
  std::vector<u32> class_of(16, 16);
  u32 next = 0;
  for (u32 x = 0; x < 16; ++x) {
    if (class_of[x] != 16) continue;
    for (u32 s : subgroup) {
      if (class_of[x ^ s] != 16)
        throw Error(errc::parse_error, "not a subgroup: cosets overlap");
      class_of[x ^ s] = next;
    }
    ++next;
  }
  return make_partition(16, std::move(class_of));
}

std::vector<SubgroupScan> constant_intersection_subgroups(const IncidenceStructure& d) {
  std::vector<SubgroupScan> out;
  for (const auto& sub : order4_subgroups()) {
    Partition sigma = coset_partition(sub);
    try {
      u64 k0 = intersection_constant(d, sigma);
      out.push_back({sub, k0});
    } catch (const Error&) {
      // non-constant intersection for this subgroup
    }
  }
  return out;
}

namespace {

// Carry-less multiplication in GF(2^m), red = full reduction polynomial.
u32 gf_mul(u32 a, u32 b, u32 m, u32 red) {
  u32 r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << m)) a ^= red;
  }
  return r;
}

}  // namespace

IncidenceStructure affine_plane(u32 q) {
  u32 m = 0, red = 0;
  switch (q) {
    case 2: m = 1; red = 0b11; break;
    case 4: m = 2; red = 0b111; break;
    case 8: m = 3; red = 0b1011; break;
    case 16: m = 4; red = 0b10011; break;
    default:
      throw Error(errc::parse_error, "field order must be one of 2, 4, 8, 16");
  }
  std::vector<std::vector<u32>> lines;
  lines.reserve(static_cast<std::size_t>(q) * (q + 1));
  // Point (x, y) is x*q + y. Lines y = a*x + c, then verticals x = c.
  for (u32 a = 0; a < q; ++a)
    for (u32 c = 0; c < q; ++c) {
      std::vector<u32> line;
      for (u32 x = 0; x < q; ++x) line.push_back(x * q + (gf_mul(a, x, m, red) ^ c));
      lines.push_back(std::move(line));
    }
  for (u32 c = 0; c < q; ++c) {
    std::vector<u32> line;
    for (u32 y = 0; y < q; ++y) line.push_back(c * q + y);
    lines.push_back(std::move(line));
  }
  return make_incidence(q * q, std::move(lines));
}

IncidenceStructure complete_design(u32 n, u32 k) {
  if (n == 0 || k == 0 || k > n)
    throw Error(errc::parse_error, "need 0 < k <= n");
  u128 count = 1;
  for (u32 i = 0; i < k; ++i) count = mul128(count, n - i) / (i + 1);
  if (count > 1000000)
    throw Error(errc::scale_limit, "binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                       ") blocks exceed the build cap");
  std::vector<std::vector<u32>> blocks;
  blocks.reserve(static_cast<std::size_t>(count));
  std::vector<u32> cur(k);
  for (u32 i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    blocks.push_back(cur);
    // next k-combination of {0..n-1} in lex order
    i64 i = static_cast<i64>(k) - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (u32 j = static_cast<u32>(i) + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return make_incidence(n, std::move(blocks));
}

Certificate load_certified(const std::string& design_path, const std::string& gens_path,
                           const std::string& partition_path, const DesignParams& expected) {
  Certificate cert;
  IncidenceStructure d = load_design_file(design_path);
  cert.params = verify_2design(d);
  cert.checks.push_back(make_check("expected_v", cert.params.v, expected.v));
  cert.checks.push_back(make_check("expected_b", cert.params.b, expected.b));
  cert.checks.push_back(make_check("expected_r", cert.params.r, expected.r));
  cert.checks.push_back(make_check("expected_k", cert.params.k, expected.k));
  cert.checks.push_back(make_check("expected_lambda", cert.params.lambda, expected.lambda));

  std::vector<Perm> gens = load_generators_file(gens_path, d.v);
  PermGroup g(d.v, gens);
  for (const auto& p : g.generators())
    if (!preserves_blocks(p, d))
      throw Error(errc::not_an_automorphism_group, "a generator does not preserve the blocks");
  cert.flag_transitive = is_flag_transitive(g, d);
  cert.flag_orbit = cert.flag_transitive ? cert.params.b * cert.params.k : 0;
  cert.checks.push_back(make_check_pred("flag_transitive", cert.flag_orbit,
                                        cert.params.b * cert.params.k, cert.flag_transitive));

  cert.partition = load_partition_file(partition_path, d.v);
  induced_action(g, cert.partition);  // throws when not invariant
  cert.imprimitive = g.is_transitive() && !g.is_primitive();
  cert.checks.push_back(make_check_pred("imprimitive", cert.imprimitive ? 1 : 0, 1,
                                        cert.imprimitive));
  cert.checks.push_back(make_check_pred("partition_nontrivial",
                                        cert.partition.v0, cert.partition.v,
                                        cert.partition.is_nontrivial()));

  cert.report = full_report(d, cert.partition, &g);

  // Match against the symmetric-family table row when the shape fits.
  const u64 k0 = cert.report.k0;
  if (cert.report.v0 == k0 * k0 && cert.report.v1 == k0 + 2 && cert.report.k1 == k0 + 1 &&
      cert.params.lambda >= k0) {
    ParamCandidate row = symmetric_family(k0, cert.params.lambda);
    cert.table_row_k0 = k0;
    cert.checks.push_back(make_check("table_row_v", cert.params.v, row.v));
    cert.checks.push_back(make_check("table_row_k", cert.params.k, row.k));
    cert.checks.push_back(make_check("table_row_r", cert.params.r, row.r));
    cert.checks.push_back(make_check("table_row_b", cert.params.b, row.b ? *row.b : 0));
  }
  cert.checks.push_back(make_check_pred("decomposition_all_pass", cert.report.all_pass() ? 1 : 0,
                                        1, cert.report.all_pass()));
  return cert;
}

FermatFrame fermat_frame(u64 j) {
  FermatFrame frame;
  frame.candidate = fermat_candidate(j);
  const u64 q = frame.candidate.k0;  // 2^(2^j)
  if (j <= 2) {
    frame.inner = affine_plane(static_cast<u32>(q));
    frame.inner_params = verify_2design(*frame.inner);
    frame.quotient = complete_design(static_cast<u32>(q) + 2, static_cast<u32>(q) + 1);
    frame.quotient_params = verify_2design(*frame.quotient);
    frame.components_built = true;
    frame.status = "OPEN";
  } else {
    DesignParams inner;
    inner.v = q * q;
    inner.b = q * (q + 1);
    inner.r = q + 1;
    inner.k = q;
    inner.lambda = 1;
    frame.inner_params = inner;
    DesignParams quot;
    quot.v = q + 2;
    quot.b = q + 2;
    quot.r = q + 1;
    quot.k = q + 1;
    quot.lambda = q;
    frame.quotient_params = quot;
    frame.components_built = false;
    frame.status = "OPEN; components omitted at this scale";
  }
  return frame;
}

}  // namespace designlab
