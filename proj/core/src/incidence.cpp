#include "designlab/incidence.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "designlab/errors.hpp"

namespace designlab {

IncidenceStructure make_incidence(u32 v, std::vector<std::vector<u32>> blocks) {
  if (v == 0) throw Error(errc::parse_error, "point count must be positive");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto& blk = blocks[i];
    if (blk.empty()) throw Error(errc::empty_block, "block " + std::to_string(i));
    for (u32 p : blk) {
      if (p >= v)
        throw Error(errc::out_of_range_point,
                    "block " + std::to_string(i) + " has point " + std::to_string(p) +
                        " outside [0," + std::to_string(v) + ")");
    }
    std::sort(blk.begin(), blk.end());
    if (std::adjacent_find(blk.begin(), blk.end()) != blk.end())
      throw Error(errc::duplicate_point_in_block, "block " + std::to_string(i));
  }
  IncidenceStructure d;
  d.v = v;
  d.blocks = std::move(blocks);
  return d;
}

DesignParams verify_2design(const IncidenceStructure& d) {
  if (d.v < 2) throw Error(errc::non_uniform_pair_count, "fewer than two points");
  if (d.blocks.empty()) throw Error(errc::non_uniform_block_size, "no blocks");

  const u64 k = d.blocks.front().size();
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    if (d.blocks[i].size() != k)
      throw Error(errc::non_uniform_block_size,
                  "block " + std::to_string(i) + " has size " +
                      std::to_string(d.blocks[i].size()) + ", block 0 has size " +
                      std::to_string(k));
  }

  std::vector<u64> rep(d.v, 0);
  for (const auto& blk : d.blocks)
    for (u32 p : blk) ++rep[p];
  for (u32 x = 0; x < d.v; ++x) {
    if (rep[x] != rep[0])
      throw Error(errc::non_uniform_replication,
                  "point " + std::to_string(x) + " lies on " + std::to_string(rep[x]) +
                      " blocks, point 0 on " + std::to_string(rep[0]));
  }

  // Pair counts, one point at a time; keeps memory at O(v) for large inputs.
  std::vector<std::vector<u32>> through(d.v);
  for (u32 bi = 0; bi < static_cast<u32>(d.blocks.size()); ++bi)
    for (u32 p : d.blocks[bi]) through[p].push_back(bi);

  u64 lambda = 0;
  std::vector<u64> with_x(d.v, 0);
  for (u32 x = 0; x < d.v; ++x) {
    std::fill(with_x.begin(), with_x.end(), 0);
    for (u32 bi : through[x])
      for (u32 p : d.blocks[bi]) ++with_x[p];
    if (x == 0) lambda = with_x[1];
    for (u32 y = 0; y < d.v; ++y) {
      if (y == x) continue;
      if (with_x[y] != lambda)
        throw Error(errc::non_uniform_pair_count,
                    "pair (" + std::to_string(x) + "," + std::to_string(y) + ") lies in " +
                        std::to_string(with_x[y]) + " blocks, pair (0,1) in " +
                        std::to_string(lambda));
    }
  }
  if (lambda == 0) throw Error(errc::no_pair_coverage, "no block contains two points");

  DesignParams p;
  p.v = d.v;
  p.b = d.blocks.size();
  p.r = rep[0];
  p.k = k;
  p.lambda = lambda;
  if (!all_pass(check_identities(p)))
    throw Error(errc::non_uniform_pair_count, "derived parameters violate counting identities");
  return p;
}

std::vector<Check> check_identities(const DesignParams& p) {
  std::vector<Check> cs;
  cs.push_back(make_check("vr_eq_bk", mul128(p.v, p.r), mul128(p.b, p.k)));
  cs.push_back(make_check("pair_count", mul128(p.lambda, p.v - 1), mul128(p.r, p.k - 1)));
  cs.push_back(make_check_pred("k_le_r", p.k, p.r, p.k <= p.r));
  cs.push_back(
      make_check_pred("fisher", mul128(p.r, p.r), mul128(p.lambda, p.v), mul128(p.r, p.r) > mul128(p.lambda, p.v)));
  return cs;
}

bool is_symmetric(const DesignParams& p) { return p.v == p.b; }

bool is_nontrivial(const DesignParams& p) { return 2 < p.k && p.k < p.v; }

IncidenceStructure parse_design(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&](std::string& out) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (!blank) {
        out = line;
        return true;
      }
    }
    return false;
  };

  auto fail = [&](const std::string& msg) -> Error {
    return Error(errc::parse_error, "line " + std::to_string(lineno) + ": " + msg);
  };

  std::string header;
  if (!next_line(header)) throw Error(errc::parse_error, "empty design file");
  std::istringstream hs(header);
  long long v = -1, b = -1;
  if (!(hs >> v >> b) || v <= 0 || b < 0) throw fail("expected header 'v b'");
  std::string junk;
  if (hs >> junk) throw fail("trailing junk after 'v b'");

  std::vector<std::vector<u32>> blocks;
  blocks.reserve(static_cast<std::size_t>(b));
  for (long long i = 0; i < b; ++i) {
    std::string bl;
    if (!next_line(bl)) throw fail("expected " + std::to_string(b) + " blocks, got " + std::to_string(i));
    std::istringstream bs(bl);
    std::vector<u32> blk;
    long long p;
    while (bs >> p) {
      if (p < 0 || p >= v) throw fail("point " + std::to_string(p) + " outside [0," + std::to_string(v) + ")");
      blk.push_back(static_cast<u32>(p));
    }
    if (!bs.eof()) throw fail("non-numeric token in block");
    blocks.push_back(std::move(blk));
  }
  std::string extra;
  if (next_line(extra)) throw fail("trailing junk after last block");
  return make_incidence(static_cast<u32>(v), std::move(blocks));
}

void write_design(std::ostream& out, const IncidenceStructure& d) {
  out << d.v << ' ' << d.blocks.size() << '\n';
  for (const auto& blk : d.blocks) {
    for (std::size_t i = 0; i < blk.size(); ++i) {
      if (i) out << ' ';
      out << blk[i];
    }
    out << '\n';
  }
}

}  // namespace designlab
