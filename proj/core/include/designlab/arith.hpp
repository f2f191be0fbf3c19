#ifndef DESIGNLAB_ARITH_HPP
#define DESIGNLAB_ARITH_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "designlab/errors.hpp"

namespace designlab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(errc::overflow, "u64 multiply overflow");
  return r;
}

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(errc::overflow, "u64 add overflow");
  return r;
}

inline u128 mul128(u128 a, u128 b) {
  if (a != 0 && b > ~static_cast<u128>(0) / a) throw Error(errc::overflow, "u128 multiply overflow");
  return a * b;
}

// Decimal rendering; u128 has no iostream support.
std::string dec(u128 x);

bool is_prime(u64 n);

// One named arithmetic fact checked during a run. lhs and rhs are whatever
// two quantities the predicate compares; for pure predicates rhs is 0/1.
struct Check {
  std::string name;
  u128 lhs = 0;
  u128 rhs = 0;
  bool pass = false;
};

inline Check make_check(std::string name, u128 lhs, u128 rhs) {
  Check c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.pass = (lhs == rhs);
  return c;
}

inline Check make_check_pred(std::string name, u128 lhs, u128 rhs, bool pass) {
  Check c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.pass = pass;
  return c;
}

inline bool all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

}  // namespace designlab

#endif
