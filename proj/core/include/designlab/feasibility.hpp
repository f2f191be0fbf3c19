#ifndef DESIGNLAB_FEASIBILITY_HPP
#define DESIGNLAB_FEASIBILITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "designlab/arith.hpp"

namespace designlab {

enum class Family { SymmetricOneDesign, Ia, Ib, Ic, IIa, IIb, NoFamily };

const char* family_name(Family f);

struct BaseTuple {
  u64 v0 = 0;
  u64 ratio = 0;  // (v0-1)/(k0-1) = z*k0 + 1
};

BaseTuple base_tuple(u64 k0, u64 z);

struct DerivedTuple {
  u64 v0 = 0, v1 = 0, k1 = 0;
  u64 k = 0;
  u128 v = 0;  // closed-form rows overflow 64 bits near the lambda ceiling
};

DerivedTuple derived_tuple(u64 k0, u64 z, u64 A);

struct GcdIdentities {
  u64 gcd_k1_v1 = 0;       // = gcd(z, A+1)
  u64 gcd_k1_ratio = 0;    // = gcd(A*z-1, A+k0)
};

// Lemma-level gcd facts; each closed form is verified against the direct
// gcd, and gcd(k1, v1, ratio) = 1 is asserted. A mismatch throws
// IdentityViolation (it would mean an implementation bug).
GcdIdentities gcd_identities(u64 k0, u64 z, u64 A);

// k1 == gcd(z, A+1) * gcd(A*z-1, A+k0) * lambda, exactly.
bool check_fundamental(u64 k0, u64 z, u64 A, u64 lambda);

struct TypeLabel {
  Family family = Family::NoFamily;
  std::string condition;  // the defining condition that fired, or first failed filter
};

TypeLabel classify_family(u64 k0, u64 z, u64 A, u64 lambda);

struct ParamCandidate {
  Family family = Family::NoFamily;
  u64 lambda = 0;
  u64 k0 = 0, z = 0, A = 0;
  u64 v0 = 0, v1 = 0, k1 = 0;
  u64 k = 0, r = 0;
  u128 v = 0;
  std::optional<u128> b;          // set when k | v*r
  bool symmetric_design = false;  // symmetric family with lambda = k0
  std::string condition;
  std::vector<Check> certificates;
};

// Table row for the k1 = v1 - 1 family. Requires lambda >= k0.
ParamCandidate symmetric_family(u64 k0, u64 lambda);

// Fermat parameter record for lambda = 2^(2^j) + 1. Primality decided by
// the Pepin test for j <= 5 and the classical factor 274177 for j = 6
// (re-verified by modular exponentiation); j >= 7 exceeds machine range.
ParamCandidate fermat_candidate(u64 j);

struct EnumOptions {
  bool keep_rejected = false;
  unsigned threads = 1;
};

// Complete candidate list for a prime lambda <= 10^4: symmetric-family rows
// for 2 <= k0 <= lambda, every in-bound grid tuple that classifies into a
// family, and the out-of-bound closed-form Ib/Ic rows (their volume
// certificate records the failure). Sorted by (family, v, k0, z, A).
std::vector<ParamCandidate> enumerate_candidates(u64 lambda, const EnumOptions& opts = {});

enum class C3Branch { RatioAtLeastLambda, RatioBelowLambda };

struct C3Report {
  C3Branch branch = C3Branch::RatioBelowLambda;
  std::vector<Check> checks;  // on the RatioAtLeastLambda branch
};

C3Report check_C3_dichotomy(u64 k0, u64 z, u64 A, u64 lambda);

}  // namespace designlab

#endif
