#include "designlab/feasibility.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "designlab/errors.hpp"

namespace designlab {

namespace {
constexpr u64 kLambdaLimit = 10000;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::SymmetricOneDesign: return "SymmetricOneDesign";
    case Family::Ia: return "Ia";
    case Family::Ib: return "Ib";
    case Family::Ic: return "Ic";
    case Family::IIa: return "IIa";
    case Family::IIb: return "IIb";
    case Family::NoFamily: return "NoFamily";
  }
  return "?";
}

BaseTuple base_tuple(u64 k0, u64 z) {
  if (k0 < 2 || z < 1) throw Error(errc::parse_error, "need k0 >= 2 and z >= 1");
  BaseTuple t;
  t.v0 = checked_mul(checked_add(checked_mul(z, k0 - 1), 1), k0);
  t.ratio = checked_add(checked_mul(z, k0), 1);
  if ((t.v0 - 1) % (k0 - 1) != 0 || (t.v0 - 1) / (k0 - 1) != t.ratio)
    throw Error(errc::identity_violation, "(v0-1)/(k0-1) != z*k0+1");
  return t;
}

DerivedTuple derived_tuple(u64 k0, u64 z, u64 A) {
  if (A < 1) throw Error(errc::parse_error, "need A >= 1");
  BaseTuple bt = base_tuple(k0, z);
  DerivedTuple t;
  t.v0 = bt.v0;
  t.v1 = checked_add(checked_mul(A, bt.ratio), 1);
  t.k1 = checked_add(checked_mul(A, t.v0 / k0), 1);
  t.k = checked_mul(k0, t.k1);
  t.v = mul128(t.v0, t.v1);
  if (t.v0 % k0 != 0 || t.k1 != A * (t.v0 / k0) + 1)
    throw Error(errc::identity_violation, "k1 != A*(v0/k0)+1");
  return t;
}

GcdIdentities gcd_identities(u64 k0, u64 z, u64 A) {
  DerivedTuple t = derived_tuple(k0, z, A);
  GcdIdentities g;
  g.gcd_k1_v1 = std::gcd(z, A + 1);
  g.gcd_k1_ratio = std::gcd(A * z - 1, A + k0);
  u64 ratio = z * k0 + 1;
  if (g.gcd_k1_v1 != std::gcd(t.k1, t.v1))
    throw Error(errc::identity_violation, "gcd(k1,v1) != gcd(z,A+1)");
  if (g.gcd_k1_ratio != std::gcd(t.k1, ratio))
    throw Error(errc::identity_violation, "gcd(k1,zk0+1) != gcd(Az-1,A+k0)");
  if (std::gcd(std::gcd(t.k1, t.v1), ratio) != 1)
    throw Error(errc::identity_violation, "gcd(k1,v1,zk0+1) != 1");
  return g;
}

bool check_fundamental(u64 k0, u64 z, u64 A, u64 lambda) {
  DerivedTuple t = derived_tuple(k0, z, A);
  GcdIdentities g = gcd_identities(k0, z, A);
  return mul128(mul128(g.gcd_k1_v1, g.gcd_k1_ratio), lambda) == t.k1;
}

namespace {

bool divides_vvm1(u64 lambda, u128 x) {
  // lambda | x(x-1) for prime lambda.
  u64 m = static_cast<u64>(x % lambda);
  return m == 0 || m == 1;
}

}  // namespace

TypeLabel classify_family(u64 k0, u64 z, u64 A, u64 lambda) {
  DerivedTuple t = derived_tuple(k0, z, A);

  // The k1 = v1 - 1 table rows sit at z = A = 1 and take precedence over the
  // closed forms (at lambda = 3 the type IIa form lands on the same point).
  if (z == 1 && A == 1 && lambda >= k0)
    return {Family::SymmetricOneDesign, "closed form: z = A = 1, k1 = v1 - 1"};
  if (lambda >= 3 && k0 == lambda && z == lambda + 2 && A == 1)
    return {Family::Ib, "closed form: (k0,z,A) = (lambda, lambda+2, 1)"};
  if (lambda % 4 == 1 && k0 == 2 && A == lambda - 2 && z == (lambda + 2) * (lambda - 1) / 4)
    return {Family::Ic, "closed form: k0 = 2, z = (lambda+2)(lambda-1)/4, A = lambda-2"};
  if (lambda % 2 == 1 && k0 == 2 && A == lambda - 2 && z == (lambda - 1) / 2)
    return {Family::IIa, "closed form: k0 = 2, z = (lambda-1)/2, A = lambda-2"};
  if (k0 == 2 && t.v0 > 4 && lambda > t.v0 && A == t.v0 - 3)
    return {Family::IIb, "closed form: k0 = 2, A = v0-3, v0 even, 4 < v0 < lambda"};

  if (lambda < (k0 - 1) * A + 1) return {Family::NoFamily, "lambda < (k0-1)A+1"};
  if (lambda <= k0) return {Family::NoFamily, "lambda <= k0"};
  if (!check_fundamental(k0, z, A, lambda)) return {Family::NoFamily, "fundamental equation fails"};
  if (divides_vvm1(lambda, t.v0)) return {Family::NoFamily, "lambda divides v0(v0-1)"};
  if (divides_vvm1(lambda, t.v1)) return {Family::NoFamily, "lambda divides v1(v1-1)"};
  if (divides_vvm1(lambda, t.v)) return {Family::NoFamily, "lambda divides v(v-1)"};
  return {Family::Ia, "fundamental equation with type I divisibility"};
}

C3Report check_C3_dichotomy(u64 k0, u64 z, u64 A, u64 lambda) {
  DerivedTuple t = derived_tuple(k0, z, A);
  u64 ratio = z * k0 + 1;
  C3Report rep;
  if (ratio >= lambda) {
    rep.branch = C3Branch::RatioAtLeastLambda;
    rep.checks.push_back(
        make_check_pred("c3_A_sq_le_v1_minus_1", mul128(A, A), t.v1 - 1, mul128(A, A) <= t.v1 - 1));
    u128 sq = mul128(2 * A - 1, 2 * A - 1);
    rep.checks.push_back(make_check_pred("c3_v1_ne_odd_square", t.v1, sq, t.v1 != sq));
  } else {
    rep.branch = C3Branch::RatioBelowLambda;
  }
  return rep;
}

namespace {

void push_common_certs(ParamCandidate& c, u64 search_bound) {
  const u64 ratio = c.z * c.k0 + 1;
  c.certificates.push_back(make_check("rel1_base", c.v0 - 1, mul128(c.k0 - 1, ratio)));
  c.certificates.push_back(make_check("v1_progression", c.v1, mul128(c.A, ratio) + 1));
  c.certificates.push_back(make_check("k1_progression", c.k1, mul128(c.A, c.v0 / c.k0) + 1));
  c.certificates.push_back(make_check("gcd_A", c.A, std::gcd(c.k1 - 1, c.v1 - 1)));
  c.certificates.push_back(make_check_pred("lambda_lower_bound", c.lambda,
                                           mul128(c.k0 - 1, c.A) + 1,
                                           c.lambda >= (c.k0 - 1) * c.A + 1));
  c.certificates.push_back(make_check_pred("search_bound", c.v, search_bound, c.v <= search_bound));
  c.certificates.push_back(
      make_check("replication", mul128(c.r, c.k - 1), mul128(c.lambda, c.v - 1)));
  u128 vr = mul128(c.v, c.r);
  bool integral = vr % c.k == 0;
  c.certificates.push_back(make_check_pred("block_count_integral", vr, c.k, integral));
  if (integral) c.b = vr / c.k;
  c.certificates.push_back(make_check_pred("fisher", mul128(c.r, c.r), mul128(c.lambda, c.v),
                                           mul128(c.r, c.r) > mul128(c.lambda, c.v)));
  c.certificates.push_back(make_check_pred("k_le_r", c.k, c.r, c.k <= c.r));
  // The fundamental equation presumes lambda | k1, which holds exactly on the
  // type I side of the dichotomy. Rejected rows keep the check as a record of
  // why they fell out.
  if (c.family == Family::Ia || c.family == Family::Ib || c.family == Family::Ic ||
      c.family == Family::NoFamily) {
    GcdIdentities g = gcd_identities(c.k0, c.z, c.A);
    c.certificates.push_back(make_check_pred("fundamental", c.k1,
                                             mul128(mul128(g.gcd_k1_v1, g.gcd_k1_ratio), c.lambda),
                                             check_fundamental(c.k0, c.z, c.A, c.lambda)));
  }
  C3Report c3 = check_C3_dichotomy(c.k0, c.z, c.A, c.lambda);
  for (auto& ch : c3.checks) c.certificates.push_back(std::move(ch));
}

ParamCandidate grid_candidate(u64 k0, u64 z, u64 A, u64 lambda, u64 search_bound) {
  DerivedTuple t = derived_tuple(k0, z, A);
  ParamCandidate c;
  TypeLabel label = classify_family(k0, z, A, lambda);
  c.family = label.family;
  c.condition = label.condition;
  c.lambda = lambda;
  c.k0 = k0;
  c.z = z;
  c.A = A;
  c.v0 = t.v0;
  c.v1 = t.v1;
  c.k1 = t.k1;
  c.k = t.k;
  c.v = t.v;
  c.r = checked_mul(lambda, z * k0 + 1);
  push_common_certs(c, search_bound);
  return c;
}

}  // namespace

ParamCandidate symmetric_family(u64 k0, u64 lambda) {
  if (k0 < 2) throw Error(errc::parse_error, "need k0 >= 2");
  if (lambda < k0)
    throw Error(errc::lambda_too_small, "symmetric-family rows need lambda >= k0, got lambda = " +
                                            std::to_string(lambda) + ", k0 = " + std::to_string(k0));
  ParamCandidate c;
  c.family = Family::SymmetricOneDesign;
  c.condition = "k1 = v1 - 1 table row";
  c.lambda = lambda;
  c.k0 = k0;
  c.z = 1;
  c.A = 1;
  c.v0 = checked_mul(k0, k0);
  c.v1 = k0 + 2;
  c.k1 = k0 + 1;
  c.k = checked_mul(k0, k0 + 1);
  c.v = mul128(c.v0, c.v1);
  c.r = checked_mul(k0 + 1, lambda);
  c.symmetric_design = (lambda == k0);
  u64 search_bound = checked_mul(checked_mul(2, checked_mul(lambda, lambda)), lambda - 1);
  push_common_certs(c, search_bound);
  c.certificates.push_back(make_check("vr_eq_bk", mul128(c.v, c.r),
                                      mul128(c.b ? *c.b : 0, c.k)));
  return c;
}

ParamCandidate fermat_candidate(u64 j) {
  if (j < 1) throw Error(errc::parse_error, "need j >= 1");
  if (j >= 7)
    throw Error(errc::scale_limit, "2^(2^" + std::to_string(j) + ")+1 exceeds machine range");
  if (j == 6) {
    // 2^64+1 = 274177 * 67280421310721; re-verify the witness factor.
    u128 f = (static_cast<u128>(1) << 64) + 1;
    if (f % 274177 != 0)
      throw Error(errc::identity_violation, "stored factor of 2^64+1 fails to divide");
    throw Error(errc::not_fermat_prime, "2^64+1 is divisible by 274177");
  }
  u64 two_pow = 1ull << (1ull << j);  // 2^(2^j), j <= 5
  u64 lambda = two_pow + 1;

  // Pepin: lambda is prime iff 3^((lambda-1)/2) = -1 (mod lambda).
  u64 e = two_pow / 2;
  u64 x = 3 % lambda;
  u64 acc = 1;
  u64 base = x;
  u64 ee = e;
  while (ee) {
    if (ee & 1) acc = static_cast<u64>(static_cast<u128>(acc) * base % lambda);
    base = static_cast<u64>(static_cast<u128>(base) * base % lambda);
    ee >>= 1;
  }
  if (acc != lambda - 1)
    throw Error(errc::not_fermat_prime,
                "2^(2^" + std::to_string(j) + ")+1 = " + std::to_string(lambda) +
                    " fails the Pepin test");

  ParamCandidate c = symmetric_family(two_pow, lambda);
  c.condition = "Fermat prime lambda = 2^(2^j)+1 with k0 = lambda-1";
  c.certificates.push_back(make_check("lambda_eq_k0_plus_1", c.lambda, c.k0 + 1));
  c.certificates.push_back(make_check("r_eq_lambda_sq", c.r, mul128(c.lambda, c.lambda)));
  return c;
}

namespace {

bool candidate_less(const ParamCandidate& a, const ParamCandidate& b) {
  if (a.family != b.family) return static_cast<int>(a.family) < static_cast<int>(b.family);
  if (a.v != b.v) return a.v < b.v;
  if (a.k0 != b.k0) return a.k0 < b.k0;
  if (a.z != b.z) return a.z < b.z;
  return a.A < b.A;
}

// Grid stratum for one k0: all (z, A) with v within bound.
void scan_k0(u64 k0, u64 lambda, u64 bound, bool keep_rejected,
             std::vector<ParamCandidate>& out) {
  for (u64 z = 1;; ++z) {
    BaseTuple bt = base_tuple(k0, z);
    if (mul128(bt.v0, bt.ratio + 1) > bound) break;  // v1 >= ratio+1 already at A=1
    u64 a_cap = keep_rejected ? UINT64_MAX : (lambda - 1) / (k0 - 1);
    for (u64 A = 1; A <= a_cap; ++A) {
      u128 v1 = mul128(A, bt.ratio) + 1;
      if (mul128(bt.v0, v1) > bound) break;
      if (z == 1 && A == 1 && k0 <= lambda) continue;  // symmetric-family row
      ParamCandidate c = grid_candidate(k0, z, A, lambda, bound);
      if (c.family != Family::NoFamily || keep_rejected) out.push_back(std::move(c));
    }
  }
}

}  // namespace

std::vector<ParamCandidate> enumerate_candidates(u64 lambda, const EnumOptions& opts) {
  if (!is_prime(lambda)) throw Error(errc::not_prime, std::to_string(lambda) + " is not prime");
  if (lambda > kLambdaLimit)
    throw Error(errc::lambda_too_large,
                "lambda " + std::to_string(lambda) + " exceeds " + std::to_string(kLambdaLimit));

  const u64 bound = checked_mul(checked_mul(2, checked_mul(lambda, lambda)), lambda - 1);
  std::vector<ParamCandidate> out;

  for (u64 k0 = 2; k0 <= lambda; ++k0) out.push_back(symmetric_family(k0, lambda));

  // Grid of Proposition-style tuples within the volume bound. Without the
  // diagnostic flag only k0 <= lambda and A <= (lambda-1)/(k0-1) can yield a
  // family, so the scan is capped there.
  u64 k0_max = 0;
  for (u64 k0 = 2;; ++k0) {
    if (mul128(mul128(k0, k0), k0 + 2) > bound) break;  // smallest v for this k0
    k0_max = k0;
  }
  if (!opts.keep_rejected) k0_max = std::min(k0_max, lambda);

  std::vector<u64> k0s;
  for (u64 k0 = 2; k0 <= k0_max; ++k0) k0s.push_back(k0);

  unsigned workers = std::max(1u, opts.threads);
  if (workers == 1 || k0s.size() <= 1) {
    for (u64 k0 : k0s) scan_k0(k0, lambda, bound, opts.keep_rejected, out);
  } else {
    std::vector<std::vector<ParamCandidate>> parts(k0s.size());
    std::vector<std::thread> pool;
    std::size_t stride = workers;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t i = w; i < k0s.size(); i += stride)
          scan_k0(k0s[i], lambda, bound, opts.keep_rejected, parts[i]);
      });
    }
    for (auto& t : pool) t.join();
    for (auto& part : parts)
      for (auto& c : part) out.push_back(std::move(c));
  }

  // Closed-form rows whose volume exceeds the bound are still reported;
  // their search_bound certificate records the excess.
  if (lambda >= 3) {
    ParamCandidate ib = grid_candidate(lambda, lambda + 2, 1, lambda, bound);
    if (ib.family != Family::Ib)
      throw Error(errc::identity_violation, "closed-form Ib row failed to classify");
    out.push_back(std::move(ib));
  }
  if (lambda % 4 == 1) {
    ParamCandidate ic =
        grid_candidate(2, (lambda + 2) * (lambda - 1) / 4, lambda - 2, lambda, bound);
    if (ic.family != Family::Ic)
      throw Error(errc::identity_violation, "closed-form Ic row failed to classify");
    out.push_back(std::move(ic));
  }

  std::sort(out.begin(), out.end(), candidate_less);
  return out;
}

}  // namespace designlab
