#ifndef DESIGNLAB_ERRORS_HPP
#define DESIGNLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace designlab {

enum class errc {
  // incidence input
  out_of_range_point,
  duplicate_point_in_block,
  empty_block,
  // 2-design verification
  non_uniform_block_size,
  non_uniform_replication,
  non_uniform_pair_count,
  no_pair_coverage,
  // permutation groups
  not_transitive,
  degree_mismatch,
  not_an_automorphism_group,
  partition_not_invariant,
  degree_limit,
  // decomposition
  trivial_partition,
  non_constant_intersection,
  constant_is_one,
  non_constant_multiplicity,
  inner_not_design,
  non_constant_trace_count,
  trivial_quotient,
  not_flag_transitive,
  // feasibility
  identity_violation,
  not_prime,
  lambda_too_large,
  lambda_too_small,
  not_fermat_prime,
  scale_limit,
  // plumbing
  parse_error,
  overflow,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

private:
  errc code_;
};

}  // namespace designlab

#endif
