#include "designlab/errors.hpp"

namespace designlab {

const char* errc_name(errc c) {
  switch (c) {
    case errc::out_of_range_point: return "OutOfRangePoint";
    case errc::duplicate_point_in_block: return "DuplicatePointInBlock";
    case errc::empty_block: return "EmptyBlock";
    case errc::non_uniform_block_size: return "NonUniformBlockSize";
    case errc::non_uniform_replication: return "NonUniformReplication";
    case errc::non_uniform_pair_count: return "NonUniformPairCount";
    case errc::no_pair_coverage: return "NoPairCoverage";
    case errc::not_transitive: return "NotTransitive";
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::not_an_automorphism_group: return "NotAnAutomorphismGroup";
    case errc::partition_not_invariant: return "PartitionNotInvariant";
    case errc::degree_limit: return "DegreeLimit";
    case errc::trivial_partition: return "TrivialPartition";
    case errc::non_constant_intersection: return "NonConstantIntersection";
    case errc::constant_is_one: return "ConstantIsOne";
    case errc::non_constant_multiplicity: return "NonConstantMultiplicity";
    case errc::inner_not_design: return "InnerNotDesign";
    case errc::non_constant_trace_count: return "NonConstantTraceCount";
    case errc::trivial_quotient: return "TrivialQuotient";
    case errc::not_flag_transitive: return "NotFlagTransitive";
    case errc::identity_violation: return "IdentityViolation";
    case errc::not_prime: return "NotPrime";
    case errc::lambda_too_large: return "LambdaTooLarge";
    case errc::lambda_too_small: return "LambdaTooSmall";
    case errc::not_fermat_prime: return "NotFermatPrime";
    case errc::scale_limit: return "ScaleLimit";
    case errc::parse_error: return "ParseError";
    case errc::overflow: return "Overflow";
  }
  return "UnknownError";
}

}  // namespace designlab
