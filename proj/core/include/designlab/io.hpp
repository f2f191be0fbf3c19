#ifndef DESIGNLAB_IO_HPP
#define DESIGNLAB_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "designlab/decompose.hpp"
#include "designlab/exceptional.hpp"
#include "designlab/feasibility.hpp"
#include "designlab/incidence.hpp"
#include "designlab/permgroup.hpp"

namespace designlab {

// One permutation per line as the image list of 0..v-1; '#' starts a
// comment. All permutations must share one degree, which must match
// expect_degree when given.
std::vector<Perm> parse_generators(std::istream& in, std::optional<u32> expect_degree = {});

// v class indices, whitespace-separated across any number of lines.
Partition parse_partition(std::istream& in, u32 v);

IncidenceStructure load_design_file(const std::string& path);
std::vector<Perm> load_generators_file(const std::string& path,
                                       std::optional<u32> expect_degree = {});
Partition load_partition_file(const std::string& path, u32 v);

// Resolves a bundled data file: an absolute or existing relative path wins,
// then data_dir, then the DESIGNLAB_DATA environment variable.
std::string resolve_data_file(const std::string& name, const std::string& data_dir = "");

// JSON documents carry "schema": "designlab/1". Integers above 2^63-1 are
// emitted as decimal strings.
std::string json_params(const DesignParams& p, const std::vector<Check>& checks);
std::string json_report(const DecompositionReport& r);
std::string json_candidates(u64 lambda, const std::vector<ParamCandidate>& cs);
std::string csv_candidates(const std::vector<ParamCandidate>& cs);
std::string json_certificate(const Certificate& c);
std::string json_frame(const FermatFrame& f);

}  // namespace designlab

#endif
