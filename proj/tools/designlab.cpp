#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "designlab/decompose.hpp"
#include "designlab/errors.hpp"
#include "designlab/exceptional.hpp"
#include "designlab/feasibility.hpp"
#include "designlab/incidence.hpp"
#include "designlab/io.hpp"
#include "designlab/permgroup.hpp"

namespace {

using namespace designlab;

// 2: malformed or out-of-range input; 1: a verification failed on valid input.
int exit_code_for(errc c) {
  switch (c) {
    case errc::parse_error:
    case errc::degree_mismatch:
    case errc::out_of_range_point:
    case errc::duplicate_point_in_block:
    case errc::empty_block:
    case errc::not_prime:
    case errc::lambda_too_large:
    case errc::lambda_too_small:
    case errc::not_fermat_prime:
    case errc::scale_limit:
    case errc::degree_limit:
    case errc::overflow:
      return 2;
    default:
      return 1;
  }
}

std::string yesno(bool v) { return v ? "yes" : "no"; }

void print_params_line(const DesignParams& p) {
  std::cout << "2-(" << p.v << "," << p.k << "," << p.lambda << "), b=" << p.b << ", r=" << p.r;
}

void print_checks(const std::vector<Check>& cs) {
  std::size_t w = 4;
  for (const auto& c : cs) w = std::max(w, c.name.size());
  for (const auto& c : cs) {
    std::cout << "  " << std::left << std::setw(static_cast<int>(w)) << c.name << std::right
              << "  " << std::setw(22) << dec(c.lhs) << "  " << std::setw(22) << dec(c.rhs)
              << "  " << (c.pass ? "PASS" : "FAIL") << "\n";
  }
}

struct CommonOpts {
  std::string data_dir;
  bool json = false;
};

int run_verify(const CommonOpts& common, const std::string& design_arg) {
  IncidenceStructure d = load_design_file(resolve_data_file(design_arg, common.data_dir));
  DesignParams p = verify_2design(d);
  std::vector<Check> checks = check_identities(p);
  if (common.json) {
    std::cout << json_params(p, checks);
  } else {
    print_params_line(p);
    std::cout << "; " << (all_pass(checks) ? "all identities PASS" : "identity FAILURES") << "\n";
    std::cout << "symmetric=" << yesno(is_symmetric(p)) << " nontrivial=" << yesno(is_nontrivial(p))
              << "\n";
    print_checks(checks);
  }
  return all_pass(checks) ? 0 : 1;
}

int run_decompose(const CommonOpts& common, const std::string& design_arg,
                  const std::string& partition_arg, const std::string& gens_arg,
                  bool lambda_prime) {
  IncidenceStructure d = load_design_file(resolve_data_file(design_arg, common.data_dir));
  Partition sigma = load_partition_file(resolve_data_file(partition_arg, common.data_dir), d.v);
  std::optional<PermGroup> g;
  if (!gens_arg.empty()) {
    auto gens = load_generators_file(resolve_data_file(gens_arg, common.data_dir), d.v);
    g.emplace(d.v, std::move(gens));
  }
  DecompositionReport rep = full_report(d, sigma, g ? &*g : nullptr);
  if (lambda_prime)
    rep.certificates.push_back(
        make_check_pred("lambda_prime", rep.params.lambda, 1, is_prime(rep.params.lambda)));
  if (common.json) {
    std::cout << json_report(rep);
  } else {
    print_params_line(rep.params);
    std::cout << "\n";
    std::cout << "v0=" << rep.v0 << " v1=" << rep.v1 << " k0=" << rep.k0 << " k1=" << rep.k1
              << " mu=" << rep.mu << " eta=" << rep.eta << "\n";
    std::cout << "d0: " << component_kind_name(rep.d0_kind);
    if (rep.d0_params) {
      std::cout << " ";
      print_params_line(*rep.d0_params);
    }
    if (rep.lambda0) std::cout << " lambda0=" << *rep.lambda0;
    std::cout << "\n";
    std::cout << "d1: " << component_kind_name(rep.d1_kind);
    if (rep.d1_params) {
      std::cout << " ";
      print_params_line(*rep.d1_params);
    }
    if (rep.lambda1) std::cout << " lambda1=" << *rep.lambda1;
    std::cout << " r1=" << rep.r1 << " b1=" << rep.b1 << "\n";
    if (rep.eta0) std::cout << "eta0=" << *rep.eta0 << " eta1=" << *rep.eta1;
    if (rep.r1_prime) std::cout << " r1_prime=" << *rep.r1_prime;
    if (rep.eta0 || rep.r1_prime) std::cout << "\n";
    if (!rep.split_note.empty()) std::cout << "split: " << rep.split_note << "\n";
    if (rep.group) {
      std::cout << "group: order=" << dec(rep.group->group_order)
                << " flag_transitive=" << yesno(rep.group->flag_transitive)
                << " induced=" << dec(rep.group->induced_order)
                << " kernel=" << dec(rep.group->kernel_order)
                << " class_stabilizer=" << dec(rep.group->class_stabilizer) << "\n";
      std::cout << "predicates: order_bound=" << yesno(rep.group->order_bound_holds);
      if (rep.group->ratio_bound_holds) std::cout << " ratio_bound=" << yesno(*rep.group->ratio_bound_holds);
      if (rep.group->subdegree_div_holds) std::cout << " subdegree_div=" << yesno(*rep.group->subdegree_div_holds);
      std::cout << "\n";
    }
    std::cout << "certificates:\n";
    print_checks(rep.certificates);
    std::cout << (rep.all_pass() ? "all certificates PASS" : "certificate FAILURES") << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

int run_enum(const CommonOpts& common, u64 lambda, bool csv, bool keep_rejected,
             unsigned threads) {
  EnumOptions opts;
  opts.keep_rejected = keep_rejected;
  opts.threads = threads;
  std::vector<ParamCandidate> cs = enumerate_candidates(lambda, opts);
  if (common.json) {
    std::cout << json_candidates(lambda, cs);
  } else if (csv) {
    std::cout << csv_candidates(cs);
  } else {
    std::cout << std::left << std::setw(20) << "family" << std::right << std::setw(8) << "lambda"
              << std::setw(8) << "k0" << std::setw(10) << "z" << std::setw(8) << "A"
              << std::setw(12) << "v0" << std::setw(12) << "v1" << std::setw(12) << "k1"
              << std::setw(12) << "k" << std::setw(18) << "v" << std::setw(12) << "r"
              << std::setw(18) << "b" << std::setw(10) << "certs" << "\n";
    for (const auto& c : cs) {
      std::size_t passed = 0;
      for (const auto& ch : c.certificates)
        if (ch.pass) ++passed;
      std::cout << std::left << std::setw(20) << family_name(c.family) << std::right
                << std::setw(8) << c.lambda << std::setw(8) << c.k0 << std::setw(10) << c.z
                << std::setw(8) << c.A << std::setw(12) << c.v0 << std::setw(12) << c.v1
                << std::setw(12) << c.k1 << std::setw(12) << c.k << std::setw(18) << dec(c.v)
                << std::setw(12) << c.r << std::setw(18) << (c.b ? dec(*c.b) : std::string("-"))
                << std::setw(10)
                << (std::to_string(passed) + "/" + std::to_string(c.certificates.size()))
                << "\n";
    }
    std::cout << cs.size() << " candidates\n";
  }
  return 0;
}

int run_group_impl(const CommonOpts& common, const std::string& design_arg,
                   const std::string& gens_arg, const std::string& partition_arg, u64 seed) {
  IncidenceStructure d = load_design_file(resolve_data_file(design_arg, common.data_dir));
  auto gens = load_generators_file(resolve_data_file(gens_arg, common.data_dir), d.v);
  PermGroup g(d.v, std::move(gens));
  const bool transitive = g.is_transitive();
  const bool chain_ok = g.verify_chain(seed, 12);
  bool ft = is_flag_transitive(g, d);

  std::cout << "group: order=" << dec(g.order()) << " transitive=" << yesno(transitive);
  if (transitive) std::cout << " primitive=" << yesno(g.is_primitive());
  std::cout << " flag_transitive=" << yesno(ft) << "\n";
  std::cout << "chain_verified=" << yesno(chain_ok) << " (seed=" << seed << ")\n";
  if (transitive) {
    std::cout << "subdegrees:";
    for (u64 s : g.subdegrees(0)) std::cout << " " << s;
    std::cout << "\n";
  }
  if (ft) {
    RankReport rr = rank_equality_check(g, d);
    std::cout << "rank_points=" << rr.rank_points << " rank_block=" << rr.rank_block
              << " equal=" << yesno(rr.equal) << "\n";
  }
  if (!partition_arg.empty()) {
    Partition sigma = load_partition_file(resolve_data_file(partition_arg, common.data_dir), d.v);
    DecompositionReport rep = full_report(d, sigma, &g);
    const GroupFacts& gf = *rep.group;
    std::cout << "partition: v0=" << sigma.v0 << " v1=" << sigma.v1 << "\n";
    std::cout << "induced_order=" << dec(gf.induced_order) << " kernel_order="
              << dec(gf.kernel_order) << " class_stabilizer=" << dec(gf.class_stabilizer) << "\n";
    std::cout << "induced_subdegrees:";
    for (u64 s : gf.induced_subdegrees) std::cout << " " << s;
    std::cout << "\n";
    std::cout << "order_bound=" << yesno(gf.order_bound_holds);
    if (gf.ratio_bound_holds) std::cout << " ratio_bound=" << yesno(*gf.ratio_bound_holds);
    if (gf.subdegree_div_holds) std::cout << " subdegree_div=" << yesno(*gf.subdegree_div_holds);
    std::cout << "\n";
  }
  return chain_ok ? 0 : 1;
}

int run_fermat(const CommonOpts& common, u64 j, const std::string& emit_dir) {
  FermatFrame frame = fermat_frame(j);
  if (!emit_dir.empty() && !frame.components_built)
    throw Error(errc::scale_limit, "components for j=" + std::to_string(j) +
                                       " are recorded as parameters only");
  if (common.json) {
    std::cout << json_frame(frame);
  } else {
    const ParamCandidate& c = frame.candidate;
    std::cout << "lambda=" << c.lambda << " (Fermat prime, j=" << j << ")\n";
    std::cout << "2-(" << dec(c.v) << "," << c.k << "," << c.lambda << "), r=" << c.r << ", b="
              << (c.b ? dec(*c.b) : std::string("-")) << ", " << frame.status << "\n";
    if (frame.inner_params) {
      std::cout << "inner: ";
      print_params_line(*frame.inner_params);
      std::cout << (frame.inner ? " (built)" : " (parameters only)") << "\n";
    }
    if (frame.quotient_params) {
      std::cout << "quotient: ";
      print_params_line(*frame.quotient_params);
      std::cout << (frame.quotient ? " (built)" : " (parameters only)") << "\n";
    }
    std::cout << "certificates:\n";
    print_checks(c.certificates);
  }
  if (!emit_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(emit_dir);
    const u64 q = frame.candidate.k0;
    fs::path inner_path = fs::path(emit_dir) / ("ag2_" + std::to_string(q) + ".txt");
    fs::path quot_path =
        fs::path(emit_dir) / ("complete_" + std::to_string(q + 2) + "_" + std::to_string(q + 1) +
                              ".txt");
    std::ofstream fi(inner_path);
    write_design(fi, *frame.inner);
    std::ofstream fq(quot_path);
    write_design(fq, *frame.quotient);
    std::cout << "wrote " << inner_path.string() << "\n";
    std::cout << "wrote " << quot_path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-design decomposition and parameter feasibility toolkit"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--data", common.data_dir, "directory for bundled data files");

  auto* sc_verify = app.add_subcommand("verify", "check a design file and its identities");
  std::string v_design;
  sc_verify->add_option("design", v_design, "design file")->required();
  sc_verify->add_flag("--json", common.json, "JSON output");

  auto* sc_dec = app.add_subcommand("decompose", "decompose a design over a point partition");
  std::string d_design, d_partition, d_gens;
  bool d_lambda_prime = false;
  sc_dec->add_option("design", d_design, "design file")->required();
  sc_dec->add_option("--partition", d_partition, "partition file")->required();
  sc_dec->add_option("--gens", d_gens, "generator file");
  sc_dec->add_flag("--lambda-prime", d_lambda_prime, "also certify that lambda is prime");
  sc_dec->add_flag("--json", common.json, "JSON output");

  auto* sc_enum = app.add_subcommand("enum", "enumerate parameter candidates for a prime lambda");
  u64 e_lambda = 0;
  bool e_csv = false, e_keep = false;
  unsigned e_threads = 1;
  sc_enum->add_option("--lambda", e_lambda, "prime lambda")->required();
  sc_enum->add_flag("--keep-rejected", e_keep, "keep rejected tuples with the failed filter");
  sc_enum->add_option("--threads", e_threads, "enumeration worker count");
  auto* e_json_flag = sc_enum->add_flag("--json", common.json, "JSON output");
  sc_enum->add_flag("--csv", e_csv, "CSV output")->excludes(e_json_flag);

  auto* sc_group = app.add_subcommand("group", "analyze a generator set acting on a design");
  std::string g_design, g_gens, g_partition;
  u64 g_seed = 1;
  sc_group->add_option("design", g_design, "design file")->required();
  sc_group->add_option("--gens", g_gens, "generator file")->required();
  sc_group->add_option("--partition", g_partition, "partition file");
  sc_group->add_option("--seed", g_seed, "seed for stabilizer-chain spot checks");

  auto* sc_fermat = app.add_subcommand("fermat", "Fermat-prime parameter record");
  u64 f_j = 0;
  std::string f_emit;
  sc_fermat->add_option("--j", f_j, "Fermat index j >= 1")->required();
  sc_fermat->add_option("--emit-frame", f_emit, "write the forced component designs here");
  sc_fermat->add_flag("--json", common.json, "JSON output");

  int rc = 0;
  sc_verify->callback([&]() { rc = run_verify(common, v_design); });
  sc_dec->callback([&]() { rc = run_decompose(common, d_design, d_partition, d_gens,
                                              d_lambda_prime); });
  sc_enum->callback([&]() { rc = run_enum(common, e_lambda, e_csv, e_keep, e_threads); });
  sc_group->callback([&]() { rc = run_group_impl(common, g_design, g_gens, g_partition, g_seed); });
  sc_fermat->callback([&]() { rc = run_fermat(common, f_j, f_emit); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int cli_rc = app.exit(e);
    return cli_rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
