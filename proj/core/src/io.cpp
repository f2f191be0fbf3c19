#include "designlab/io.hpp"

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "designlab/errors.hpp"
#include "json.hpp"

namespace designlab {

namespace {

using ordered_json = nlohmann::ordered_json;

u64 parse_u64_token(const std::string& tok, std::size_t lineno) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw Error(errc::parse_error,
                "line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (errno == ERANGE)
    throw Error(errc::parse_error, "line " + std::to_string(lineno) + ": integer out of range");
  return v;
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

std::vector<Perm> parse_generators(std::istream& in, std::optional<u32> expect_degree) {
  std::vector<Perm> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(strip_comment(line));
    std::vector<u32> img;
    std::string tok;
    while (ss >> tok) {
      u64 x = parse_u64_token(tok, lineno);
      if (x >= std::numeric_limits<u32>::max())
        throw Error(errc::parse_error, "line " + std::to_string(lineno) + ": point out of range");
      img.push_back(static_cast<u32>(x));
    }
    if (img.empty()) continue;
    Perm p{std::move(img)};
    if (expect_degree && p.degree() != *expect_degree)
      throw Error(errc::degree_mismatch,
                  "line " + std::to_string(lineno) + ": permutation degree " +
                      std::to_string(p.degree()) + ", expected " + std::to_string(*expect_degree));
    if (!out.empty() && p.degree() != out.front().degree())
      throw Error(errc::degree_mismatch,
                  "line " + std::to_string(lineno) + ": permutation degree " +
                      std::to_string(p.degree()) + " differs from the first generator");
    if (!is_valid_perm(p))
      throw Error(errc::parse_error,
                  "line " + std::to_string(lineno) + ": not a permutation of 0.." +
                      std::to_string(p.degree() - 1));
    out.push_back(std::move(p));
  }
  return out;
}

Partition parse_partition(std::istream& in, u32 v) {
  std::vector<u32> class_of;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(strip_comment(line));
    std::string tok;
    while (ss >> tok) {
      u64 x = parse_u64_token(tok, lineno);
      if (class_of.size() == v)
        throw Error(errc::parse_error,
                    "line " + std::to_string(lineno) + ": more than " + std::to_string(v) +
                        " partition entries");
      if (x >= v)
        throw Error(errc::parse_error,
                    "line " + std::to_string(lineno) + ": class index " + std::to_string(x) +
                        " out of range");
      class_of.push_back(static_cast<u32>(x));
    }
  }
  if (class_of.size() != v)
    throw Error(errc::parse_error, "expected " + std::to_string(v) + " partition entries, got " +
                                       std::to_string(class_of.size()));
  return make_partition(v, std::move(class_of));
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::parse_error, "cannot open '" + path + "'");
  return in;
}

}  // namespace

IncidenceStructure load_design_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_design(in);
}

std::vector<Perm> load_generators_file(const std::string& path, std::optional<u32> expect_degree) {
  auto in = open_or_throw(path);
  return parse_generators(in, expect_degree);
}

Partition load_partition_file(const std::string& path, u32 v) {
  auto in = open_or_throw(path);
  return parse_partition(in, v);
}

std::string resolve_data_file(const std::string& name, const std::string& data_dir) {
  namespace fs = std::filesystem;
  if (fs::path(name).is_absolute() || fs::exists(name)) return name;
  if (!data_dir.empty()) {
    fs::path p = fs::path(data_dir) / name;
    if (fs::exists(p)) return p.string();
  }
  if (const char* env = std::getenv("DESIGNLAB_DATA")) {
    if (*env) {
      fs::path p = fs::path(env) / name;
      if (fs::exists(p)) return p.string();
    }
  }
  throw Error(errc::parse_error, "cannot resolve data file '" + name + "'");
}

namespace {

ordered_json jint(u128 x) {
  if (x > static_cast<u128>(std::numeric_limits<std::int64_t>::max())) return dec(x);
  return static_cast<std::int64_t>(x);
}

ordered_json jchecks(const std::vector<Check>& cs) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : cs) {
    ordered_json o;
    o["name"] = c.name;
    o["lhs"] = jint(c.lhs);
    o["rhs"] = jint(c.rhs);
    o["pass"] = c.pass;
    arr.push_back(std::move(o));
  }
  return arr;
}

ordered_json jparams(const DesignParams& p) {
  ordered_json o;
  o["v"] = jint(p.v);
  o["b"] = jint(p.b);
  o["r"] = jint(p.r);
  o["k"] = jint(p.k);
  o["lambda"] = jint(p.lambda);
  return o;
}

ordered_json jpartition(const Partition& s) {
  ordered_json o;
  o["v0"] = s.v0;
  o["v1"] = s.v1;
  o["class_of"] = s.class_of;
  return o;
}

ordered_json report_body(const DecompositionReport& r) {
  ordered_json o;
  o["params"] = jparams(r.params);
  o["v0"] = jint(r.v0);
  o["v1"] = jint(r.v1);
  o["k0"] = jint(r.k0);
  o["k1"] = jint(r.k1);
  o["mu"] = jint(r.mu);
  o["eta"] = jint(r.eta);
  ordered_json d0;
  d0["kind"] = component_kind_name(r.d0_kind);
  if (r.d0_params) d0["params"] = jparams(*r.d0_params);
  o["d0"] = std::move(d0);
  ordered_json d1;
  d1["kind"] = component_kind_name(r.d1_kind);
  if (r.d1_params) d1["params"] = jparams(*r.d1_params);
  o["d1"] = std::move(d1);
  if (r.lambda0) o["lambda0"] = jint(*r.lambda0);
  if (r.lambda1) o["lambda1"] = jint(*r.lambda1);
  o["r1"] = jint(r.r1);
  o["b1"] = jint(r.b1);
  if (r.eta0) o["eta0"] = jint(*r.eta0);
  if (r.eta1) o["eta1"] = jint(*r.eta1);
  if (r.r1_prime) o["r1_prime"] = jint(*r.r1_prime);
  if (!r.split_note.empty()) o["split_note"] = r.split_note;
  if (r.group) {
    ordered_json g;
    g["order"] = jint(r.group->group_order);
    g["flag_transitive"] = r.group->flag_transitive;
    g["induced_order"] = jint(r.group->induced_order);
    g["kernel_order"] = jint(r.group->kernel_order);
    g["class_stabilizer"] = jint(r.group->class_stabilizer);
    ordered_json sd = ordered_json::array();
    for (u64 s : r.group->induced_subdegrees) sd.push_back(jint(s));
    g["induced_subdegrees"] = std::move(sd);
    g["order_bound"] = r.group->order_bound_holds;
    if (r.group->ratio_bound_holds) g["ratio_bound"] = *r.group->ratio_bound_holds;
    if (r.group->subdegree_div_holds) g["subdegree_div"] = *r.group->subdegree_div_holds;
    o["group"] = std::move(g);
  }
  o["checks"] = jchecks(r.certificates);
  o["all_pass"] = r.all_pass();
  return o;
}

ordered_json candidate_body(const ParamCandidate& c) {
  ordered_json o;
  o["family"] = family_name(c.family);
  o["lambda"] = jint(c.lambda);
  o["k0"] = jint(c.k0);
  o["z"] = jint(c.z);
  o["A"] = jint(c.A);
  o["v0"] = jint(c.v0);
  o["v1"] = jint(c.v1);
  o["k1"] = jint(c.k1);
  o["k"] = jint(c.k);
  o["v"] = jint(c.v);
  o["r"] = jint(c.r);
  if (c.b)
    o["b"] = jint(*c.b);
  else
    o["b"] = nullptr;
  o["certificates"] = jchecks(c.certificates);
  return o;
}

}  // namespace

std::string json_params(const DesignParams& p, const std::vector<Check>& checks) {
  ordered_json o;
  o["schema"] = "designlab/1";
  o["kind"] = "params";
  o["params"] = jparams(p);
  o["symmetric"] = is_symmetric(p);
  o["nontrivial"] = is_nontrivial(p);
  o["checks"] = jchecks(checks);
  o["all_pass"] = all_pass(checks);
  return o.dump(2) + "\n";
}

std::string json_report(const DecompositionReport& r) {
  ordered_json o;
  o["schema"] = "designlab/1";
  o["kind"] = "decomposition";
  ordered_json body = report_body(r);
  for (auto it = body.begin(); it != body.end(); ++it) o[it.key()] = it.value();
  return o.dump(2) + "\n";
}

std::string json_candidates(u64 lambda, const std::vector<ParamCandidate>& cs) {
  ordered_json o;
  o["schema"] = "designlab/1";
  o["kind"] = "candidates";
  o["lambda"] = jint(lambda);
  o["count"] = cs.size();
  ordered_json arr = ordered_json::array();
  for (const auto& c : cs) arr.push_back(candidate_body(c));
  o["candidates"] = std::move(arr);
  return o.dump(2) + "\n";
}

std::string csv_candidates(const std::vector<ParamCandidate>& cs) {
  std::ostringstream out;
  out << "family,lambda,k0,z,A,v0,v1,k1,k,v,r,b\n";
  for (const auto& c : cs) {
    out << family_name(c.family) << ',' << c.lambda << ',' << c.k0 << ',' << c.z << ',' << c.A
        << ',' << c.v0 << ',' << c.v1 << ',' << c.k1 << ',' << c.k << ',' << dec(c.v) << ','
        << c.r << ',';
    if (c.b) out << dec(*c.b);
    out << '\n';
  }
  return out.str();
}

std::string json_certificate(const Certificate& c) {
  ordered_json o;
  o["schema"] = "designlab/1";
  o["kind"] = "certificate";
  o["params"] = jparams(c.params);
  o["flag_transitive"] = c.flag_transitive;
  o["flag_orbit"] = jint(c.flag_orbit);
  o["imprimitive"] = c.imprimitive;
  o["partition"] = jpartition(c.partition);
  if (c.table_row_k0) o["table_row_k0"] = jint(*c.table_row_k0);
  o["report"] = report_body(c.report);
  o["checks"] = jchecks(c.checks);
  o["all_pass"] = c.all_pass();
  return o.dump(2) + "\n";
}

std::string json_frame(const FermatFrame& f) {
  ordered_json o;
  o["schema"] = "designlab/1";
  o["kind"] = "fermat_frame";
  o["candidate"] = candidate_body(f.candidate);
  if (f.inner_params) o["inner_params"] = jparams(*f.inner_params);
  if (f.quotient_params) o["quotient_params"] = jparams(*f.quotient_params);
  o["components_built"] = f.components_built;
  if (f.inner) o["inner_blocks"] = f.inner->b();
  if (f.quotient) o["quotient_blocks"] = f.quotient->b();
  o["status"] = f.status;
  return o.dump(2) + "\n";
}

}  // namespace designlab
