#include "toricstack_cli/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <future>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "toricstack/cox.hpp"
#include "toricstack/error.hpp"
#include "toricstack/gerbe.hpp"
#include "toricstack/io.hpp"
#include "toricstack/oracle.hpp"
#include "toricstack/stacky.hpp"

namespace toricstack::cli {

using io::json;
using io::to_json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InvalidArgument, "SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

namespace {

struct Options {
  bool json = false;
  bool verify = false;
  std::size_t jobs = 1;
  std::size_t sample_budget = SamplingOptions{}.budget;
  std::uint64_t seed = 0;
};

/// Per-invocation state: the command name and the hashes of inputs read so far.
struct Session {
  Options options;
  std::string command;
  std::vector<std::string> hashes;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  json envelope() const {
    return json{{"schema_version", std::string(io::kSchemaVersion)},
                {"command", command},
                {"input_sha256", hashes}};
  }
};

json load_document(Session& s, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'", "/");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  s.hashes.push_back(sha256_hex(bytes));
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what(), "/");
  }
}

std::string violation_location(const Violation& v, const std::string& prefix) {
  if (v.code == "NonPositiveOrder") return prefix + "/r";
  if (v.code == "BRowCount" || v.code == "BColumnCount") return prefix + "/b";
  if (!v.rays.empty()) return prefix + "/rays/" + std::to_string(v.rays.front());
  return prefix + "/cones";
}

void require_valid_at(const StackyData& data, const std::string& prefix) {
  const auto report = validate_data(data);
  if (report.ok()) return;
  const auto& v = report.violations.front();
  throw Error(ErrorCode::InvalidData, v.code + ": " + v.message, violation_location(v, prefix));
}

StackyData load_data(Session& s, const std::string& path) {
  StackyData data = io::parse_stacky_data(load_document(s, path));
  require_valid_at(data, "");
  return data;
}

MorphismData load_morphism(Session& s, const std::string& path) {
  MorphismData md = io::parse_morphism(load_document(s, path));
  require_valid_at(md.source, "/source");
  require_valid_at(md.target, "/target");
  require_morphism_preconditions(md);
  return md;
}

json pattern_json(const ZeroPattern& w) { return json(std::vector<std::size_t>(w.begin(), w.end())); }

json rationals_json(const std::vector<Rational>& values) {
  json arr = json::array();
  for (const auto& q : values) arr.push_back(io::rational_to_string(q));
  return arr;
}

json stacky_fan_json(const StackyFan& sf) {
  json rays = json::array();
  for (const auto& r : sf.lifted_rays) rays.push_back({{"lattice", to_json(r.lattice)}, {"torsion", to_json(r.torsion)}});
  return json{{"extended_group", to_json(sf.extended_group)}, {"lifted_rays", rays}};
}

/// Runs an oracle check, reporting a skip when the instance exceeds its bound.
template <class F>
json oracle_check(const std::string& name, F&& check) {
  try {
    return json{{"oracle", name}, {"agrees", check()}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
    return json{{"oracle", name}, {"agrees", nullptr}, {"skipped", e.what()}};
  }
}

bool verification_failed(const json& checks) {
  for (const auto& c : checks)
    if (c["agrees"].is_boolean() && !c["agrees"].get<bool>()) return true;
  return false;
}

// ---- text rendering -------------------------------------------------------

bool is_flat(const json& j) {
  if (!j.is_array()) return !j.is_object();
  return std::all_of(j.begin(), j.end(), [](const json& x) { return is_flat(x); });
}

void render(std::ostream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (is_flat(it.value())) {
        os << pad << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
           << "\n";
      } else {
        os << pad << it.key() << ":\n";
        render(os, it.value(), indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (is_flat(j[i])) {
        os << pad << "- " << j[i].dump() << "\n";
      } else {
        os << pad << "- [" << i << "]\n";
        render(os, j[i], indent + 4);
      }
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

int emit(Session& s, json result, int code, json verification = nullptr) {
  json report = s.envelope();
  report["result"] = std::move(result);
  if (!verification.is_null()) {
    report["verification"] = verification;
    if (verification_failed(verification)) {
      if (!s.options.json) *s.err << "oracle disagreement\n";
      code = kInvalidInput;
    }
  }
  if (s.options.json) {
    *s.out << report.dump(2) << "\n";
  } else {
    render(*s.out, report["result"], 0);
    if (report.contains("verification")) {
      *s.out << "verification:\n";
      render(*s.out, report["verification"], 2);
    }
  }
  return code;
}

int emit_error(Session& s, const std::string& code, const std::string& message, const std::string& location) {
  json report = s.envelope();
  report["error"] = {{"code", code}, {"message", message}, {"location", location}};
  if (s.options.json) {
    *s.out << report.dump(2) << "\n";
  } else {
    std::string text = message;
    if (text.rfind(location + ": ", 0) == 0) text.erase(0, location.size() + 2);
    *s.err << "error [" << code << "] at " << location << ": " << text << "\n";
  }
  return kInvalidInput;
}

// ---- commands --------------------------------------------------------------

int cmd_validate(Session& s, const std::string& path) {
  const StackyData data = io::parse_stacky_data(load_document(s, path));
  const auto report = validate_data(data);
  json violations = to_json(report);
  for (std::size_t i = 0; i < report.violations.size(); ++i)
    violations[i]["location"] = violation_location(report.violations[i], "");
  json result{{"valid", report.ok()},
              {"lattice_rank", data.lattice_rank()},
              {"ray_count", data.ray_count()},
              {"cone_count", data.fan.cones.size()},
              {"gerbe_count", data.gerbe_count()},
              {"violations", violations}};
  return emit(s, result, report.ok() ? kSuccess : kInvalidInput);
}

int cmd_build(Session& s, const std::string& path) {
  const StackyData data = load_data(s, path);
  const auto m = build_matrices(data);
  const auto psi = psi_exponents(data);
  const auto g = quotient_group(data);
  json classes = json::array();
  for (const auto& c : g.character_classes) classes.push_back(to_json(c));
  json decomposition = json::array();
  for (const auto& r : canonical_ray_decomposition(data))
    decomposition.push_back({{"primitive", to_json(r.primitive)}, {"multiplicity", to_json(r.multiplicity)}});
  const auto torus = dm_torus(data);

  json result{{"B", to_json(m.B)},
              {"Q", to_json(m.Q)},
              {"BQ", to_json(psi)},
              {"quotient_group",
               {{"torus_rank", g.torus_rank}, {"finite_part", to_json(g.finite_part)}, {"character_classes", classes}}},
              {"generic_stabilizer", to_json(generic_stabilizer(data))},
              {"dm_torus", {{"dimension", torus.dimension}, {"gerbe_part", to_json(torus.gerbe_part)}}},
              {"ray_decomposition", decomposition}};
  const bool spanning = rays_span(data.fan).spans;
  result["spanning"] = spanning;
  if (spanning) {
    result["stacky_fan"] = stacky_fan_json(stacky_fan(data));
    result["split"] = nullptr;
  } else {
    const auto split = split_nonspanning(data);
    result["stacky_fan"] = stacky_fan_json(stacky_fan(split.data));
    result["split"] = {{"torus_rank", split.torus_rank},
                       {"basis", to_json(split.basis)},
                       {"data", io::stacky_data_to_json(split.data)}};
  }

  json verification = nullptr;
  if (s.options.verify) {
    verification = json::array();
    verification.push_back(oracle_check("verify_snf", [&] {
      const IntegerMatrix rel = psi.transpose();
      return oracle::verify_snf(rel, smith_normal_form(rel));
    }));
    verification.push_back(oracle_check("cyclic_product_invariant_factors", [&] {
      return oracle::cyclic_product_invariant_factors(data.r) == generic_stabilizer(data).invariant_factors();
    }));
    for (const auto& cone : maximal_cones(data.fan)) {
      json check = oracle_check("stabilizer_order", [&] {
        return oracle::stabilizer_order(data, cone) == point_stabilizer(data, cone).order();
      });
      check["cone"] = cone;
      verification.push_back(check);
    }
  }
  return emit(s, result, kSuccess, verification);
}

int cmd_pic(Session& s, const std::string& path) {
  const StackyData data = load_data(s, path);
  const auto pic = picard_group(rigidify(data));
  json classes = json::array();
  for (std::size_t i = 0; i < data.gerbe_count(); ++i) {
    const auto c = gerbe_class(data, i);
    classes.push_back({{"index", i},
                       {"representative", to_json(c.representative)},
                       {"is_zero", pic.is_zero(c)},
                       {"divisible_by_r", pic.is_divisible(c, data.r[i])}});
  }
  json result{{"group", to_json(pic.group())},
              {"relation_matrix", to_json(pic.relation_matrix())},
              {"gerbe_classes", classes}};
  return emit(s, result, kSuccess);
}

int cmd_stabilizer(Session& s, const std::string& path, std::vector<std::size_t> cone) {
  const StackyData data = load_data(s, path);
  cone = normalize_cone(std::move(cone));
  const auto group = point_stabilizer(data, cone);
  json result{{"cone", cone}, {"group", to_json(group)}};
  json verification = nullptr;
  if (s.options.verify) {
    verification = json::array();
    verification.push_back(
        oracle_check("stabilizer_order", [&] { return oracle::stabilizer_order(data, cone) == group.order(); }));
  }
  return emit(s, result, kSuccess, verification);
}

int cmd_rigidify(Session& s, const std::string& path) {
  const StackyData data = load_data(s, path);
  return emit(s, json{{"data", io::stacky_data_to_json(rigidify(data))}}, kSuccess);
}

int cmd_split(Session& s, const std::string& path) {
  const StackyData data = load_data(s, path);
  const auto split = split_nonspanning(data);
  json result{{"torus_rank", split.torus_rank},
              {"saturation_rank", split.data.lattice_rank()},
              {"basis", to_json(split.basis)},
              {"data", io::stacky_data_to_json(split.data)}};
  return emit(s, result, kSuccess);
}

int cmd_canonicalize(Session& s, const std::string& path) {
  const StackyData data = load_data(s, path);
  const auto can = canonicalize(data);
  json result{{"chain", to_json(can.data.r)},
              {"certificate", to_json(can.certificate)},
              {"data", io::stacky_data_to_json(can.data)}};
  json verification = nullptr;
  if (s.options.verify) {
    verification = json::array();
    verification.push_back(oracle_check("is_band_isomorphism", [&] {
      return oracle::is_band_isomorphism(data.r, can.data.r, can.certificate);
    }));
    verification.push_back(oracle_check("cyclic_product_invariant_factors", [&] {
      return oracle::cyclic_product_invariant_factors(data.r) == can.data.r;
    }));
  }
  return emit(s, result, kSuccess, verification);
}

struct Comparison {
  json report;
  bool mismatched = false;
  bool isomorphic = false;
  json verification = json::array();
};

Comparison compare_pair(const StackyData& first, const StackyData& second, std::size_t index, bool verify) {
  Comparison c;
  c.report = {{"first", 0}, {"second", index}};
  if (!same_underlying_data(first, second)) {
    c.mismatched = true;
    c.report["same_underlying_data"] = false;
    c.report["isomorphic"] = nullptr;
    c.report["error"] = {{"code", std::string(error_code_name(ErrorCode::MismatchedUnderlyingData))},
                         {"message", "lattice, rays or cones differ"},
                         {"location", "/"}};
    return c;
  }
  const auto cmp = compare_banded(first, second);
  c.isomorphic = cmp.isomorphic;
  c.report["same_underlying_data"] = true;
  c.report["same_chain"] = cmp.same_chain;
  c.report["divisible"] = cmp.divisible;
  c.report["isomorphic"] = cmp.isomorphic;
  if (verify && cmp.same_chain) {
    const PicardPresentation pic(first.fan);
    for (std::size_t i = 0; i < first.gerbe_count(); ++i) {
      json check = oracle_check("divisibility", [&] {
        IntegerVector diff = first.b.row(i);
        for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= second.b(i, k);
        return oracle::divisibility(diff, first.r[i], pic.relation_matrix()) == cmp.divisible[i];
      });
      check["second"] = index;
      check["gerbe_index"] = i;
      c.verification.push_back(check);
    }
  }
  return c;
}

int cmd_classify(Session& s, const std::vector<std::string>& paths) {
  std::vector<StackyData> canonical;
  json chains = json::array();
  for (const auto& p : paths) {
    canonical.push_back(canonicalize(load_data(s, p)).data);
    chains.push_back(to_json(canonical.back().r));
  }
  const std::size_t pairs = canonical.size() - 1;
  std::vector<Comparison> results(pairs);
  const std::size_t jobs = std::max<std::size_t>(1, std::min(s.options.jobs, pairs));
  std::vector<std::future<void>> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < pairs; k += jobs)
        results[k] = compare_pair(canonical[0], canonical[k + 1], k + 1, s.options.verify);
    }));
  }
  for (auto& f : workers) f.get();

  json comparisons = json::array();
  json verification = s.options.verify ? json::array() : json(nullptr);
  bool any_mismatch = false, all_iso = true;
  for (auto& c : results) {
    comparisons.push_back(c.report);
    any_mismatch = any_mismatch || c.mismatched;
    all_iso = all_iso && c.isomorphic;
    if (s.options.verify)
      for (auto& v : c.verification) verification.push_back(v);
  }
  json result{{"chains", chains}, {"comparisons", comparisons}};
  if (!any_mismatch) result["isomorphic"] = all_iso;
  const int code = any_mismatch ? kInvalidInput : all_iso ? kSuccess : kFalseVerdict;
  return emit(s, result, code, verification);
}

const char* verdict_name(BVerdict v) {
  switch (v) {
    case BVerdict::Proven: return "Proven";
    case BVerdict::Refuted: return "Refuted";
    case BVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

const char* verdict_name(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Yes: return "Yes";
    case IsoVerdict::No: return "No";
    case IsoVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

bool witness_checks_out(const MorphismData& md, const ConditionBVerdict& b) {
  if (!is_admissible_zero_pattern(md.source.fan, b.source_pattern)) return false;
  if (is_admissible_zero_pattern(md.target.fan, b.image_pattern)) return false;
  if (!b.point) return monomial_image_pattern(md.polys, b.source_pattern) == b.image_pattern;
  ZeroPattern src, img;
  for (std::size_t k = 0; k < b.point->size(); ++k)
    if ((*b.point)[k] == 0) src.push_back(k);
  for (std::size_t k = 0; k < md.polys.size(); ++k)
    if (md.polys[k].evaluate(*b.point) == 0) img.push_back(k);
  return src == b.source_pattern && img == b.image_pattern;
}

int cmd_morphism_check(Session& s, const std::string& path) {
  const MorphismData md = load_morphism(s, path);
  const auto a = evaluate_condition_a(md);
  SamplingOptions sampling;
  sampling.budget = s.options.sample_budget;
  sampling.seed = s.options.seed;
  const auto b = check_condition_b(md, sampling);

  json degrees = json::array();
  for (const auto& d : a.ray_degrees) degrees.push_back(d ? to_json(d->representative) : json(nullptr));
  json cond_b{{"verdict", verdict_name(b.verdict)}};
  if (b.verdict == BVerdict::Refuted) {
    cond_b["witness"] = {{"source_pattern", pattern_json(b.source_pattern)},
                         {"image_pattern", pattern_json(b.image_pattern)},
                         {"point", b.point ? rationals_json(*b.point) : json(nullptr)},
                         {"source_cone", b.source_cone ? json(*b.source_cone) : json(nullptr)}};
  }
  json result{{"condition_a",
               {{"holds", a.holds}, {"degrees", degrees}, {"lattice_rows", a.lattice_rows}, {"gerbe_rows", a.gerbe_rows}}},
              {"condition_b", cond_b}};

  json verification = nullptr;
  if (s.options.verify && b.verdict == BVerdict::Refuted) {
    verification = json::array();
    verification.push_back(oracle_check("witness", [&] { return witness_checks_out(md, b); }));
  }
  int code = kSuccess;
  if (!a.holds || b.verdict == BVerdict::Refuted) {
    code = kFalseVerdict;
  } else if (b.verdict == BVerdict::Unknown) {
    code = kUnknownVerdict;
  }
  return emit(s, result, code, verification);
}

int cmd_morphism_iso(Session& s, const std::string& first_path, const std::string& second_path) {
  const MorphismData first = load_morphism(s, first_path);
  const MorphismData second = load_morphism(s, second_path);
  const auto r = check_two_isomorphic(first, second);
  json ratios = json::array();
  for (const auto& q : r.ratios) ratios.push_back(q ? json(io::rational_to_string(*q)) : json(nullptr));
  json result{{"verdict", verdict_name(r.verdict)}, {"ratios", ratios}, {"reason", r.reason}};

  json verification = nullptr;
  if (s.options.verify && r.verdict == IsoVerdict::Yes) {
    verification = json::array();
    verification.push_back(oracle_check("ratio_witness", [&] {
      for (std::size_t k = 0; k < r.ratios.size(); ++k) {
        const Rational lambda = r.ratios[k].value_or(Rational(0));
        if (r.ratios[k] && !(second.polys[k] == first.polys[k].scaled(lambda))) return false;
      }
      return true;
    }));
  }
  const int code = r.verdict == IsoVerdict::Yes  ? kSuccess
                   : r.verdict == IsoVerdict::No ? kFalseVerdict
                                                 : kUnknownVerdict;
  return emit(s, result, code, verification);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session s;
  s.out = &out;
  s.err = &err;

  CLI::App app{"Toric Deligne-Mumford stacks from combinatorial data"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", s.options.json, "Machine-readable JSON output");
  app.add_flag("--verify", s.options.verify, "Cross-check results with the brute-force oracles");
  app.add_option("--jobs", s.options.jobs, "Worker threads for batch classification")->check(CLI::PositiveNumber);
  app.add_option("--sample-budget", s.options.sample_budget, "Random points per zero pattern in condition (b)");
  app.add_option("--seed", s.options.seed, "Seed for condition (b) sampling");

  std::string file, second_file;
  std::vector<std::string> files;
  std::vector<std::size_t> cone;

  auto* validate = app.add_subcommand("validate", "Validate a stacky data document");
  validate->add_option("file", file)->required();
  auto* build = app.add_subcommand("build", "Matrices, quotient group, stacky fan and stabilizers");
  build->add_option("file", file)->required();
  auto* pic = app.add_subcommand("pic", "Picard group of the rigidification and gerbe classes");
  pic->add_option("file", file)->required();
  auto* stabilizer = app.add_subcommand("stabilizer", "Isotropy group of a cone's torus orbit");
  stabilizer->add_option("file", file)->required();
  stabilizer->add_option("--cone", cone, "Comma-separated ray indices (default: zero cone)")->delimiter(',');
  auto* rigid = app.add_subcommand("rigidify", "Drop the gerbe part");
  rigid->add_option("file", file)->required();
  auto* split = app.add_subcommand("split", "Split off the torus factor of non-spanning data");
  split->add_option("file", file)->required();
  auto* classify = app.add_subcommand("classify", "Compare the first document with each of the others");
  classify->add_option("files", files)->required()->expected(2, -1);
  auto* canon = app.add_subcommand("canonicalize", "Rewrite r as an invariant factor chain");
  canon->add_option("file", file)->required();
  auto* morphism = app.add_subcommand("morphism", "Morphism verdicts from homogeneous polynomials");
  morphism->require_subcommand(1);
  auto* check = morphism->add_subcommand("check", "Conditions (a) and (b)");
  check->add_option("file", file)->required();
  auto* iso = morphism->add_subcommand("iso", "2-isomorphism of two polynomial tuples");
  iso->add_option("first", file)->required();
  iso->add_option("second", second_file)->required();

  for (auto* sub : {validate, build, pic, stabilizer, rigid, split, classify, canon, check, iso}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    s.command = "usage";
    return emit_error(s, "UsageError", e.what(), "/");
  }

  try {
    if (*validate) return s.command = "validate", cmd_validate(s, file);
    if (*build) return s.command = "build", cmd_build(s, file);
    if (*pic) return s.command = "pic", cmd_pic(s, file);
    if (*stabilizer) return s.command = "stabilizer", cmd_stabilizer(s, file, cone);
    if (*rigid) return s.command = "rigidify", cmd_rigidify(s, file);
    if (*split) return s.command = "split", cmd_split(s, file);
    if (*classify) return s.command = "classify", cmd_classify(s, files);
    if (*canon) return s.command = "canonicalize", cmd_canonicalize(s, file);
    if (*check) return s.command = "morphism check", cmd_morphism_check(s, file);
    if (*iso) return s.command = "morphism iso", cmd_morphism_iso(s, file, second_file);
  } catch (const Error& e) {
    return emit_error(s, std::string(error_code_name(e.code())), e.what(), e.location().empty() ? "/" : e.location());
  }
  return kInvalidInput;
}

}  // namespace toricstack::cli
