#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/json_schema.hpp"
#include "toricstack_cli/cli.hpp"

using toricstack::testing::SchemaChecker;
using json = nlohmann::json;

namespace {

const std::filesystem::path kFixtures = TORICSTACK_FIXTURE_DIR;

std::string fx(const std::string& name) { return (kFixtures / name).string(); }

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  json report;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = toricstack::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  if (std::find(args.begin(), args.end(), "--json") != args.end()) r.report = json::parse(r.out);
  return r;
}

Run run_json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  return run(std::move(args));
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return toricstack::cli::sha256_hex(std::string(std::istreambuf_iterator<char>(in), {}));
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(toricstack::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(toricstack::cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("validate") {
  auto ok = run_json({"validate", fx("p32_root.json")});
  CHECK(ok.code == 0);
  CHECK(ok.report["result"]["valid"] == true);
  CHECK(ok.report["input_sha256"][0] == file_hash(fx("p32_root.json")));
  CHECK(ok.report["schema_version"] == "1.0");

  auto zero = run_json({"validate", fx("invalid_r_zero.json")});
  CHECK(zero.code == 1);
  CHECK(zero.report["result"]["violations"][0]["code"] == "NonPositiveOrder");
  CHECK(zero.report["result"]["violations"][0]["message"].get<std::string>().find("positive non zero integers") !=
        std::string::npos);

  auto dep = run_json({"validate", fx("invalid_dependent_cone.json")});
  CHECK(dep.code == 1);
  CHECK(dep.report["result"]["violations"][0]["code"] == "ConeNotSimplicial");
  CHECK(dep.report["result"]["violations"][0]["cones"][0] == json({0, 1, 2}));

  auto malformed = run_json({"validate", fx("malformed.json")});
  CHECK(malformed.code == 1);
  CHECK(malformed.report["error"]["code"] == "ParseError");
  CHECK(malformed.report["error"]["location"] == "/rays/1/0");

  auto missing = run_json({"validate", fx("nope.json")});
  CHECK(missing.code == 1);
  CHECK(missing.report["error"]["code"] == "ParseError");
}

TEST_CASE("build") {
  auto p32 = run_json({"build", fx("p32_root.json")});
  REQUIRE(p32.code == 0);
  const auto& r = p32.report["result"];
  CHECK(r["B"] == json::parse("[[-3,2],[0,1]]"));
  CHECK(r["Q"] == json::parse("[[0],[2]]"));
  CHECK(r["quotient_group"]["torus_rank"] == 1);
  CHECK(r["quotient_group"]["finite_part"]["invariant_factors"] == json::array());
  CHECK(r["generic_stabilizer"]["invariant_factors"] == json({2}));
  CHECK(r["stacky_fan"]["lifted_rays"][0] == json::parse(R"({"lattice":[-3],"torsion":[0]})"));
  CHECK(r["stacky_fan"]["lifted_rays"][1] == json::parse(R"({"lattice":[2],"torsion":[1]})"));

  auto mu3 = run_json({"build", fx("a1_mu3.json")});
  CHECK(mu3.report["result"]["quotient_group"]["finite_part"]["invariant_factors"] == json({3}));

  auto ns = run_json({"build", fx("nonspanning_e1.json")});
  CHECK(ns.code == 0);
  CHECK(ns.report["result"]["spanning"] == false);
  CHECK(ns.report["result"]["split"]["torus_rank"] == 1);
  CHECK(ns.report["result"]["split"]["data"]["rays"] == json::parse("[[1]]"));

  auto bad = run_json({"build", fx("invalid_r_zero.json")});
  CHECK(bad.code == 1);
  CHECK(bad.report["error"]["code"] == "InvalidData");
  CHECK(bad.report["error"]["location"] == "/r");
}

TEST_CASE("stabilizer") {
  CHECK(run_json({"stabilizer", fx("a1_mu3.json"), "--cone", "0"}).report["result"]["group"]["order"] == 3);
  CHECK(run_json({"stabilizer", fx("a1_mu3.json")}).report["result"]["group"]["order"] == 1);
  CHECK(run_json({"stabilizer", fx("p32_root.json"), "--cone", "0"}).report["result"]["group"]["order"] == 6);
  CHECK(run_json({"stabilizer", fx("p32_root.json"), "--cone", "1"}).report["result"]["group"]["order"] == 4);
  CHECK(run_json({"stabilizer", fx("p2.json"), "--cone", "2,0"}).report["result"]["cone"] == json({0, 2}));
  auto missing = run_json({"stabilizer", fx("p32_root.json"), "--cone", "0,1"});
  CHECK(missing.code == 1);
  CHECK(missing.report["error"]["code"] == "ConeNotInFan");
}

TEST_CASE("pic, rigidify, split, canonicalize") {
  auto pic = run_json({"pic", fx("p32_root.json")});
  CHECK(pic.report["result"]["group"]["free_rank"] == 1);
  CHECK(pic.report["result"]["gerbe_classes"][0]["representative"] == json({0, 1}));

  auto rig = run_json({"rigidify", fx("p32_root.json")});
  CHECK(rig.report["result"]["data"]["r"] == json::array());

  auto split = run_json({"split", fx("nonspanning_24.json")});
  CHECK(split.report["result"]["torus_rank"] == 1);
  CHECK(split.report["result"]["saturation_rank"] == 1);
  CHECK(split.report["result"]["data"]["rays"] == json::parse("[[2]]"));

  auto can = run_json({"--verify", "canonicalize", fx("p1_band23.json")});
  CHECK(can.code == 0);
  CHECK(can.report["result"]["chain"] == json({6}));
  for (const auto& v : can.report["verification"]) CHECK(v["agrees"] == true);
}

TEST_CASE("classify") {
  auto same = run_json({"classify", fx("p1_parity_b2.json"), fx("p1_parity_b0.json")});
  CHECK(same.code == 0);
  CHECK(same.report["result"]["isomorphic"] == true);

  auto diff = run_json({"--verify", "classify", fx("p1_parity_b1.json"), fx("p1_parity_b0.json")});
  CHECK(diff.code == 2);
  CHECK(diff.report["result"]["isomorphic"] == false);
  CHECK(diff.report["result"]["comparisons"][0]["divisible"] == json({false}));
  for (const auto& v : diff.report["verification"]) CHECK(v["agrees"] == true);

  auto twice = run_json({"classify", fx("p32_root.json"), fx("p32_root.json")});
  CHECK(twice.code == 0);
  CHECK(twice.report["input_sha256"].size() == 2);

  auto mismatch = run_json({"classify", fx("p1_parity_b0.json"), fx("p32_root.json")});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.report["result"]["comparisons"][0]["error"]["code"] == "MismatchedUnderlyingData");

  auto chain = run_json({"classify", fx("p1_order4.json"), fx("p1_parity_b0.json")});
  CHECK(chain.code == 1);
}

TEST_CASE("classify in parallel matches the serial run") {
  std::vector<std::string> files = {fx("p1_parity_b0.json")};
  for (int i = 0; i < 6; ++i) {
    files.push_back(fx("p1_parity_b1.json"));
    files.push_back(fx("p1_parity_b2.json"));
  }
  auto args = files;
  args.insert(args.begin(), "classify");
  const auto serial = run_json(args);
  args.insert(args.begin(), {"--jobs", "4"});
  const auto parallel = run_json(args);
  CHECK(serial.code == 2);
  CHECK(parallel.code == serial.code);
  CHECK(parallel.report == serial.report);
}

TEST_CASE("morphism commands") {
  auto duple = run_json({"morphism", "check", fx("morphism_duple3.json")});
  CHECK(duple.code == 0);
  CHECK(duple.report["result"]["condition_a"]["holds"] == true);
  CHECK(duple.report["result"]["condition_b"]["verdict"] == "Proven");

  auto dup = run_json({"--verify", "morphism", "check", fx("morphism_duplicated.json")});
  CHECK(dup.code == 2);
  CHECK(dup.report["result"]["condition_b"]["verdict"] == "Refuted");
  CHECK(dup.report["result"]["condition_b"]["witness"]["image_pattern"] == json({0, 1}));
  CHECK(dup.report["verification"][0]["agrees"] == true);

  auto r1 = run_json({"morphism", "check", fx("morphism_r1_target.json")});
  CHECK(r1.report["result"]["condition_a"]["holds"] == true);
  CHECK(r1.report["result"]["condition_a"]["gerbe_rows"] == json({true}));

  auto unknown = run_json({"--sample-budget", "0", "morphism", "check", fx("morphism_p2_to_p1.json")});
  CHECK(unknown.code == 3);
  CHECK(unknown.report["result"]["condition_b"]["verdict"] == "Unknown");

  auto sampled = run_json({"--seed", "7", "--verify", "morphism", "check", fx("morphism_p2_to_p1.json")});
  CHECK(sampled.report["result"]["condition_b"]["verdict"] != "Proven");
  if (sampled.report.contains("verification")) CHECK(sampled.report["verification"][0]["agrees"] == true);

  auto affine = run_json({"morphism", "check", fx("morphism_affine_source.json")});
  CHECK(affine.code == 1);
  CHECK(affine.report["error"]["code"] == "SourceNotComplete");

  auto yes = run_json({"--verify", "morphism", "iso", fx("morphism_signflip.json"), fx("morphism_duple3.json")});
  CHECK(yes.code == 0);
  CHECK(yes.report["result"]["verdict"] == "Yes");
  CHECK(yes.report["result"]["ratios"] == json({"-1", "-1"}));

  auto no = run_json({"morphism", "iso", fx("morphism_scaled.json"), fx("morphism_duple3.json")});
  CHECK(no.code == 2);
  CHECK(no.report["result"]["verdict"] == "No");

  auto mismatch = run_json({"morphism", "iso", fx("morphism_duple3.json"), fx("morphism_r1_target.json")});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.report["error"]["code"] == "MismatchedSourceTarget");
}

TEST_CASE("every JSON report validates against the report schema") {
  SchemaChecker schemas(TORICSTACK_SCHEMA_DIR);
  const std::vector<std::vector<std::string>> commands = {
      {"validate", fx("p32_root.json")},
      {"validate", fx("invalid_dependent_cone.json")},
      {"validate", fx("malformed.json")},
      {"--verify", "build", fx("p32_root.json")},
      {"build", fx("nonspanning_24.json")},
      {"build", fx("large_entries.json")},
      {"pic", fx("p32_root.json")},
      {"--verify", "stabilizer", fx("p32_root.json"), "--cone", "0"},
      {"stabilizer", fx("p32_root.json"), "--cone", "0,1"},
      {"rigidify", fx("p32_root.json")},
      {"split", fx("nonspanning_e1.json")},
      {"--verify", "classify", fx("p1_parity_b1.json"), fx("p1_parity_b0.json"), fx("p32_root.json")},
      {"--verify", "canonicalize", fx("p1_band23.json")},
      {"--verify", "morphism", "check", fx("morphism_duplicated.json")},
      {"morphism", "check", fx("morphism_r1_target.json")},
      {"--verify", "morphism", "iso", fx("morphism_signflip.json"), fx("morphism_duple3.json")},
      {"frobnicate"},
  };
  for (const auto& args : commands) {
    const auto r = run_json(args);
    CAPTURE(r.out);
    const auto errors = schemas.check(r.report, "report.schema.json");
    CHECK(errors.empty());
  }
  json tampered = run_json({"build", fx("p32_root.json")}).report;
  tampered["result"].erase("BQ");
  CHECK_FALSE(schemas.check(tampered, "report.schema.json").empty());
}

TEST_CASE("text output and usage") {
  auto text = run({"build", fx("p32_root.json")});
  CHECK(text.code == 0);
  CHECK(text.out.find("torus_rank: 1") != std::string::npos);

  auto err = run({"stabilizer", fx("p32_root.json"), "--cone", "0,1"});
  CHECK(err.code == 1);
  CHECK(err.err.find("ConeNotInFan") != std::string::npos);

  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("morphism") != std::string::npos);

  CHECK(run({}).code == 1);
  CHECK(run({"stabilizer", fx("p32_root.json"), "--cone", "x"}).code == 1);
}
