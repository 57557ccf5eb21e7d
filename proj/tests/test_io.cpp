#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "support/fixtures.hpp"
#include "support/json_schema.hpp"
#include "support/normal_form.hpp"
#include "toricstack/io.hpp"

using namespace toricstack;
using namespace toricstack::testing;
using io::json;

namespace {

const std::filesystem::path kFixtures = TORICSTACK_FIXTURE_DIR;

json load(const std::string& name) { return io::load_json_file((kFixtures / name).string()); }

std::vector<std::string> fixture_names(const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
    const auto name = entry.path().filename().string();
    if (name.rfind(prefix, 0) == 0) out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_morphism(const std::string& name) { return name.rfind("morphism_", 0) == 0; }

}  // namespace

TEST_CASE("integers beyond 53 bits are strings") {
  CHECK(io::to_json(Integer(5)) == json(5));
  CHECK(io::to_json(Integer("9007199254740991")) == json(9007199254740991LL));
  CHECK(io::to_json(Integer("9007199254740992")) == json("9007199254740992"));
  CHECK(io::to_json(Integer("-123456789012345678901234567890")) == json("-123456789012345678901234567890"));
  CHECK(io::integer_from_json(json("-123456789012345678901234567890"), "") ==
        Integer("-123456789012345678901234567890"));
  CHECK_THROWS_AS(io::integer_from_json(json("12a"), "/x"), Error);
  CHECK_THROWS_AS(io::integer_from_json(json(1.5), "/x"), Error);
}

TEST_CASE("rationals") {
  CHECK(io::rational_from_json(json("2/4"), "") == Rational(1, 2));
  CHECK(io::rational_from_json(json("-3"), "") == Rational(-3));
  CHECK(io::rational_from_json(json(7), "") == Rational(7));
  CHECK(io::rational_to_string(Rational(-1, 2)) == "-1/2");
  CHECK_THROWS_AS(io::rational_from_json(json("1/0"), ""), Error);
  CHECK_THROWS_AS(io::rational_from_json(json("x"), ""), Error);
}

TEST_CASE("parse errors carry a JSON pointer") {
  try {
    io::parse_stacky_data(load("malformed.json"));
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.location() == "/rays/1/0");
  }
  try {
    io::parse_stacky_data(json{{"lattice_rank", 1}, {"rays", json::array()}});
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.location() == "/");
  }
  json bad_term = load("morphism_duple3.json");
  bad_term["polynomials"][1][0]["exponents"] = {1};
  try {
    io::parse_morphism(bad_term);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.location() == "/polynomials/1/0/exponents");
  }
  CHECK_THROWS_AS(io::load_json_file((kFixtures / "does_not_exist.json").string()), Error);
}

TEST_CASE("loader closes cones under faces") {
  const auto data = io::parse_stacky_data(load("p2.json"));
  CHECK(data.fan == projective_space_fan(2));
  CHECK(validate_data(data).ok());
}

TEST_CASE("fixture documents round-trip") {
  SchemaChecker schemas(TORICSTACK_SCHEMA_DIR);
  std::size_t stacky = 0, morphisms = 0;
  for (const auto& name : fixture_names("")) {
    CAPTURE(name);
    const json doc = load(name);
    if (name == "malformed.json") {
      CHECK_FALSE(schemas.check(doc, "stacky_data.schema.json").empty());
      continue;
    }
    if (is_morphism(name)) {
      CHECK(schemas.check(doc, "morphism.schema.json").empty());
      const auto md = io::parse_morphism(doc);
      const json out = io::morphism_to_json(md);
      CHECK(schemas.check(out, "morphism.schema.json").empty());
      CHECK(morphism_normal_form(out) == morphism_normal_form(doc));
      const auto again = io::parse_morphism(out);
      CHECK(again.source == md.source);
      CHECK(again.target == md.target);
      CHECK(again.polys == md.polys);
      ++morphisms;
    } else {
      CHECK(schemas.check(doc, "stacky_data.schema.json").empty());
      const auto data = io::parse_stacky_data(doc);
      const json out = io::stacky_data_to_json(data);
      CHECK(schemas.check(out, "stacky_data.schema.json").empty());
      CHECK(normal_form(out) == normal_form(doc));
      CHECK(io::parse_stacky_data(out) == data);
      ++stacky;
    }
  }
  CHECK(stacky >= 10);
  CHECK(morphisms >= 5);
}

TEST_CASE("random data round-trips") {
  std::mt19937_64 rng(55);
  for (int iter = 0; iter < 40; ++iter) {
    const auto data = random_spanning_data(rng, 3, 5, 5, 2, 4);
    const json out = io::stacky_data_to_json(data);
    CHECK(io::parse_stacky_data(json::parse(out.dump())) == data);
  }
}

TEST_CASE("schema checker rejects malformed documents") {
  SchemaChecker schemas(TORICSTACK_SCHEMA_DIR);
  json doc = load("p32_root.json");
  CHECK(schemas.check(doc, "stacky_data.schema.json").empty());
  json extra = doc;
  extra["colour"] = "blue";
  CHECK_FALSE(schemas.check(extra, "stacky_data.schema.json").empty());
  json missing = doc;
  missing.erase("rays");
  CHECK_FALSE(schemas.check(missing, "stacky_data.schema.json").empty());
  json wrong = doc;
  wrong["r"] = {"2.5"};
  CHECK_FALSE(schemas.check(wrong, "stacky_data.schema.json").empty());
}
