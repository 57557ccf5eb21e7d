#include "toricstack/io.hpp"

#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include "toricstack/error.hpp"

namespace toricstack::io {

namespace {

constexpr long kSafeInteger = (1L << 53) - 1;

[[noreturn]] void fail(const std::string& where, const std::string& message) {
  throw Error(ErrorCode::ParseError, (where.empty() ? std::string("/") : where) + ": " + message,
              where.empty() ? "/" : where);
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) fail(where, std::string("missing field '") + name + "'");
  return *it;
}

std::size_t index_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a nonnegative integer index");
  return j.get<std::size_t>();
}

IntegerVector vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of integers");
  IntegerVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer_from_json(j[i], where + "/" + std::to_string(i)));
  return out;
}

}  // namespace

json to_json(const Integer& value) {
  if (abs(value) <= kSafeInteger) return json(value.get_si());
  return json(value.get_str());
}

json to_json(const IntegerVector& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(to_json(v));
  return arr;
}

json to_json(const IntegerMatrix& m) {
  json arr = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) arr.push_back(to_json(m.row(r)));
  return arr;
}

json to_json(const FgAbelianGroup& g) {
  return json{{"free_rank", g.free_rank()},
              {"invariant_factors", to_json(g.invariant_factors())},
              {"order", g.is_finite() ? to_json(g.order()) : json(nullptr)},
              {"description", g.to_string()}};
}

json to_json(const ValidationReport& report) {
  json arr = json::array();
  for (const auto& v : report.violations) {
    json cones = json::array();
    for (const auto& c : v.cones) cones.push_back(c);
    arr.push_back({{"code", v.code}, {"message", v.message}, {"cones", cones}, {"rays", v.rays}});
  }
  return arr;
}

Integer integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    return Integer(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    static const std::regex pattern("-?[0-9]+");
    const auto s = j.get<std::string>();
    if (!std::regex_match(s, pattern)) fail(where, "'" + s + "' is not an integer");
    return Integer(s);
  }
  fail(where, "expected an integer");
}

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(integer_from_json(j, where));
  if (!j.is_string()) fail(where, "expected a rational as \"p/q\"");
  static const std::regex pattern("(-?[0-9]+)(?:/([0-9]+))?");
  const auto s = j.get<std::string>();
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) fail(where, "'" + s + "' is not a rational p/q");
  Integer num(m[1].str());
  Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
  if (den == 0) fail(where, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

StackyData parse_stacky_data(const json& doc, const std::string& where) {
  if (!doc.is_object()) fail(where, "expected a stacky data object");
  if (auto it = doc.find("schema_version"); it != doc.end() && !it->is_string()) {
    fail(where + "/schema_version", "expected a string");
  }
  StackyData data;
  const json& rank = field(doc, "lattice_rank", where);
  data.fan.lattice_rank = index_from_json(rank, where + "/lattice_rank");

  const json& rays = field(doc, "rays", where);
  if (!rays.is_array()) fail(where + "/rays", "expected an array of integer vectors");
  for (std::size_t k = 0; k < rays.size(); ++k)
    data.fan.rays.push_back(vector_from_json(rays[k], where + "/rays/" + std::to_string(k)));

  const json& cones = field(doc, "cones", where);
  if (!cones.is_array()) fail(where + "/cones", "expected an array of ray-index lists");
  for (std::size_t c = 0; c < cones.size(); ++c) {
    const std::string at = where + "/cones/" + std::to_string(c);
    if (!cones[c].is_array()) fail(at, "expected an array of ray indices");
    Cone cone;
    for (std::size_t i = 0; i < cones[c].size(); ++i)
      cone.push_back(index_from_json(cones[c][i], at + "/" + std::to_string(i)));
    const std::size_t before = cone.size();
    cone = normalize_cone(std::move(cone));
    if (cone.size() != before) fail(at, "repeated ray index in cone");
    data.fan.cones.push_back(std::move(cone));
  }
  data.fan = close_under_faces(std::move(data.fan));

  if (auto it = doc.find("r"); it != doc.end()) data.r = vector_from_json(*it, where + "/r");
  const std::size_t n = data.fan.rays.size();
  data.b = IntegerMatrix(0, n);
  if (auto it = doc.find("b"); it != doc.end()) {
    if (!it->is_array()) fail(where + "/b", "expected an array of integer rows");
    std::vector<IntegerVector> rows;
    for (std::size_t i = 0; i < it->size(); ++i)
      rows.push_back(vector_from_json((*it)[i], where + "/b/" + std::to_string(i)));
    if (!rows.empty()) {
      const std::size_t cols = rows.front().size();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != cols) fail(where + "/b/" + std::to_string(i), "rows of b differ in length");
      data.b = IntegerMatrix::from_rows(rows, cols);
    }
  }
  return data;
}

json stacky_data_to_json(const StackyData& data) {
  json rays = json::array();
  for (const auto& a : data.fan.rays) rays.push_back(to_json(a));
  json cones = json::array();
  for (const auto& c : maximal_cones(data.fan)) cones.push_back(c);
  return json{{"schema_version", std::string(kSchemaVersion)},
              {"lattice_rank", data.fan.lattice_rank},
              {"rays", rays},
              {"cones", cones},
              {"r", to_json(data.r)},
              {"b", to_json(data.b)}};
}

MorphismData parse_morphism(const json& doc) {
  MorphismData md;
  md.source = parse_stacky_data(field(doc, "source", ""), "/source");
  md.target = parse_stacky_data(field(doc, "target", ""), "/target");
  const std::size_t vars = md.source.ray_count();

  const json& polys = field(doc, "polynomials", "");
  if (!polys.is_array()) fail("/polynomials", "expected an array of term lists");
  for (std::size_t k = 0; k < polys.size(); ++k) {
    const std::string at = "/polynomials/" + std::to_string(k);
    if (!polys[k].is_array()) fail(at, "expected an array of terms");
    SparsePolynomial p(vars);
    for (std::size_t t = 0; t < polys[k].size(); ++t) {
      const std::string term_at = at + "/" + std::to_string(t);
      const json& term = polys[k][t];
      const Rational c = rational_from_json(field(term, "coefficient", term_at), term_at + "/coefficient");
      const json& exps = field(term, "exponents", term_at);
      if (!exps.is_array() || exps.size() != vars) {
        fail(term_at + "/exponents", "expected " + std::to_string(vars) + " nonnegative exponents");
      }
      Exponent e;
      for (std::size_t v = 0; v < vars; ++v)
        e.push_back(index_from_json(exps[v], term_at + "/exponents/" + std::to_string(v)));
      p.add_term(c, std::move(e));
    }
    md.polys.push_back(std::move(p));
  }

  if (auto it = doc.find("chi"); it != doc.end()) {
    if (!it->is_array()) fail("/chi", "expected an array of class representatives");
    for (std::size_t i = 0; i < it->size(); ++i)
      md.chi.push_back(PicClass{vector_from_json((*it)[i], "/chi/" + std::to_string(i))});
  }
  return md;
}

json morphism_to_json(const MorphismData& md) {
  json polys = json::array();
  for (const auto& p : md.polys) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"coefficient", rational_to_string(c)}, {"exponents", e}});
    polys.push_back(std::move(terms));
  }
  json chi = json::array();
  for (const auto& c : md.chi) chi.push_back(to_json(c.representative));
  return json{{"schema_version", std::string(kSchemaVersion)},
              {"source", stacky_data_to_json(md.source)},
              {"target", stacky_data_to_json(md.target)},
              {"polynomials", polys},
              {"chi", chi}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'", "/");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what(), "/");
  }
}

}  // namespace toricstack::io
