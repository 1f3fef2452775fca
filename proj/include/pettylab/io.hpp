#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pettylab/body.hpp"
#include "pettylab/error.hpp"

namespace pettylab {

namespace detail {

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

inline double json_number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError("field '" + field + "': expected a number");
  return j.get<double>();
}

inline std::vector<Vec3> json_points(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("field '" + field + "': expected an array of [x, y, z]");
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 3) throw ParseError("field '" + f + "': expected [x, y, z]");
    out.push_back({json_number(j[i][0], f + "[0]"), json_number(j[i][1], f + "[1]"), json_number(j[i][2], f + "[2]")});
  }
  return out;
}

inline void require_fields(const nlohmann::json& j, const std::string& kind, const std::set<std::string>& required,
                           const std::set<std::string>& optional) {
  for (const auto& f : required)
    if (!j.contains(f)) throw ParseError(kind + " body: missing field '" + f + "'");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "kind" && !required.count(it.key()) && !optional.count(it.key()))
      throw ParseError(kind + " body: unexpected field '" + it.key() + "'");
}

}  // namespace detail

/// Body from its JSON document. Structural problems raise ParseError; documents that
/// parse but describe an invalid body raise FlatBodyError or InvalidBodyError.
inline Body body_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("body file: top level must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError("field 'kind': expected a string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "zonotope") {
    detail::require_fields(j, kind, {"generators"}, {});
    GeneratorSet z{detail::json_points(j["generators"], "generators")};
    try {
      require_solid(z, "zonotope body");
    } catch (const InputError& e) {
      throw InvalidBodyError(e.what());
    }
    return z;
  }
  if (kind == "polytope") {
    detail::require_fields(j, kind, {"vertices"}, {"symmetric"});
    const auto pts = detail::json_points(j["vertices"], "vertices");
    if (pts.size() < 4) throw FlatBodyError("polytope body: needs at least 4 vertices");
    Polytope p = convex_hull(pts);
    if (j.contains("symmetric")) {
      if (!j["symmetric"].is_boolean()) throw ParseError("field 'symmetric': expected a boolean");
      if (j["symmetric"].get<bool>() && !p.symmetric)
        throw InvalidBodyError("polytope body: declared symmetric but the vertex set is not closed under negation");
    }
    return p;
  }
  if (kind == "revolution") {
    detail::require_fields(j, kind, {"a", "profile"}, {"dimension"});
    RevolutionBody r;
    if (j.contains("dimension")) {
      if (!j["dimension"].is_number_integer()) throw ParseError("field 'dimension': expected an integer");
      r.d = j["dimension"].get<int>();
    }
    r.a = detail::json_number(j["a"], "a");
    const auto& prof = j["profile"];
    if (!prof.is_array()) throw ParseError("field 'profile': expected an array of [s, f]");
    for (std::size_t i = 0; i < prof.size(); ++i) {
      const std::string f = "profile[" + std::to_string(i) + "]";
      if (!prof[i].is_array() || prof[i].size() != 2) throw ParseError("field '" + f + "': expected [s, f]");
      r.profile.push_back({detail::json_number(prof[i][0], f + "[0]"), detail::json_number(prof[i][1], f + "[1]")});
    }
    try {
      validate(r);
    } catch (const InputError& e) {
      throw InvalidBodyError(e.what());
    }
    return r;
  }
  if (kind == "ball") {
    detail::require_fields(j, kind, {}, {});
    return Ball{};
  }
  throw ParseError("field 'kind': unknown kind '" + kind + "'");
}

/// Parses a body from JSON text; syntax errors report the line.
inline Body parse_body(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
  }
  return body_from_json(j);
}

inline Body load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_body(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline nlohmann::json body_to_json(const Body& b) {
  auto pts = [](const std::vector<Vec3>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : v) a.push_back({p.x, p.y, p.z});
    return a;
  };
  return std::visit(overloaded{[&](const GeneratorSet& z) -> nlohmann::json {
                                 return {{"kind", "zonotope"}, {"generators", pts(z.gens)}};
                               },
                               [&](const Polytope& p) -> nlohmann::json {
                                 return {{"kind", "polytope"}, {"vertices", pts(p.vertices)}, {"symmetric", p.symmetric}};
                               },
                               [&](const RevolutionBody& r) -> nlohmann::json {
                                 nlohmann::json prof = nlohmann::json::array();
                                 for (const auto& n : r.profile) prof.push_back({n.s, n.f});
                                 return {{"kind", "revolution"}, {"dimension", r.d}, {"a", r.a}, {"profile", prof}};
                               },
                               [&](const Ball&) -> nlohmann::json { return {{"kind", "ball"}}; }},
                    b);
}

inline void save_body(const Body& b, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << body_to_json(b).dump(2) << "\n";
}

}  // namespace pettylab
