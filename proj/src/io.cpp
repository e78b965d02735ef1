// Copyright 2026 The sifc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sifc/io.hpp"

#include <fstream>
#include <sstream>

#include "sifc/error.hpp"

namespace sifc {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(as_string(x, what));
  return out;
}

std::vector<std::pair<std::string, std::string>> pair_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) bad(std::string(what) + " entries must be 2-element arrays");
    out.emplace_back(as_string(p[0], what), as_string(p[1], what));
  }
  return out;
}

// An inline object or a path to a JSON file, relative to `base`.
Json inline_or_file(const Json& j, const fs::path& base) {
  if (j.is_string()) return read_json(base / j.get<std::string>());
  if (!j.is_object()) bad("expected an object or a file path");
  return j;
}

}  // namespace

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const fs::path& path) {
  auto text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

LatticePtr lattice_from_json(const Json& j) {
  std::string name = j.contains("name") ? as_string(j.at("name"), "name") : std::string("lattice");
  auto classes = string_list(field(j, "classes"), "classes");
  std::vector<ClassPair> covers;
  if (j.contains("covers")) covers = pair_list(j.at("covers"), "covers");
  return build_lattice(std::move(name), std::move(classes), covers);
}

Json lattice_to_json(const Lattice& lat) {
  Json covers = Json::array();
  for (const auto& [lo, hi] : lat.covers()) covers.push_back({lat.class_name(lo), lat.class_name(hi)});
  return Json{{"name", lat.name()}, {"classes", lat.classes()}, {"covers", covers}};
}

LatticePtr load_lattice(const fs::path& path) { return lattice_from_json(read_json(path)); }

NameMap name_map_from_json(const Json& j) {
  if (!j.is_object()) bad("map must be a JSON object");
  NameMap out;
  for (const auto& [k, v] : j.items()) out.emplace(k, as_string(v, "map value"));
  return out;
}

Json name_map_to_json(const std::vector<std::pair<std::string, std::string>>& entries) {
  Json out = Json::object();
  for (const auto& [k, v] : entries) out[k] = v;
  return out;
}

Json map_to_json(const MonotoneMap& f) { return name_map_to_json(f.to_names()); }

Json table_to_json(const Lattice& source, const Lattice& target, const std::vector<ClassIndex>& t) {
  Json out = Json::object();
  for (ClassIndex c = 0; c < t.size(); ++c) out[source.class_name(c)] = target.class_name(t[c]);
  return out;
}

Json violation_to_json(const Violation& v) {
  return Json{{"condition", std::string(to_string(v.condition))}, {"witness", v.witness}};
}

Json names_to_json(const Lattice& lat, const std::vector<ClassIndex>& xs) {
  Json out = Json::array();
  for (auto x : xs) out.push_back(lat.class_name(x));
  return out;
}

ConnectionSpec connection_spec_from_json(const Json& j, const fs::path& base) {
  ConnectionSpec s;
  s.left = lattice_from_json(inline_or_file(field(j, "left"), base));
  s.right = lattice_from_json(inline_or_file(field(j, "right"), base));
  s.alpha = name_map_from_json(field(j, "alpha"));
  if (j.contains("gamma") && !j.at("gamma").is_null()) s.gamma = name_map_from_json(j.at("gamma"));
  return s;
}

ConnectionSpec load_connection_spec(const fs::path& path) {
  return connection_spec_from_json(read_json(path), path.parent_path());
}

LagoisConnection load_connection(const fs::path& path) {
  auto s = load_connection_spec(path);
  if (!s.gamma) bad(path.string() + ": connection needs a 'gamma' map");
  auto a = resolve_table(*s.left, *s.right, s.alpha);
  auto g = resolve_table(*s.right, *s.left, *s.gamma);
  return require_connection(s.left, s.right, std::move(a), std::move(g));
}

Json connection_to_json(const LagoisConnection& conn) {
  return Json{{"left", lattice_to_json(conn.left())},
              {"right", lattice_to_json(conn.right())},
              {"alpha", map_to_json(conn.alpha())},
              {"gamma", map_to_json(conn.gamma())}};
}

ClosureSpec load_closure_spec(const fs::path& path) {
  Json j = read_json(path);
  fs::path base = path.parent_path();
  ClosureSpec s;
  s.left = lattice_from_json(inline_or_file(field(j, "left"), base));
  s.right = lattice_from_json(inline_or_file(field(j, "right"), base));
  s.c = name_map_from_json(field(j, "c"));
  s.i = name_map_from_json(field(j, "i"));
  s.h = name_map_from_json(field(j, "h"));
  return s;
}

StorePair store_from_json(const Json& j) {
  StorePair s;
  for (auto side : {Side::Left, Side::Right}) {
    const char* key = side == Side::Left ? "left" : "right";
    if (!j.contains(key)) continue;
    const Json& m = j.at(key);
    if (!m.is_object()) bad(std::string("store side '") + key + "' must be an object");
    for (const auto& [k, v] : m.items()) {
      if (!v.is_number_integer()) bad("store value for '" + k + "' must be an integer");
      s.side(side)[k] = v.get<Value>();
    }
  }
  return s;
}

Json store_to_json(const StorePair& s) {
  Json out{{"left", Json::object()}, {"right", Json::object()}};
  for (const auto& [k, v] : s.left) out["left"][k] = v;
  for (const auto& [k, v] : s.right) out["right"][k] = v;
  return out;
}

HierarchyPtr hierarchy_from_json(const Json& j) {
  auto principals = string_list(field(j, "principals"), "principals");
  std::vector<std::pair<std::string, std::string>> edges;
  if (j.contains("acts_for")) edges = pair_list(j.at("acts_for"), "acts_for");
  return build_hierarchy(std::move(principals), edges);
}

HierarchyPtr load_hierarchy(const fs::path& path) { return hierarchy_from_json(read_json(path)); }

PrincipalCheck load_principal_connection(const fs::path& path) {
  Json j = read_json(path);
  fs::path base = path.parent_path();
  auto left = hierarchy_from_json(inline_or_file(field(j, "left"), base));
  auto right = hierarchy_from_json(inline_or_file(field(j, "right"), base));
  return check_principal_connection(left, right, name_map_from_json(field(j, "alpha")),
                                    name_map_from_json(field(j, "gamma")));
}

}  // namespace sifc
