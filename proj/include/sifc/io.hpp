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

// JSON file formats. Every loader throws ParseError for malformed input and
// lets the model's own errors (UnknownClass, CycleError...) through.

#ifndef SIFC_IO_HPP_
#define SIFC_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "sifc/connection.hpp"
#include "sifc/dlm.hpp"
#include "sifc/flowlang.hpp"

namespace sifc {

using Json = nlohmann::ordered_json;

std::string read_text(const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);

// {"name": ..., "classes": [...], "covers": [[lo, hi], ...]}
LatticePtr lattice_from_json(const Json& j);
Json lattice_to_json(const Lattice& lat);
LatticePtr load_lattice(const std::filesystem::path& path);

NameMap name_map_from_json(const Json& j);
Json name_map_to_json(const std::vector<std::pair<std::string, std::string>>& entries);
Json map_to_json(const MonotoneMap& f);
Json table_to_json(const Lattice& source, const Lattice& target, const std::vector<ClassIndex>& t);
Json violation_to_json(const Violation& v);
Json names_to_json(const Lattice& lat, const std::vector<ClassIndex>& xs);

// {"left": <lattice object or path>, "right": ..., "alpha": {...},
// "gamma": {...}}; paths resolve against `base`. `gamma` may be absent.
struct ConnectionSpec {
  LatticePtr left;
  LatticePtr right;
  NameMap alpha;
  std::optional<NameMap> gamma;
};
ConnectionSpec connection_spec_from_json(const Json& j, const std::filesystem::path& base = {});
ConnectionSpec load_connection_spec(const std::filesystem::path& path);
// Loads and verifies; throws NotLagois with the violations otherwise.
LagoisConnection load_connection(const std::filesystem::path& path);
Json connection_to_json(const LagoisConnection& conn);

// {"left": ..., "right": ..., "c": {...}, "i": {...}, "h": {...}}
struct ClosureSpec {
  LatticePtr left;
  LatticePtr right;
  NameMap c;
  NameMap i;
  NameMap h;
};
ClosureSpec load_closure_spec(const std::filesystem::path& path);

// {"left": {"z1": 7, ...}, "right": {...}}
StorePair store_from_json(const Json& j);
Json store_to_json(const StorePair& s);

// {"principals": [...], "acts_for": [[p, q], ...]}
HierarchyPtr hierarchy_from_json(const Json& j);
HierarchyPtr load_hierarchy(const std::filesystem::path& path);
// Same layout as a connection file over hierarchies.
PrincipalCheck load_principal_connection(const std::filesystem::path& path);

}  // namespace sifc

#endif  // SIFC_IO_HPP_
