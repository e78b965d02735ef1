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

#ifndef SIFC_SRC_INTERNAL_HPP_
#define SIFC_SRC_INTERNAL_HPP_

#include <span>
#include <string>
#include <vector>

#include "sifc/connection.hpp"

namespace sifc::detail {

// `f` re-expressed over structurally equal lattices. Throws LatticeMismatch.
std::vector<ClassIndex> table_over(const MonotoneMap& f, const Lattice& source,
                                   const Lattice& target);
// Index of each class of `from` inside `to`, matched by name.
std::vector<ClassIndex> translation(const Lattice& from, const Lattice& to);
std::vector<std::string> names_of(const Lattice& lat, std::span<const ClassIndex> xs);

}  // namespace sifc::detail

#endif  // SIFC_SRC_INTERNAL_HPP_
