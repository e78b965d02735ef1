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

#ifndef SIFC_LATTICE_HPP_
#define SIFC_LATTICE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sifc {

// Position of a security class inside its lattice; fixed by declaration order.
using ClassIndex = std::size_t;
using ClassPair = std::pair<std::string, std::string>;

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

// Builds a finite bounded lattice from an arbitrary "lower below upper" pair
// set. The pairs need not form a Hasse diagram; the reflexive-transitive
// closure is computed here and redundant pairs are accepted.
//
// Throws Error with kind DuplicateClass, UnknownClass, CycleError (witness: two
// mutually-below classes), NotALattice (witness: the first pair, in declaration
// order, lacking a unique join or meet; tag "join" or "meet") or
// InvalidArgument (empty class list, malformed name).
LatticePtr build_lattice(std::string name, std::vector<std::string> classes,
                         const std::vector<ClassPair>& covers);

bool is_valid_class_name(std::string_view name);

// Immutable once built. Order queries read one bit of the precomputed closure;
// join and meet read one table cell.
class Lattice {
  struct Key {};

 public:
  Lattice(Key, std::string name, std::vector<std::string> classes,
          std::vector<std::pair<ClassIndex, ClassIndex>> covers);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return classes_.size(); }
  const std::vector<std::string>& classes() const noexcept { return classes_; }
  const std::string& class_name(ClassIndex c) const { return classes_.at(c); }

  // Declared pairs, deduplicated, as indices.
  const std::vector<std::pair<ClassIndex, ClassIndex>>& covers() const noexcept {
    return covers_;
  }
  // Transitive reduction of the order.
  std::vector<std::pair<ClassIndex, ClassIndex>> hasse() const;

  std::optional<ClassIndex> find(std::string_view name) const;
  // Throws UnknownClass.
  ClassIndex index_of(std::string_view name) const;

  bool leq(ClassIndex a, ClassIndex b) const noexcept {
    return (up_[a * words_ + (b >> 6)] >> (b & 63)) & 1U;
  }
  bool equivalent(ClassIndex a, ClassIndex b) const noexcept { return a == b; }
  const std::vector<std::pair<ClassIndex, ClassIndex>>& edges() const noexcept { return covers_; }
  bool leq(std::string_view a, std::string_view b) const {
    return leq(index_of(a), index_of(b));
  }
  ClassIndex join(ClassIndex a, ClassIndex b) const noexcept { return join_[a * size() + b]; }
  ClassIndex meet(ClassIndex a, ClassIndex b) const noexcept { return meet_[a * size() + b]; }
  const std::string& join(std::string_view a, std::string_view b) const {
    return class_name(join(index_of(a), index_of(b)));
  }
  const std::string& meet(std::string_view a, std::string_view b) const {
    return class_name(meet(index_of(a), index_of(b)));
  }

  // Folds; the empty join is bottom and the empty meet is top.
  ClassIndex join_all(std::span<const ClassIndex> xs) const noexcept;
  ClassIndex meet_all(std::span<const ClassIndex> xs) const noexcept;

  ClassIndex top() const noexcept { return top_; }
  ClassIndex bottom() const noexcept { return bottom_; }

  // Same class names with the same order between them; index order may differ.
  bool same_structure(const Lattice& other) const;

 private:
  friend LatticePtr build_lattice(std::string, std::vector<std::string>,
                                  const std::vector<ClassPair>&);

  std::string name_;
  std::vector<std::string> classes_;
  std::unordered_map<std::string, ClassIndex> index_;
  std::vector<std::pair<ClassIndex, ClassIndex>> covers_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> up_;    // row a: bit b set iff a <= b
  std::vector<std::uint64_t> down_;  // row a: bit b set iff b <= a
  std::vector<ClassIndex> join_;
  std::vector<ClassIndex> meet_;
  ClassIndex top_ = 0;
  ClassIndex bottom_ = 0;
};

// Sub-lattice induced on `members` (listed in the given order), inheriting the
// ambient order. Throws NotALattice when the induced order is not a lattice.
LatticePtr induced_lattice(const Lattice& ambient, std::string name,
                           std::span<const ClassIndex> members);

}  // namespace sifc

#endif  // SIFC_LATTICE_HPP_
