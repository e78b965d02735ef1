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

#ifndef SIFC_DLM_HPP_
#define SIFC_DLM_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sifc/connection.hpp"

namespace sifc {

class PrincipalsHierarchy;
using HierarchyPtr = std::shared_ptr<const PrincipalsHierarchy>;

inline constexpr std::string_view kTopPrincipal = "TOP";
inline constexpr std::string_view kBottomPrincipal = "BOT";

// Acts-for pre-order. `edges` hold (p, q) meaning p acts for q. TOP and BOT
// are always present; listing them explicitly is allowed. Throws
// InvalidArgument (bad or duplicate name) or UnknownPrincipal.
HierarchyPtr build_hierarchy(std::vector<std::string> principals,
                             const std::vector<std::pair<std::string, std::string>>& acts_for);

class PrincipalsHierarchy {
  struct Key {};

 public:
  PrincipalsHierarchy(Key, std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& principals() const noexcept { return names_; }
  const std::string& name(std::size_t p) const { return names_.at(p); }
  std::optional<std::size_t> find(std::string_view name) const;
  // Throws UnknownPrincipal.
  std::size_t index_of(std::string_view name) const;
  std::size_t top() const noexcept { return top_; }
  std::size_t bottom() const noexcept { return bottom_; }

  bool acts_for(std::size_t p, std::size_t q) const noexcept { return closure_[p * size() + q] != 0; }
  bool acts_for(std::string_view p, std::string_view q) const {
    return acts_for(index_of(p), index_of(q));
  }
  // Declared edges (p, q), p acts for q, without the implicit TOP/BOT ones.
  const std::vector<std::pair<std::size_t, std::size_t>>& declared() const noexcept {
    return declared_;
  }

  // Order view, weakest principal lowest: leq(p, q) iff q acts for p.
  bool leq(std::size_t p, std::size_t q) const noexcept { return acts_for(q, p); }
  bool equivalent(std::size_t p, std::size_t q) const noexcept {
    return acts_for(p, q) && acts_for(q, p);
  }
  // Generating (lower, upper) pairs of the order view, implicit ones included.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

 private:
  friend HierarchyPtr build_hierarchy(std::vector<std::string>,
                                      const std::vector<std::pair<std::string, std::string>>&);

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> declared_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<char> closure_;
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
};

struct Policy {
  std::string owner;
  std::set<std::string> readers;
  auto operator<=>(const Policy&) const = default;
  bool operator==(const Policy&) const = default;
};

struct Label {
  std::set<Policy> policies;
  auto operator<=>(const Label&) const = default;
  bool operator==(const Label&) const = default;
};

// `{o1: r1, r2; o2: r4}`, `{}` and `{o:}`. Throws ParseError.
Label parse_label(std::string_view text);
std::string print_label(const Label& label);

// Throws UnknownPrincipal naming the first principal not in `h`.
void check_label(const PrincipalsHierarchy& h, const Label& label);

bool policy_leq(const PrincipalsHierarchy& h, const Policy& i, const Policy& j);
bool label_leq(const PrincipalsHierarchy& h, const Label& a, const Label& b);
bool label_equiv(const PrincipalsHierarchy& h, const Label& a, const Label& b);
Label label_join(const Label& a, const Label& b);

struct PrincipalCheck;

// A Lagois connection between two acts-for hierarchies. Equality in LC3/LC4
// is taken up to mutual acts-for.
class PrincipalConnection {
 public:
  const PrincipalsHierarchy& left() const noexcept { return *left_; }
  const PrincipalsHierarchy& right() const noexcept { return *right_; }
  const HierarchyPtr& left_ptr() const noexcept { return left_; }
  const HierarchyPtr& right_ptr() const noexcept { return right_; }
  const std::vector<std::size_t>& alpha() const noexcept { return alpha_; }
  const std::vector<std::size_t>& gamma() const noexcept { return gamma_; }
  const std::string& alpha(std::string_view p) const {
    return right_->name(alpha_[left_->index_of(p)]);
  }
  const std::string& gamma(std::string_view q) const {
    return left_->name(gamma_[right_->index_of(q)]);
  }

 private:
  PrincipalConnection(HierarchyPtr l, HierarchyPtr r, std::vector<std::size_t> a,
                      std::vector<std::size_t> g)
      : left_(std::move(l)), right_(std::move(r)), alpha_(std::move(a)), gamma_(std::move(g)) {}
  friend PrincipalCheck check_principal_connection(HierarchyPtr, HierarchyPtr, const NameMap&,
                                                   const NameMap&);

  HierarchyPtr left_;
  HierarchyPtr right_;
  std::vector<std::size_t> alpha_;
  std::vector<std::size_t> gamma_;
};

struct PrincipalCheck {
  std::optional<PrincipalConnection> connection;
  // The resolved maps whether or not they passed; for probing broken pairs.
  std::optional<PrincipalConnection> candidate;
  std::vector<Violation> violations;
  bool ok() const noexcept { return connection.has_value(); }
};

// Maps may omit TOP and BOT; they then go to the other side's TOP and BOT.
// Any other unmapped principal is a PartialMap error.
PrincipalCheck check_principal_connection(HierarchyPtr left, HierarchyPtr right,
                                          const NameMap& alpha, const NameMap& gamma);

enum class Direction { LeftToRight, RightToLeft };

// Maps every owner and reader pointwise; policies that collapse merge.
Label lift_label(const PrincipalConnection& pm, Direction dir, const Label& label);

struct LiftedFailure {
  std::string property;  // "1a" ... "3b"
  std::vector<std::string> witness;  // printed labels
};

struct LiftedReport {
  bool passed = true;
  std::size_t checks = 0;
  std::vector<LiftedFailure> failures;
};

// Draws `samples` labels (and label pairs, half of them ordered by
// construction) per side and checks monotonicity (1a/1b), the increasing
// laws (2a/2b) and the fixed-point equivalences (3a/3b).
LiftedReport check_lifted_connection(const PrincipalConnection& pm, std::size_t samples,
                                     std::uint64_t seed);
// Same properties over explicit label sets, all pairs included.
LiftedReport check_lifted_on(const PrincipalConnection& pm, const std::vector<Label>& left,
                             const std::vector<Label>& right);

// Random label: policy count geometric with mean 2 capped at 4, owner
// uniform, readers a uniform subset cut down to 3.
Label random_label(const PrincipalsHierarchy& h, std::mt19937_64& rng);
// Every label whose owners and readers come from `principals`, each policy
// having at most `max_readers` readers.
std::vector<Label> all_labels(const std::vector<std::string>& principals, std::size_t max_readers);

// L1 may be relabelled to L2 under authority A: L1 <= L2 join {p:} for p in A.
bool declassify_check(const PrincipalsHierarchy& h, const std::set<std::string>& authority,
                      const Label& l1, const Label& l2);

struct CrossDeclassifyReport {
  // LeftToRight: l1 is a left label, l2 a right label.
  //   source_side: l1 declassifies to gamma(l2) on the left under A_L.
  //   target_side: alpha(l1) declassifies to l2 on the right under A_R.
  // RightToLeft swaps the roles.
  bool source_side = false;
  bool target_side = false;
  bool iff_holds() const noexcept { return source_side == target_side; }
};

// Throws AuthorityMismatch unless alpha[A_L] = A_R and gamma[A_R] = A_L.
CrossDeclassifyReport cross_declassify_check(const PrincipalConnection& pm, Direction dir,
                                             const std::set<std::string>& authority_left,
                                             const std::set<std::string>& authority_right,
                                             const Label& l1, const Label& l2);

}  // namespace sifc

#endif  // SIFC_DLM_HPP_
