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

#ifndef SIFC_ORDER_CHECK_HPP_
#define SIFC_ORDER_CHECK_HPP_

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace sifc {

// The six conditions an increasing Lagois connection must meet.
enum class Condition { MonotoneAlpha, MonotoneGamma, LC1, LC2, LC3, LC4 };

std::string_view to_string(Condition c);
std::optional<Condition> condition_from_string(std::string_view s);

// A finite preorder seen through indices. `edges` generates the order (its
// reflexive-transitive closure is `leq`); `equivalent` is mutual `leq`.
template <class T>
concept FiniteOrder = requires(const T& o, std::size_t i) {
  { o.size() } -> std::convertible_to<std::size_t>;
  { o.leq(i, i) } -> std::convertible_to<bool>;
  { o.equivalent(i, i) } -> std::convertible_to<bool>;
  o.edges();
};

struct IndexViolation {
  Condition condition;
  // Monotonicity: the offending generating pair. LC1/LC3: one left index.
  // LC2/LC4: one right index.
  std::vector<std::size_t> witness;
};

// Evaluates monotonicity of both maps and LC1-LC4, collecting every failure.
// Monotonicity is checked on generating edges only, so the whole check is
// linear in the number of classes plus edges once `leq` is O(1).
template <FiniteOrder Left, FiniteOrder Right>
std::vector<IndexViolation> lagois_violations(const Left& left, const Right& right,
                                              std::span<const std::size_t> alpha,
                                              std::span<const std::size_t> gamma) {
  std::vector<IndexViolation> out;
  for (const auto& [lo, hi] : left.edges()) {
    if (!right.leq(alpha[lo], alpha[hi])) out.push_back({Condition::MonotoneAlpha, {lo, hi}});
  }
  for (const auto& [lo, hi] : right.edges()) {
    if (!left.leq(gamma[lo], gamma[hi])) out.push_back({Condition::MonotoneGamma, {lo, hi}});
  }
  for (std::size_t l = 0; l < left.size(); ++l) {
    if (!left.leq(l, gamma[alpha[l]])) out.push_back({Condition::LC1, {l}});
  }
  for (std::size_t m = 0; m < right.size(); ++m) {
    if (!right.leq(m, alpha[gamma[m]])) out.push_back({Condition::LC2, {m}});
  }
  for (std::size_t l = 0; l < left.size(); ++l) {
    if (!right.equivalent(alpha[gamma[alpha[l]]], alpha[l])) out.push_back({Condition::LC3, {l}});
  }
  for (std::size_t m = 0; m < right.size(); ++m) {
    if (!left.equivalent(gamma[alpha[gamma[m]]], gamma[m])) out.push_back({Condition::LC4, {m}});
  }
  return out;
}

}  // namespace sifc

#endif  // SIFC_ORDER_CHECK_HPP_
