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

#ifndef SIFC_CONNECTION_HPP_
#define SIFC_CONNECTION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sifc/lattice.hpp"
#include "sifc/order_check.hpp"

namespace sifc {

enum class Side { Left, Right };

// Class-name to class-name map as it appears in input files.
using NameMap = std::map<std::string, std::string>;

// Resolves a name map into an index table over `source`. Throws PartialMap
// (witness: every unmapped source class, in declaration order) or
// UnknownClass.
std::vector<ClassIndex> resolve_table(const Lattice& source, const Lattice& target,
                                      const NameMap& raw);

// Total order-preserving map between two lattices.
class MonotoneMap {
 public:
  // Throws UnknownClass for out-of-range entries, PartialMap for a short
  // table, NotMonotone (witness: a generating pair a <= b whose images are
  // not ordered).
  MonotoneMap(LatticePtr source, LatticePtr target, std::vector<ClassIndex> table);
  static MonotoneMap from_names(LatticePtr source, LatticePtr target, const NameMap& raw);
  static MonotoneMap identity(LatticePtr lattice);

  ClassIndex operator()(ClassIndex c) const { return table_[c]; }
  const std::string& operator()(std::string_view c) const {
    return target_->class_name(table_[source_->index_of(c)]);
  }

  const Lattice& source() const noexcept { return *source_; }
  const Lattice& target() const noexcept { return *target_; }
  const LatticePtr& source_ptr() const noexcept { return source_; }
  const LatticePtr& target_ptr() const noexcept { return target_; }
  const std::vector<ClassIndex>& table() const noexcept { return table_; }

  // Image as sorted target indices.
  std::vector<ClassIndex> image() const;
  // `next` after `this`; the middle lattices must have the same structure.
  MonotoneMap then(const MonotoneMap& next) const;
  // Entries in source declaration order.
  std::vector<std::pair<std::string, std::string>> to_names() const;

  friend bool operator==(const MonotoneMap& a, const MonotoneMap& b);

 private:
  LatticePtr source_;
  LatticePtr target_;
  std::vector<ClassIndex> table_;
};

struct Violation {
  Condition condition;
  std::vector<std::string> witness;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct CheckOutcome;

// A verified increasing Lagois connection (L, alpha, gamma, M) together with
// its budpoint sets and the kernels of both maps. Only check_connection
// creates one.
class LagoisConnection {
 public:
  const Lattice& left() const noexcept { return alpha_.source(); }
  const Lattice& right() const noexcept { return alpha_.target(); }
  const LatticePtr& left_ptr() const noexcept { return alpha_.source_ptr(); }
  const LatticePtr& right_ptr() const noexcept { return alpha_.target_ptr(); }
  const MonotoneMap& alpha() const noexcept { return alpha_; }
  const MonotoneMap& gamma() const noexcept { return gamma_; }
  const Lattice& lattice(Side s) const noexcept { return s == Side::Left ? left() : right(); }

  // Fixed points of gamma.alpha (left) or alpha.gamma (right), ascending.
  const std::vector<ClassIndex>& budpoints(Side s) const noexcept {
    return s == Side::Left ? budpoints_left_ : budpoints_right_;
  }
  bool is_budpoint(Side s, ClassIndex c) const;

  // Kernel of alpha (left) or gamma (right): cell id per class, cells
  // numbered by their first member in declaration order.
  const std::vector<std::size_t>& kernel_cells(Side s) const noexcept {
    return s == Side::Left ? kernel_left_ : kernel_right_;
  }
  std::vector<std::vector<ClassIndex>> kernel(Side s) const;

  // gamma(alpha(c)) on the left, alpha(gamma(c)) on the right.
  ClassIndex representative(Side s, ClassIndex c) const;

  // (M, gamma, alpha, L).
  LagoisConnection transposed() const;

  friend bool operator==(const LagoisConnection& a, const LagoisConnection& b) {
    return a.alpha_ == b.alpha_ && a.gamma_ == b.gamma_;
  }

 private:
  LagoisConnection(MonotoneMap alpha, MonotoneMap gamma);
  friend CheckOutcome check_connection(LatticePtr, LatticePtr, std::vector<ClassIndex>,
                                       std::vector<ClassIndex>);

  MonotoneMap alpha_;
  MonotoneMap gamma_;
  std::vector<ClassIndex> budpoints_left_;
  std::vector<ClassIndex> budpoints_right_;
  std::vector<std::size_t> kernel_left_;
  std::vector<std::size_t> kernel_right_;
};

struct CheckOutcome {
  std::optional<LagoisConnection> connection;
  std::vector<Violation> violations;
  bool ok() const noexcept { return connection.has_value(); }
};

// Verifies monotonicity and LC1-LC4. On failure every violation is reported,
// each with a concrete witness. Throws only for malformed maps (PartialMap,
// UnknownClass).
CheckOutcome check_connection(LatticePtr left, LatticePtr right, const NameMap& alpha,
                              const NameMap& gamma);
CheckOutcome check_connection(LatticePtr left, LatticePtr right, std::vector<ClassIndex> alpha,
                              std::vector<ClassIndex> gamma);

// As check_connection, but throws NotLagois listing the violations.
LagoisConnection require_connection(LatticePtr left, LatticePtr right,
                                    std::vector<ClassIndex> alpha, std::vector<ClassIndex> gamma);

std::vector<Violation> name_violations(const Lattice& left, const Lattice& right,
                                       const std::vector<IndexViolation>& raw);

// Throws UnknownClass.
const std::string& budpoint_representative(const LagoisConnection& conn, Side side,
                                           std::string_view c);

struct TightnessReport {
  bool passed = true;
  std::size_t subsets_checked = 0;
  std::vector<std::string> failures;
};

// Checks that each representative is the meet of the budpoints above it, and
// that budpoint subsets have their ambient meet inside the budpoint set and
// their budpoint-set join at gamma(alpha(ambient join)). Every subset is tried
// when a side has at most 12 budpoints, otherwise `random_subsets` drawn with
// `seed`.
TightnessReport check_tightness(const LagoisConnection& conn, std::uint64_t seed = 0,
                                std::size_t random_subsets = 4096);

// Synthesises the unique Lagois adjoint of `alpha`. Throws AdjointError with
// tag "1", "2" or "3" naming the first failed existence condition and a
// witness class of the target lattice.
MonotoneMap find_adjoint(const MonotoneMap& alpha);

// Builds (L, h.c, h^-1.i, M) from closure operators c on L and i on M and an
// order isomorphism h between their images. Throws NotClosure (tag names the
// failed law: "monotone", "increasing", "idempotent"; witness classes) or
// NotIso (witness pair).
LagoisConnection build_from_closures(LatticePtr left, LatticePtr right,
                                     const std::vector<ClassIndex>& c,
                                     const std::vector<ClassIndex>& i, const NameMap& h);
LagoisConnection build_from_closures(LatticePtr left, LatticePtr right, const NameMap& c,
                                     const NameMap& i, const NameMap& h);

struct CompositionAnalysis {
  // gamma2.alpha2.alpha1[L] within alpha1[L]; witness is the first stray class.
  bool image_condition = false;
  std::optional<std::string> image_witness;
  // alpha1.gamma1.gamma2[Q] within gamma2[Q].
  bool coimage_condition = false;
  std::optional<std::string> coimage_witness;
  // The sufficient test: gamma2[Q] within alpha1[L], or the reverse.
  bool gamma2_image_within_alpha1_image = false;
  bool alpha1_image_within_gamma2_image = false;
  std::vector<ClassIndex> alpha;  // alpha2.alpha1
  std::vector<ClassIndex> gamma;  // gamma1.gamma2
  std::vector<Violation> composite_violations;
  std::optional<LagoisConnection> connection;
  // "image-inclusion" (the sufficient test), "containments" or empty when
  // composition is refused.
  std::string admitted_by;
};

// Throws LatticeMismatch when ab's right lattice differs from bc's left.
CompositionAnalysis analyze_composition(const LagoisConnection& ab, const LagoisConnection& bc);
// Throws ComposeError (tag: "image", "coimage" or "composite"; witness class).
LagoisConnection compose(const LagoisConnection& ab, const LagoisConnection& bc);

struct Decomposition {
  LagoisConnection insertion_left;   // (L, r1, e1, L*)
  MonotoneMap iso_forward;           // i1: L* -> M*
  MonotoneMap iso_backward;          // i2: M* -> L*
  LagoisConnection insertion_right;  // (M*, e2, r2, M)
};

Decomposition decompose(const LagoisConnection& conn);
// Pointwise e2.i1.r1 and e1.i2.r2, as tables over the outer lattices.
std::pair<std::vector<ClassIndex>, std::vector<ClassIndex>> recompose(const Decomposition& d);

// Replaces alpha by a coarser alpha2. Throws CoarsenError tagged
// "NotRefinement" (witness pair), "NoLargestElement" or
// "RepresentativeMismatch" (witness class), or LatticeMismatch.
LagoisConnection coarsen(const LagoisConnection& conn, const MonotoneMap& alpha2);

// Builds (L, alpha1, gamma1.alpha1.gamma1, M) and re-verifies it. Throws
// NotSemiInverse (witness class) when alpha1.gamma1.alpha1 != alpha1. The
// construction secures LC3/LC4 only, so the outcome may carry LC1/LC2
// violations.
CheckOutcome semi_inverse_connection(const MonotoneMap& alpha1, const MonotoneMap& gamma1);

}  // namespace sifc

#endif  // SIFC_CONNECTION_HPP_
