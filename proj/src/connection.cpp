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

#include "sifc/connection.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "sifc/error.hpp"
#include "internal.hpp"

namespace sifc {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::MonotoneAlpha: return "Monotone-alpha";
    case Condition::MonotoneGamma: return "Monotone-gamma";
    case Condition::LC1: return "LC1";
    case Condition::LC2: return "LC2";
    case Condition::LC3: return "LC3";
    case Condition::LC4: return "LC4";
  }
  return "?";
}

std::optional<Condition> condition_from_string(std::string_view s) {
  for (auto c : {Condition::MonotoneAlpha, Condition::MonotoneGamma, Condition::LC1,
                 Condition::LC2, Condition::LC3, Condition::LC4}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::vector<ClassIndex> resolve_table(const Lattice& source, const Lattice& target,
                                      const NameMap& raw) {
  for (const auto& [from, to] : raw) {
    if (!source.find(from)) {
      throw Error(ErrorKind::UnknownClass,
                  "map key '" + from + "' is not in lattice '" + source.name() + "'", {from});
    }
  }
  std::vector<ClassIndex> table(source.size());
  std::vector<std::string> missing;
  for (ClassIndex c = 0; c < source.size(); ++c) {
    auto it = raw.find(source.class_name(c));
    if (it == raw.end()) {
      missing.push_back(source.class_name(c));
      continue;
    }
    table[c] = target.index_of(it->second);
  }
  if (!missing.empty()) {
    std::string msg = "map from '" + source.name() + "' leaves classes unmapped:";
    for (const auto& m : missing) msg += " " + m;
    throw Error(ErrorKind::PartialMap, msg, missing);
  }
  return table;
}

namespace detail {

std::vector<ClassIndex> table_over(const MonotoneMap& f, const Lattice& source,
                                   const Lattice& target) {
  if (&f.source() == &source && &f.target() == &target) return f.table();
  if (!f.source().same_structure(source) || !f.target().same_structure(target)) {
    throw Error(ErrorKind::LatticeMismatch, "map lattices '" + f.source().name() + "' -> '" +
                                                f.target().name() + "' do not match '" +
                                                source.name() + "' -> '" + target.name() + "'");
  }
  std::vector<ClassIndex> out(source.size());
  for (ClassIndex c = 0; c < source.size(); ++c) {
    out[c] = target.index_of(f(source.class_name(c)));
  }
  return out;
}

std::vector<ClassIndex> translation(const Lattice& from, const Lattice& to) {
  std::vector<ClassIndex> out(from.size());
  for (ClassIndex c = 0; c < from.size(); ++c) out[c] = to.index_of(from.class_name(c));
  return out;
}

std::vector<std::string> names_of(const Lattice& lat, std::span<const ClassIndex> xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (auto x : xs) out.push_back(lat.class_name(x));
  return out;
}

}  // namespace detail

MonotoneMap::MonotoneMap(LatticePtr source, LatticePtr target, std::vector<ClassIndex> table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
  if (table_.size() != source_->size()) {
    std::vector<std::string> missing;
    for (ClassIndex c = table_.size(); c < source_->size(); ++c) {
      missing.push_back(source_->class_name(c));
    }
    throw Error(ErrorKind::PartialMap, "map table does not cover '" + source_->name() + "'",
                missing);
  }
  for (auto t : table_) {
    if (t >= target_->size()) {
      throw Error(ErrorKind::UnknownClass,
                  "map target index out of range for '" + target_->name() + "'");
    }
  }
  for (const auto& [lo, hi] : source_->covers()) {
    if (!target_->leq(table_[lo], table_[hi])) {
      throw Error(ErrorKind::NotMonotone,
                  "map '" + source_->name() + "' -> '" + target_->name() + "' reverses " +
                      source_->class_name(lo) + " <= " + source_->class_name(hi),
                  {source_->class_name(lo), source_->class_name(hi)});
    }
  }
}

MonotoneMap MonotoneMap::from_names(LatticePtr source, LatticePtr target, const NameMap& raw) {
  auto table = resolve_table(*source, *target, raw);
  return MonotoneMap(std::move(source), std::move(target), std::move(table));
}

MonotoneMap MonotoneMap::identity(LatticePtr lattice) {
  std::vector<ClassIndex> table(lattice->size());
  for (ClassIndex c = 0; c < table.size(); ++c) table[c] = c;
  return MonotoneMap(lattice, lattice, std::move(table));
}

std::vector<ClassIndex> MonotoneMap::image() const {
  std::vector<ClassIndex> out(table_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MonotoneMap MonotoneMap::then(const MonotoneMap& next) const {
  std::vector<ClassIndex> bridge;
  if (&next.source() == target_.get()) {
    bridge.resize(target_->size());
    for (ClassIndex c = 0; c < bridge.size(); ++c) bridge[c] = c;
  } else {
    if (!target_->same_structure(next.source())) {
      throw Error(ErrorKind::LatticeMismatch, "cannot chain a map into '" + target_->name() +
                                                  "' with a map out of '" +
                                                  next.source().name() + "'");
    }
    bridge = detail::translation(*target_, next.source());
  }
  std::vector<ClassIndex> out(table_.size());
  for (ClassIndex c = 0; c < out.size(); ++c) out[c] = next(bridge[table_[c]]);
  return MonotoneMap(source_, next.target_, std::move(out));
}

std::vector<std::pair<std::string, std::string>> MonotoneMap::to_names() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(table_.size());
  for (ClassIndex c = 0; c < table_.size(); ++c) {
    out.emplace_back(source_->class_name(c), target_->class_name(table_[c]));
  }
  return out;
}

bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
  if (a.source_ == b.source_ && a.target_ == b.target_) return a.table_ == b.table_;
  if (!a.source_->same_structure(*b.source_) || !a.target_->same_structure(*b.target_)) {
    return false;
  }
  for (ClassIndex c = 0; c < a.table_.size(); ++c) {
    if (a(a.source_->class_name(c)) != b(a.source_->class_name(c))) return false;
  }
  return true;
}

namespace {

std::vector<std::size_t> kernel_of(const std::vector<ClassIndex>& table, std::size_t target_size) {
  std::vector<std::size_t> cell_of_value(target_size, static_cast<std::size_t>(-1));
  std::vector<std::size_t> out(table.size());
  std::size_t next = 0;
  for (ClassIndex c = 0; c < table.size(); ++c) {
    auto& slot = cell_of_value[table[c]];
    if (slot == static_cast<std::size_t>(-1)) slot = next++;
    out[c] = slot;
  }
  return out;
}

}  // namespace

LagoisConnection::LagoisConnection(MonotoneMap alpha, MonotoneMap gamma)
    : alpha_(std::move(alpha)), gamma_(std::move(gamma)) {
  for (ClassIndex l = 0; l < left().size(); ++l) {
    if (gamma_(alpha_(l)) == l) budpoints_left_.push_back(l);
  }
  for (ClassIndex m = 0; m < right().size(); ++m) {
    if (alpha_(gamma_(m)) == m) budpoints_right_.push_back(m);
  }
  kernel_left_ = kernel_of(alpha_.table(), right().size());
  kernel_right_ = kernel_of(gamma_.table(), left().size());
}

bool LagoisConnection::is_budpoint(Side s, ClassIndex c) const {
  return representative(s, c) == c;
}

std::vector<std::vector<ClassIndex>> LagoisConnection::kernel(Side s) const {
  const auto& cells = kernel_cells(s);
  std::vector<std::vector<ClassIndex>> out;
  for (ClassIndex c = 0; c < cells.size(); ++c) {
    if (cells[c] >= out.size()) out.resize(cells[c] + 1);
    out[cells[c]].push_back(c);
  }
  return out;
}

ClassIndex LagoisConnection::representative(Side s, ClassIndex c) const {
  return s == Side::Left ? gamma_(alpha_(c)) : alpha_(gamma_(c));
}

LagoisConnection LagoisConnection::transposed() const { return LagoisConnection(gamma_, alpha_); }

std::vector<Violation> name_violations(const Lattice& left, const Lattice& right,
                                       const std::vector<IndexViolation>& raw) {
  std::vector<Violation> out;
  out.reserve(raw.size());
  for (const auto& v : raw) {
    bool on_left = v.condition == Condition::MonotoneAlpha || v.condition == Condition::LC1 ||
                   v.condition == Condition::LC3;
    out.push_back({v.condition, detail::names_of(on_left ? left : right, v.witness)});
  }
  return out;
}

CheckOutcome check_connection(LatticePtr left, LatticePtr right, const NameMap& alpha,
                              const NameMap& gamma) {
  auto a = resolve_table(*left, *right, alpha);
  auto g = resolve_table(*right, *left, gamma);
  return check_connection(std::move(left), std::move(right), std::move(a), std::move(g));
}

CheckOutcome check_connection(LatticePtr left, LatticePtr right, std::vector<ClassIndex> alpha,
                              std::vector<ClassIndex> gamma) {
  if (alpha.size() != left->size() || gamma.size() != right->size()) {
    throw Error(ErrorKind::PartialMap, "map tables do not cover both lattices");
  }
  for (auto x : alpha) {
    if (x >= right->size()) throw Error(ErrorKind::UnknownClass, "alpha target out of range");
  }
  for (auto x : gamma) {
    if (x >= left->size()) throw Error(ErrorKind::UnknownClass, "gamma target out of range");
  }
  auto raw = lagois_violations(*left, *right, std::span<const std::size_t>(alpha),
                               std::span<const std::size_t>(gamma));
  CheckOutcome out;
  if (!raw.empty()) {
    out.violations = name_violations(*left, *right, raw);
    return out;
  }
  MonotoneMap a(left, right, std::move(alpha));
  MonotoneMap g(right, left, std::move(gamma));
  out.connection.emplace(LagoisConnection(std::move(a), std::move(g)));
  return out;
}

LagoisConnection require_connection(LatticePtr left, LatticePtr right,
                                    std::vector<ClassIndex> alpha, std::vector<ClassIndex> gamma) {
  auto outcome = check_connection(left, right, std::move(alpha), std::move(gamma));
  if (outcome.ok()) return std::move(*outcome.connection);
  std::string msg = "maps between '" + left->name() + "' and '" + right->name() +
                    "' are not a Lagois connection:";
  std::vector<std::string> witness;
  for (const auto& v : outcome.violations) {
    msg += " " + std::string(to_string(v.condition));
    for (const auto& w : v.witness) {
      msg += "@" + w;
      witness.push_back(w);
    }
  }
  throw Error(ErrorKind::NotLagois, msg, witness,
              std::string(to_string(outcome.violations.front().condition)));
}

const std::string& budpoint_representative(const LagoisConnection& conn, Side side,
                                           std::string_view c) {
  const auto& lat = conn.lattice(side);
  return lat.class_name(conn.representative(side, lat.index_of(c)));
}

namespace {

void tightness_side(const LagoisConnection& conn, Side side, std::mt19937_64& rng,
                    std::size_t random_subsets, TightnessReport& report) {
  const Lattice& lat = conn.lattice(side);
  const auto& buds = conn.budpoints(side);
  const char* tag = side == Side::Left ? "left" : "right";
  auto fail = [&](std::string what) {
    report.passed = false;
    report.failures.push_back(std::string(tag) + ": " + what);
  };
  std::vector<bool> is_bud(lat.size(), false);
  for (auto b : buds) is_bud[b] = true;

  // The representative is the least budpoint above each class.
  std::vector<ClassIndex> above;
  for (ClassIndex c = 0; c < lat.size(); ++c) {
    above.clear();
    for (auto b : buds) {
      if (lat.leq(c, b)) above.push_back(b);
    }
    ClassIndex least = lat.meet_all(above);
    if (conn.representative(side, c) != least) {
      fail("representative of " + lat.class_name(c) + " is " +
           lat.class_name(conn.representative(side, c)) + " but the meet of budpoints above it is " +
           lat.class_name(least));
    }
  }

  auto check_subset = [&](const std::vector<ClassIndex>& subset) {
    ++report.subsets_checked;
    ClassIndex m = lat.meet_all(subset);
    if (!is_bud[m]) fail("meet " + lat.class_name(m) + " of a budpoint subset is not a budpoint");
    ClassIndex j = lat.join_all(subset);
    // Least budpoint bounding the subset, found without the maps.
    std::vector<ClassIndex> bounds;
    for (auto b : buds) {
      if (lat.leq(j, b)) bounds.push_back(b);
    }
    ClassIndex least_bound = lat.meet_all(bounds);
    if (!is_bud[least_bound] || conn.representative(side, j) != least_bound) {
      fail("budpoint join above " + lat.class_name(j) + " is " + lat.class_name(least_bound) +
           " but the representative is " + lat.class_name(conn.representative(side, j)));
    }
  };

  std::vector<ClassIndex> subset;
  if (buds.size() <= 12) {
    for (std::uint32_t mask = 1; mask < (1U << buds.size()); ++mask) {
      subset.clear();
      for (std::size_t k = 0; k < buds.size(); ++k) {
        if (mask & (1U << k)) subset.push_back(buds[k]);
      }
      check_subset(subset);
    }
  } else {
    std::bernoulli_distribution coin(0.5);
    for (std::size_t t = 0; t < random_subsets; ++t) {
      subset.clear();
      for (auto b : buds) {
        if (coin(rng)) subset.push_back(b);
      }
      if (!subset.empty()) check_subset(subset);
    }
  }
}

}  // namespace

TightnessReport check_tightness(const LagoisConnection& conn, std::uint64_t seed,
                                std::size_t random_subsets) {
  TightnessReport report;
  std::mt19937_64 rng(seed);
  tightness_side(conn, Side::Left, rng, random_subsets, report);
  tightness_side(conn, Side::Right, rng, random_subsets, report);
  return report;
}

MonotoneMap find_adjoint(const MonotoneMap& alpha) {
  const Lattice& L = alpha.source();
  const Lattice& M = alpha.target();
  std::vector<std::vector<ClassIndex>> preimage(M.size());
  for (ClassIndex l = 0; l < L.size(); ++l) preimage[alpha(l)].push_back(l);
  auto image = alpha.image();
  std::vector<bool> in_image(M.size(), false);
  for (auto m : image) in_image[m] = true;
  auto fail = [&](const char* cond, std::string msg, std::vector<std::string> witness) {
    throw Error(ErrorKind::AdjointError, "no Lagois adjoint: " + msg, std::move(witness), cond);
  };

  // (1) every nonempty preimage has a largest member.
  std::vector<ClassIndex> largest(M.size(), 0);
  for (auto m : image) {
    ClassIndex top = L.join_all(preimage[m]);
    if (alpha(top) != m) {
      fail("1", "the preimage of " + M.class_name(m) + " has no largest member",
           {M.class_name(m)});
    }
    largest[m] = top;
  }

  // (2) every up-set meets the image in a smallest member.
  std::vector<ClassIndex> least_above(M.size(), 0);
  std::vector<ClassIndex> up;
  for (ClassIndex m = 0; m < M.size(); ++m) {
    up.clear();
    for (auto x : image) {
      if (M.leq(m, x)) up.push_back(x);
    }
    ClassIndex least = M.meet_all(up);
    if (!in_image[least] || !M.leq(m, least)) {
      fail("2", "no smallest image class lies above " + M.class_name(m), {M.class_name(m)});
    }
    least_above[m] = least;
  }

  // (3) alpha reflects order between the largest preimage members.
  for (auto a : image) {
    for (auto b : image) {
      if (M.leq(a, b) && !L.leq(largest[a], largest[b])) {
        fail("3",
             "image classes " + M.class_name(a) + " <= " + M.class_name(b) +
                 " but their largest preimages are unordered",
             {M.class_name(a), M.class_name(b)});
      }
    }
  }

  std::vector<ClassIndex> gamma(M.size());
  for (ClassIndex m = 0; m < M.size(); ++m) gamma[m] = largest[least_above[m]];
  return MonotoneMap(alpha.target_ptr(), alpha.source_ptr(), std::move(gamma));
}

}  // namespace sifc
