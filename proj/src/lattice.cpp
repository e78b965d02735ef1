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

#include "sifc/lattice.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "sifc/error.hpp"

namespace sifc {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::size_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t w = 0; w < words; ++w) n += std::popcount(a[w] & b[w]);
  return n;
}

// Among the classes set in `candidates`, find the one whose `cone` row
// contains every candidate. That element is the least (for up-cones) or
// greatest (for down-cones) member of the set.
std::size_t extremal_member(const std::vector<std::uint64_t>& candidates,
                            const std::vector<std::uint64_t>& cone, std::size_t n,
                            std::size_t words) {
  std::size_t total = 0;
  for (auto w : candidates) total += std::popcount(w);
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = candidates[w];
    while (bits != 0) {
      std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      if (c >= n) break;
      if (popcount_and(&cone[c * words], candidates.data(), words) == total) return c;
    }
  }
  return kNone;
}

}  // namespace

bool is_valid_class_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') ||
           ch == '_' || ch == '(' || ch == ')' || ch == '+' || ch == '-';
  });
}

Lattice::Lattice(Key, std::string name, std::vector<std::string> classes,
                 std::vector<std::pair<ClassIndex, ClassIndex>> covers)
    : name_(std::move(name)), classes_(std::move(classes)), covers_(std::move(covers)) {
  for (ClassIndex i = 0; i < classes_.size(); ++i) index_.emplace(classes_[i], i);
}

LatticePtr build_lattice(std::string name, std::vector<std::string> classes,
                         const std::vector<ClassPair>& covers) {
  if (classes.empty()) {
    throw Error(ErrorKind::InvalidArgument, "lattice '" + name + "' has no classes");
  }
  std::unordered_map<std::string, ClassIndex> index;
  for (ClassIndex i = 0; i < classes.size(); ++i) {
    if (!is_valid_class_name(classes[i])) {
      throw Error(ErrorKind::InvalidArgument, "malformed class name '" + classes[i] + "'",
                  {classes[i]});
    }
    if (!index.emplace(classes[i], i).second) {
      throw Error(ErrorKind::DuplicateClass, "class '" + classes[i] + "' declared twice",
                  {classes[i]});
    }
  }
  auto lookup = [&](const std::string& c) {
    auto it = index.find(c);
    if (it == index.end()) {
      throw Error(ErrorKind::UnknownClass, "cover mentions undeclared class '" + c + "'", {c});
    }
    return it->second;
  };
  std::set<std::pair<ClassIndex, ClassIndex>> seen;
  std::vector<std::pair<ClassIndex, ClassIndex>> pairs;
  for (const auto& [lo, hi] : covers) {
    auto p = std::make_pair(lookup(lo), lookup(hi));
    if (seen.insert(p).second) pairs.push_back(p);
  }

  const std::size_t n = classes.size();
  auto lat = std::make_shared<Lattice>(Lattice::Key{}, std::move(name), std::move(classes),
                                       std::move(pairs));
  Lattice& L = *lat;
  const std::size_t words = (n + 63) / 64;
  L.words_ = words;
  L.up_.assign(n * words, 0);
  auto set_bit = [&](std::vector<std::uint64_t>& rows, std::size_t r, std::size_t c) {
    rows[r * words + (c >> 6)] |= std::uint64_t{1} << (c & 63);
  };
  auto bit = [&](const std::vector<std::uint64_t>& rows, std::size_t r, std::size_t c) {
    return ((rows[r * words + (c >> 6)] >> (c & 63)) & 1U) != 0;
  };
  for (std::size_t i = 0; i < n; ++i) set_bit(L.up_, i, i);
  for (const auto& [lo, hi] : L.covers_) set_bit(L.up_, lo, hi);
  // Warshall over bit rows: if i <= k then everything above k is above i.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k && bit(L.up_, i, k)) {
        for (std::size_t w = 0; w < words; ++w) L.up_[i * words + w] |= L.up_[k * words + w];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (bit(L.up_, i, j) && bit(L.up_, j, i)) {
        throw Error(ErrorKind::CycleError,
                    "classes '" + L.classes_[i] + "' and '" + L.classes_[j] +
                        "' are each below the other",
                    {L.classes_[i], L.classes_[j]});
      }
    }
  }
  L.down_.assign(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (bit(L.up_, i, j)) set_bit(L.down_, j, i);
    }
  }

  L.join_.assign(n * n, 0);
  L.meet_.assign(n * n, 0);
  std::vector<std::uint64_t> common(words);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t w = 0; w < words; ++w) common[w] = L.up_[i * words + w] & L.up_[j * words + w];
      std::size_t lub = extremal_member(common, L.up_, n, words);
      for (std::size_t w = 0; w < words; ++w) {
        common[w] = L.down_[i * words + w] & L.down_[j * words + w];
      }
      std::size_t glb = extremal_member(common, L.down_, n, words);
      if (lub == kNone || glb == kNone) {
        throw Error(ErrorKind::NotALattice,
                    "classes '" + L.classes_[i] + "' and '" + L.classes_[j] + "' have no unique " +
                        (lub == kNone ? "join" : "meet"),
                    {L.classes_[i], L.classes_[j]}, lub == kNone ? "join" : "meet");
      }
      L.join_[i * n + j] = L.join_[j * n + i] = lub;
      L.meet_[i * n + j] = L.meet_[j * n + i] = glb;
    }
  }
  ClassIndex top = 0;
  ClassIndex bottom = 0;
  for (std::size_t i = 1; i < n; ++i) {
    top = L.join_[top * n + i];
    bottom = L.meet_[bottom * n + i];
  }
  L.top_ = top;
  L.bottom_ = bottom;
  return lat;
}

std::vector<std::pair<ClassIndex, ClassIndex>> Lattice::hasse() const {
  std::vector<std::pair<ClassIndex, ClassIndex>> out;
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool covered = true;
      for (std::size_t c = 0; c < n && covered; ++c) {
        if (c != a && c != b && leq(a, c) && leq(c, b)) covered = false;
      }
      if (covered) out.emplace_back(a, b);
    }
  }
  return out;
}

std::optional<ClassIndex> Lattice::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ClassIndex Lattice::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorKind::UnknownClass,
              "class '" + std::string(name) + "' is not in lattice '" + name_ + "'",
              {std::string(name)});
}

ClassIndex Lattice::join_all(std::span<const ClassIndex> xs) const noexcept {
  ClassIndex acc = bottom_;
  for (auto x : xs) acc = join(acc, x);
  return acc;
}

ClassIndex Lattice::meet_all(std::span<const ClassIndex> xs) const noexcept {
  ClassIndex acc = top_;
  for (auto x : xs) acc = meet(acc, x);
  return acc;
}

bool Lattice::same_structure(const Lattice& other) const {
  if (size() != other.size()) return false;
  std::vector<ClassIndex> to_other(size());
  for (ClassIndex i = 0; i < size(); ++i) {
    auto j = other.find(classes_[i]);
    if (!j) return false;
    to_other[i] = *j;
  }
  for (ClassIndex a = 0; a < size(); ++a) {
    for (ClassIndex b = 0; b < size(); ++b) {
      if (leq(a, b) != other.leq(to_other[a], to_other[b])) return false;
    }
  }
  return true;
}

LatticePtr induced_lattice(const Lattice& ambient, std::string name,
                           std::span<const ClassIndex> members) {
  std::vector<std::string> names;
  names.reserve(members.size());
  for (auto m : members) names.push_back(ambient.class_name(m));
  std::vector<ClassPair> pairs;
  for (auto a : members) {
    for (auto b : members) {
      if (a != b && ambient.leq(a, b)) pairs.emplace_back(ambient.class_name(a), ambient.class_name(b));
    }
  }
  return build_lattice(std::move(name), std::move(names), pairs);
}

}  // namespace sifc
