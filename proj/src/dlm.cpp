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

#include "sifc/dlm.hpp"

#include <algorithm>
#include <cctype>

#include "sifc/error.hpp"
#include "sifc/order_check.hpp"

namespace sifc {

PrincipalsHierarchy::PrincipalsHierarchy(Key, std::vector<std::string> names)
    : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
}

std::optional<std::size_t> PrincipalsHierarchy::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PrincipalsHierarchy::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorKind::UnknownPrincipal, "unknown principal '" + std::string(name) + "'",
              {std::string(name)});
}

HierarchyPtr build_hierarchy(std::vector<std::string> principals,
                             const std::vector<std::pair<std::string, std::string>>& acts_for) {
  std::set<std::string> seen;
  for (const auto& p : principals) {
    if (!is_valid_class_name(p)) {
      throw Error(ErrorKind::InvalidArgument, "malformed principal name '" + p + "'", {p});
    }
    if (!seen.insert(p).second) {
      throw Error(ErrorKind::InvalidArgument, "principal '" + p + "' declared twice", {p});
    }
  }
  if (!seen.contains(std::string(kTopPrincipal))) principals.emplace_back(kTopPrincipal);
  if (!seen.contains(std::string(kBottomPrincipal))) principals.emplace_back(kBottomPrincipal);

  auto h = std::make_shared<PrincipalsHierarchy>(PrincipalsHierarchy::Key{}, std::move(principals));
  PrincipalsHierarchy& H = *h;
  const std::size_t n = H.size();
  H.top_ = H.index_of(kTopPrincipal);
  H.bottom_ = H.index_of(kBottomPrincipal);
  for (const auto& [p, q] : acts_for) H.declared_.emplace_back(H.index_of(p), H.index_of(q));

  H.closure_.assign(n * n, 0);
  auto rel = [&](std::size_t p, std::size_t q) -> char& { return H.closure_[p * n + q]; };
  for (std::size_t p = 0; p < n; ++p) {
    rel(p, p) = 1;
    rel(H.top_, p) = 1;
    rel(p, H.bottom_) = 1;
  }
  for (const auto& [p, q] : H.declared_) rel(p, q) = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rel(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (rel(k, j)) rel(i, j) = 1;
      }
    }
  }
  // Order view: q <= p whenever p acts for q.
  for (const auto& [p, q] : H.declared_) H.edges_.emplace_back(q, p);
  for (std::size_t p = 0; p < n; ++p) {
    if (p != H.top_) H.edges_.emplace_back(p, H.top_);
    if (p != H.bottom_) H.edges_.emplace_back(H.bottom_, p);
  }
  return h;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto end = s.find(sep, start);
    if (end == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
}

std::string principal_token(std::string_view raw, std::string_view text) {
  auto t = trim(raw);
  if (!is_valid_class_name(t)) {
    throw Error(ErrorKind::ParseError,
                "bad principal '" + std::string(t) + "' in label '" + std::string(text) + "'");
  }
  return std::string(t);
}

}  // namespace

Label parse_label(std::string_view text) {
  auto s = trim(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    throw Error(ErrorKind::ParseError, "label must be written {owner: readers; ...}, got '" +
                                           std::string(text) + "'");
  }
  Label out;
  auto body = s.substr(1, s.size() - 2);
  if (trim(body).empty()) return out;
  for (auto piece : split(body, ';')) {
    if (trim(piece).empty()) continue;
    auto colon = piece.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorKind::ParseError, "policy '" + std::string(trim(piece)) + "' lacks ':'");
    }
    Policy p;
    p.owner = principal_token(piece.substr(0, colon), text);
    auto readers = piece.substr(colon + 1);
    if (!trim(readers).empty()) {
      for (auto r : split(readers, ',')) p.readers.insert(principal_token(r, text));
    }
    out.policies.insert(std::move(p));
  }
  return out;
}

std::string print_label(const Label& label) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : label.policies) {
    if (!first) out += "; ";
    first = false;
    out += p.owner + ":";
    bool first_reader = true;
    for (const auto& r : p.readers) {
      out += first_reader ? " " : ", ";
      first_reader = false;
      out += r;
    }
  }
  return out + "}";
}

void check_label(const PrincipalsHierarchy& h, const Label& label) {
  for (const auto& p : label.policies) {
    h.index_of(p.owner);
    for (const auto& r : p.readers) h.index_of(r);
  }
}

bool policy_leq(const PrincipalsHierarchy& h, const Policy& i, const Policy& j) {
  std::size_t oi = h.index_of(i.owner);
  std::size_t oj = h.index_of(j.owner);
  if (!h.acts_for(oj, oi)) return false;
  std::vector<std::size_t> ri{oi};
  for (const auto& r : i.readers) ri.push_back(h.index_of(r));
  auto covered = [&](std::size_t rj) {
    return std::any_of(ri.begin(), ri.end(), [&](std::size_t x) { return h.acts_for(rj, x); });
  };
  if (!covered(oj)) return false;
  for (const auto& r : j.readers) {
    if (!covered(h.index_of(r))) return false;
  }
  return true;
}

bool label_leq(const PrincipalsHierarchy& h, const Label& a, const Label& b) {
  check_label(h, a);
  check_label(h, b);
  for (const auto& i : a.policies) {
    bool found = std::any_of(b.policies.begin(), b.policies.end(),
                             [&](const Policy& j) { return policy_leq(h, i, j); });
    if (!found) return false;
  }
  return true;
}

bool label_equiv(const PrincipalsHierarchy& h, const Label& a, const Label& b) {
  return label_leq(h, a, b) && label_leq(h, b, a);
}

Label label_join(const Label& a, const Label& b) {
  Label out = a;
  out.policies.insert(b.policies.begin(), b.policies.end());
  return out;
}

PrincipalCheck check_principal_connection(HierarchyPtr left, HierarchyPtr right,
                                          const NameMap& alpha, const NameMap& gamma) {
  auto resolve = [](const PrincipalsHierarchy& src, const PrincipalsHierarchy& dst,
                    const NameMap& raw) {
    for (const auto& [from, to] : raw) src.index_of(from);
    std::vector<std::size_t> table(src.size());
    std::vector<std::string> missing;
    for (std::size_t p = 0; p < src.size(); ++p) {
      auto it = raw.find(src.name(p));
      if (it != raw.end()) {
        table[p] = dst.index_of(it->second);
      } else if (p == src.top()) {
        table[p] = dst.top();
      } else if (p == src.bottom()) {
        table[p] = dst.bottom();
      } else {
        missing.push_back(src.name(p));
      }
    }
    if (!missing.empty()) {
      std::string msg = "principal map leaves principals unmapped:";
      for (const auto& m : missing) msg += " " + m;
      throw Error(ErrorKind::PartialMap, msg, missing);
    }
    return table;
  };
  auto a = resolve(*left, *right, alpha);
  auto g = resolve(*right, *left, gamma);
  auto raw = lagois_violations(*left, *right, std::span<const std::size_t>(a),
                               std::span<const std::size_t>(g));
  PrincipalCheck out;
  out.candidate.emplace(PrincipalConnection(left, right, a, g));
  if (!raw.empty()) {
    for (const auto& v : raw) {
      bool on_left = v.condition == Condition::MonotoneAlpha || v.condition == Condition::LC1 ||
                     v.condition == Condition::LC3;
      const auto& h = on_left ? *left : *right;
      Violation named{v.condition, {}};
      for (auto w : v.witness) named.witness.push_back(h.name(w));
      out.violations.push_back(std::move(named));
    }
    return out;
  }
  out.connection.emplace(PrincipalConnection(std::move(left), std::move(right), std::move(a),
                                             std::move(g)));
  return out;
}

Label lift_label(const PrincipalConnection& pm, Direction dir, const Label& label) {
  bool forward = dir == Direction::LeftToRight;
  const auto& src = forward ? pm.left() : pm.right();
  check_label(src, label);
  auto f = [&](const std::string& p) -> const std::string& {
    return forward ? pm.alpha(p) : pm.gamma(p);
  };
  Label out;
  for (const auto& p : label.policies) {
    Policy q;
    q.owner = f(p.owner);
    for (const auto& r : p.readers) q.readers.insert(f(r));
    out.policies.insert(std::move(q));
  }
  return out;
}

Label random_label(const PrincipalsHierarchy& h, std::mt19937_64& rng) {
  std::geometric_distribution<int> count_dist(1.0 / 3.0);
  std::uniform_int_distribution<std::size_t> pick(0, h.size() - 1);
  std::bernoulli_distribution coin(0.5);
  int count = std::min(count_dist(rng), 4);
  Label out;
  for (int k = 0; k < count; ++k) {
    Policy p;
    p.owner = h.name(pick(rng));
    std::vector<std::string> readers;
    for (const auto& name : h.principals()) {
      if (coin(rng)) readers.push_back(name);
    }
    if (readers.size() > 3) {
      std::shuffle(readers.begin(), readers.end(), rng);
      readers.resize(3);
    }
    p.readers.insert(readers.begin(), readers.end());
    out.policies.insert(std::move(p));
  }
  return out;
}

std::vector<Label> all_labels(const std::vector<std::string>& principals, std::size_t max_readers) {
  std::vector<Policy> policies;
  const std::size_t n = principals.size();
  if (n > 16) throw Error(ErrorKind::InvalidArgument, "too many principals to enumerate labels");
  for (const auto& owner : principals) {
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) > max_readers) continue;
      Policy p{owner, {}};
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (1U << k)) p.readers.insert(principals[k]);
      }
      policies.push_back(std::move(p));
    }
  }
  if (policies.size() > 20) {
    throw Error(ErrorKind::InvalidArgument,
                std::to_string(policies.size()) + " policies is too many to enumerate label sets");
  }
  std::vector<Label> out;
  for (std::uint32_t mask = 0; mask < (1U << policies.size()); ++mask) {
    Label l;
    for (std::size_t k = 0; k < policies.size(); ++k) {
      if (mask & (1U << k)) l.policies.insert(policies[k]);
    }
    out.push_back(std::move(l));
  }
  return out;
}

namespace {

struct LiftedChecker {
  const PrincipalConnection& pm;
  LiftedReport& report;

  void fail(const char* property, std::vector<Label> witness) {
    report.passed = false;
    LiftedFailure f{property, {}};
    for (const auto& w : witness) f.witness.push_back(print_label(w));
    report.failures.push_back(std::move(f));
  }

  // Properties 2 and 3 for one label on the given side.
  void single(Direction dir, const Label& x) {
    bool fwd = dir == Direction::LeftToRight;
    Direction back = fwd ? Direction::RightToLeft : Direction::LeftToRight;
    const auto& home = fwd ? pm.left() : pm.right();
    const auto& away = fwd ? pm.right() : pm.left();
    Label there = lift_label(pm, dir, x);
    Label round = lift_label(pm, back, there);
    report.checks += 2;
    if (!label_leq(home, x, round)) fail(fwd ? "2a" : "2b", {x, round});
    Label again = lift_label(pm, dir, round);
    if (!label_equiv(away, there, again)) fail(fwd ? "3a" : "3b", {x, there, again});
  }

  // Property 1 for an ordered pair; unordered pairs are skipped.
  void pair(Direction dir, const Label& a, const Label& b) {
    bool fwd = dir == Direction::LeftToRight;
    const auto& home = fwd ? pm.left() : pm.right();
    const auto& away = fwd ? pm.right() : pm.left();
    if (!label_leq(home, a, b)) return;
    ++report.checks;
    Label la = lift_label(pm, dir, a);
    Label lb = lift_label(pm, dir, b);
    if (!label_leq(away, la, lb)) fail(fwd ? "1a" : "1b", {a, b, la, lb});
  }
};

// A label above `x`: owners move to principals acting for them, readers are
// dropped or moved up, and another random label may be joined in.
Label raise_label(const PrincipalsHierarchy& h, const Label& x, std::mt19937_64& rng) {
  auto above = [&](const std::string& p) {
    std::size_t pi = h.index_of(p);
    std::vector<std::size_t> c;
    for (std::size_t q = 0; q < h.size(); ++q) {
      if (h.acts_for(q, pi)) c.push_back(q);
    }
    return h.name(c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)]);
  };
  std::bernoulli_distribution keep(0.7);
  std::bernoulli_distribution coin(0.5);
  Label out;
  for (const auto& p : x.policies) {
    Policy q;
    q.owner = above(p.owner);
    for (const auto& r : p.readers) {
      if (keep(rng)) q.readers.insert(above(r));
    }
    out.policies.insert(std::move(q));
  }
  if (coin(rng)) out = label_join(out, random_label(h, rng));
  return out;
}

}  // namespace

LiftedReport check_lifted_connection(const PrincipalConnection& pm, std::size_t samples,
                                     std::uint64_t seed) {
  LiftedReport report;
  LiftedChecker chk{pm, report};
  std::mt19937_64 rng(seed);
  for (Direction dir : {Direction::LeftToRight, Direction::RightToLeft}) {
    const auto& h = dir == Direction::LeftToRight ? pm.left() : pm.right();
    for (std::size_t s = 0; s < samples; ++s) {
      Label a = random_label(h, rng);
      chk.single(dir, a);
      Label b = s % 2 == 0 ? raise_label(h, a, rng) : random_label(h, rng);
      chk.pair(dir, a, b);
    }
  }
  return report;
}

LiftedReport check_lifted_on(const PrincipalConnection& pm, const std::vector<Label>& left,
                             const std::vector<Label>& right) {
  LiftedReport report;
  LiftedChecker chk{pm, report};
  for (Direction dir : {Direction::LeftToRight, Direction::RightToLeft}) {
    const auto& labels = dir == Direction::LeftToRight ? left : right;
    for (const auto& a : labels) {
      chk.single(dir, a);
      for (const auto& b : labels) chk.pair(dir, a, b);
    }
  }
  return report;
}

bool declassify_check(const PrincipalsHierarchy& h, const std::set<std::string>& authority,
                      const Label& l1, const Label& l2) {
  Label la;
  for (const auto& p : authority) {
    h.index_of(p);
    la.policies.insert(Policy{p, {}});
  }
  return label_leq(h, l1, label_join(l2, la));
}

CrossDeclassifyReport cross_declassify_check(const PrincipalConnection& pm, Direction dir,
                                             const std::set<std::string>& authority_left,
                                             const std::set<std::string>& authority_right,
                                             const Label& l1, const Label& l2) {
  std::set<std::string> fwd;
  for (const auto& p : authority_left) fwd.insert(pm.alpha(p));
  std::set<std::string> bwd;
  for (const auto& q : authority_right) bwd.insert(pm.gamma(q));
  if (fwd != authority_right || bwd != authority_left) {
    throw Error(ErrorKind::AuthorityMismatch,
                "authority sets are not mapped onto each other by the principal maps");
  }
  CrossDeclassifyReport out;
  if (dir == Direction::LeftToRight) {
    out.source_side = declassify_check(pm.left(), authority_left, l1,
                                       lift_label(pm, Direction::RightToLeft, l2));
    out.target_side = declassify_check(pm.right(), authority_right,
                                       lift_label(pm, Direction::LeftToRight, l1), l2);
  } else {
    out.source_side = declassify_check(pm.right(), authority_right, l1,
                                       lift_label(pm, Direction::LeftToRight, l2));
    out.target_side = declassify_check(pm.left(), authority_left,
                                       lift_label(pm, Direction::RightToLeft, l1), l2);
  }
  return out;
}

}  // namespace sifc
