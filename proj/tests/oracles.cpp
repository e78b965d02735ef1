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

#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace oracle {

bool Order::leq(std::size_t a, std::size_t b) const {
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{a};
  seen[a] = 1;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    if (x == b) return true;
    for (auto [lo, hi] : pairs) {
      if (lo == x && !seen[hi]) {
        seen[hi] = 1;
        stack.push_back(hi);
      }
    }
  }
  return false;
}

std::optional<std::size_t> Order::join(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> ub;
  for (std::size_t x = 0; x < n; ++x) {
    if (leq(a, x) && leq(b, x)) ub.push_back(x);
  }
  for (auto u : ub) {
    if (std::all_of(ub.begin(), ub.end(), [&](std::size_t v) { return leq(u, v); })) return u;
  }
  return std::nullopt;
}

std::optional<std::size_t> Order::meet(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> lb;
  for (std::size_t x = 0; x < n; ++x) {
    if (leq(x, a) && leq(x, b)) lb.push_back(x);
  }
  for (auto u : lb) {
    if (std::all_of(lb.begin(), lb.end(), [&](std::size_t v) { return leq(v, u); })) return u;
  }
  return std::nullopt;
}

std::vector<sifc::ClassPair> RawLattice::named_covers() const {
  std::vector<sifc::ClassPair> out;
  for (auto [lo, hi] : covers) out.emplace_back(names[lo], names[hi]);
  return out;
}

namespace {

using Family = std::set<unsigned>;

Family close_under_intersection(Family f) {
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<unsigned> items(f.begin(), f.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        if (f.insert(items[i] & items[j]).second) grew = true;
      }
    }
  }
  return f;
}

RawLattice from_family(const Family& f, std::mt19937_64& rng) {
  std::vector<unsigned> sets(f.begin(), f.end());
  std::shuffle(sets.begin(), sets.end(), rng);
  RawLattice raw;
  for (auto s : sets) raw.names.push_back("s" + std::to_string(s));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i != j && (sets[i] & sets[j]) == sets[i]) raw.covers.emplace_back(i, j);
    }
  }
  return raw;
}

}  // namespace

RawLattice random_lattice(std::mt19937_64& rng, std::size_t max_size, std::size_t ground) {
  const unsigned full = (1U << ground) - 1;
  std::uniform_int_distribution<unsigned> subset(0, full);
  Family f{full};
  int attempts = std::uniform_int_distribution<int>(1, 8)(rng);
  for (int k = 0; k < attempts; ++k) {
    Family g = f;
    g.insert(subset(rng));
    g = close_under_intersection(std::move(g));
    if (g.size() <= max_size) f = std::move(g);
  }
  return from_family(f, rng);
}

RawLattice random_lattice_exact(std::mt19937_64& rng, std::size_t size, std::size_t ground) {
  const unsigned full = (1U << ground) - 1;
  std::uniform_int_distribution<unsigned> subset(0, full);
  for (;;) {
    Family f{full};
    for (int tries = 0; tries < 5000 && f.size() < size; ++tries) {
      Family g = f;
      g.insert(subset(rng));
      g = close_under_intersection(std::move(g));
      if (g.size() <= size) f = std::move(g);
    }
    if (f.size() == size) return from_family(f, rng);
  }
}

sifc::LatticePtr build(const RawLattice& raw, const std::string& name) {
  return sifc::build_lattice(name, raw.names, raw.named_covers());
}

bool monotone(const Order& s, const Order& t, const Table& f) {
  for (std::size_t a = 0; a < s.n; ++a) {
    for (std::size_t b = 0; b < s.n; ++b) {
      if (s.leq(a, b) && !t.leq(f[a], f[b])) return false;
    }
  }
  return true;
}

bool is_lagois(const Order& l, const Order& m, const Table& alpha, const Table& gamma,
               bool up_to_equiv) {
  if (!monotone(l, m, alpha) || !monotone(m, l, gamma)) return false;
  auto same = [&](const Order& o, std::size_t a, std::size_t b) {
    return up_to_equiv ? o.equiv(a, b) : a == b;
  };
  for (std::size_t x = 0; x < l.n; ++x) {
    if (!l.leq(x, gamma[alpha[x]])) return false;
    if (!same(m, alpha[gamma[alpha[x]]], alpha[x])) return false;
  }
  for (std::size_t y = 0; y < m.n; ++y) {
    if (!m.leq(y, alpha[gamma[y]])) return false;
    if (!same(l, gamma[alpha[gamma[y]]], gamma[y])) return false;
  }
  return true;
}

std::vector<Table> all_adjoints(const Order& l, const Order& m, const Table& alpha) {
  std::vector<Table> found;
  Table g(m.n, 0);
  for (;;) {
    if (is_lagois(l, m, alpha, g)) found.push_back(g);
    std::size_t k = 0;
    while (k < m.n && ++g[k] == l.n) g[k++] = 0;
    if (k == m.n) break;
  }
  return found;
}

namespace {

std::size_t bottom_of(const Order& o) {
  for (std::size_t x = 0; x < o.n; ++x) {
    bool below_all = true;
    for (std::size_t y = 0; y < o.n && below_all; ++y) below_all = o.leq(x, y);
    if (below_all) return x;
  }
  return 0;
}

std::size_t top_of(const Order& o) {
  for (std::size_t x = 0; x < o.n; ++x) {
    bool above_all = true;
    for (std::size_t y = 0; y < o.n && above_all; ++y) above_all = o.leq(y, x);
    if (above_all) return x;
  }
  return 0;
}

// Elements sorted so that everything strictly below x comes before x.
std::vector<std::size_t> linear_extension(const Order& o) {
  std::vector<std::size_t> below(o.n, 0);
  for (std::size_t x = 0; x < o.n; ++x) {
    for (std::size_t y = 0; y < o.n; ++y) {
      if (o.leq(y, x)) ++below[x];
    }
  }
  std::vector<std::size_t> order(o.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  return order;
}

}  // namespace

Table random_monotone(const Order& s, const Order& t, std::mt19937_64& rng) {
  Table f(s.n, 0);
  for (auto x : linear_extension(s)) {
    std::size_t lo = bottom_of(t);
    for (std::size_t y = 0; y < s.n; ++y) {
      if (y != x && s.leq(y, x)) lo = *t.join(lo, f[y]);
    }
    std::vector<std::size_t> cands;
    for (std::size_t u = 0; u < t.n; ++u) {
      if (t.leq(lo, u)) cands.push_back(u);
    }
    f[x] = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
  }
  return f;
}

Table random_closure(const Order& l, std::mt19937_64& rng) {
  std::set<std::size_t> keep{top_of(l)};
  std::bernoulli_distribution coin(0.4);
  for (std::size_t x = 0; x < l.n; ++x) {
    if (coin(rng)) keep.insert(x);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::size_t> items(keep.begin(), keep.end());
    for (auto a : items) {
      for (auto b : items) {
        if (keep.insert(*l.meet(a, b)).second) grew = true;
      }
    }
  }
  Table c(l.n, 0);
  for (std::size_t x = 0; x < l.n; ++x) {
    std::vector<std::size_t> above;
    for (auto s : keep) {
      if (l.leq(x, s)) above.push_back(s);
    }
    for (auto s : above) {
      if (std::all_of(above.begin(), above.end(), [&](std::size_t t) { return l.leq(s, t); })) {
        c[x] = s;
        break;
      }
    }
  }
  return c;
}

bool is_closure(const Order& l, const Table& c) {
  if (!monotone(l, l, c)) return false;
  for (std::size_t x = 0; x < l.n; ++x) {
    if (!l.leq(x, c[x]) || c[c[x]] != c[x]) return false;
  }
  return true;
}

std::optional<std::vector<std::pair<std::size_t, std::size_t>>> find_iso(
    const Order& a, const std::vector<std::size_t>& as, const Order& b,
    const std::vector<std::size_t>& bs) {
  if (as.size() != bs.size()) return std::nullopt;
  std::vector<std::size_t> perm(bs.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < as.size() && ok; ++i) {
      for (std::size_t j = 0; j < as.size() && ok; ++j) {
        ok = a.leq(as[i], as[j]) == b.leq(bs[perm[i]], bs[perm[j]]);
      }
    }
    if (ok) {
      std::vector<std::pair<std::size_t, std::size_t>> out;
      for (std::size_t i = 0; i < as.size(); ++i) out.emplace_back(as[i], bs[perm[i]]);
      return out;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::vector<std::size_t> image(const Table& f) {
  std::set<std::size_t> s(f.begin(), f.end());
  return {s.begin(), s.end()};
}

std::vector<std::string> RawHierarchy::names() const {
  auto out = principals;
  out.push_back("TOP");
  out.push_back("BOT");
  return out;
}

std::vector<std::vector<char>> RawHierarchy::matrix() const {
  auto ns = names();
  const std::size_t n = ns.size();
  auto idx = [&](const std::string& s) {
    return static_cast<std::size_t>(std::find(ns.begin(), ns.end(), s) - ns.begin());
  };
  Order o;  // "a acts for b" as a pair (a, b), so leq(a, b) means a acts for b
  o.n = n;
  for (const auto& [p, q] : acts_for) o.pairs.emplace_back(idx(p), idx(q));
  for (std::size_t x = 0; x < n; ++x) {
    o.pairs.emplace_back(n - 2, x);
    o.pairs.emplace_back(x, n - 1);
  }
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m[a][b] = o.leq(a, b);
  }
  return m;
}

RawHierarchy random_hierarchy(std::mt19937_64& rng, std::size_t n, double p, const std::string& prefix) {
  RawHierarchy h;
  for (std::size_t i = 0; i < n; ++i) h.principals.push_back(prefix + std::to_string(i));
  std::bernoulli_distribution edge(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && edge(rng)) h.acts_for.emplace_back(h.principals[i], h.principals[j]);
    }
  }
  return h;
}

namespace {

// Enumerates maps over the first n-2 elements; the last two (TOP, BOT) are
// fixed to the target's last two.
template <class Fn>
void each_map(std::size_t n_src, std::size_t n_dst, Fn fn) {
  Table f(n_src, 0);
  f[n_src - 2] = n_dst - 2;
  f[n_src - 1] = n_dst - 1;
  const std::size_t free = n_src - 2;
  for (;;) {
    fn(f);
    std::size_t k = 0;
    while (k < free && ++f[k] == n_dst) f[k++] = 0;
    if (k == free) break;
  }
}

}  // namespace

std::vector<PrincipalMaps> all_principal_connections(const RawHierarchy& l, const RawHierarchy& r) {
  auto ml = l.matrix();
  auto mr = r.matrix();
  auto nl = l.names();
  auto nr = r.names();
  // Order view: a below b iff b acts for a.
  auto le_l = [&](std::size_t a, std::size_t b) { return ml[b][a] != 0; };
  auto le_r = [&](std::size_t a, std::size_t b) { return mr[b][a] != 0; };
  std::vector<Table> alphas, gammas;
  each_map(nl.size(), nr.size(), [&](const Table& f) {
    for (std::size_t a = 0; a < nl.size(); ++a)
      for (std::size_t b = 0; b < nl.size(); ++b)
        if (le_l(a, b) && !le_r(f[a], f[b])) return;
    alphas.push_back(f);
  });
  each_map(nr.size(), nl.size(), [&](const Table& g) {
    for (std::size_t a = 0; a < nr.size(); ++a)
      for (std::size_t b = 0; b < nr.size(); ++b)
        if (le_r(a, b) && !le_l(g[a], g[b])) return;
    gammas.push_back(g);
  });
  std::vector<PrincipalMaps> out;
  for (const auto& a : alphas) {
    for (const auto& g : gammas) {
      bool ok = true;
      for (std::size_t x = 0; x < nl.size() && ok; ++x) {
        ok = le_l(x, g[a[x]]) && le_r(a[g[a[x]]], a[x]) && le_r(a[x], a[g[a[x]]]);
      }
      for (std::size_t y = 0; y < nr.size() && ok; ++y) {
        ok = le_r(y, a[g[y]]) && le_l(g[a[g[y]]], g[y]) && le_l(g[y], g[a[g[y]]]);
      }
      if (!ok) continue;
      PrincipalMaps pm;
      for (std::size_t x = 0; x < nl.size(); ++x) pm.alpha[nl[x]] = nr[a[x]];
      for (std::size_t y = 0; y < nr.size(); ++y) pm.gamma[nr[y]] = nl[g[y]];
      out.push_back(std::move(pm));
    }
  }
  return out;
}

}  // namespace oracle
