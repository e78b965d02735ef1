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

// Constructions that produce new connections from closures, from other
// connections, or from edited maps.

#include <algorithm>

#include "internal.hpp"
#include "sifc/connection.hpp"
#include "sifc/error.hpp"

namespace sifc {

namespace {

void require_closure(const Lattice& lat, const std::vector<ClassIndex>& f, const char* which) {
  if (f.size() != lat.size()) {
    throw Error(ErrorKind::PartialMap,
                std::string("closure ") + which + " does not cover '" + lat.name() + "'");
  }
  for (auto x : f) {
    if (x >= lat.size()) {
      throw Error(ErrorKind::UnknownClass, std::string("closure ") + which + " leaves its lattice");
    }
  }
  auto bad = [&](const char* law, std::vector<std::string> witness) {
    std::string msg = std::string("closure ") + which + " on '" + lat.name() + "' is not " + law +
                      " at";
    for (const auto& w : witness) msg += " " + w;
    throw Error(ErrorKind::NotClosure, msg, std::move(witness), law);
  };
  for (const auto& [lo, hi] : lat.covers()) {
    if (!lat.leq(f[lo], f[hi])) bad("monotone", {lat.class_name(lo), lat.class_name(hi)});
  }
  for (ClassIndex c = 0; c < lat.size(); ++c) {
    if (!lat.leq(c, f[c])) bad("increasing", {lat.class_name(c)});
  }
  for (ClassIndex c = 0; c < lat.size(); ++c) {
    if (f[f[c]] != f[c]) bad("idempotent", {lat.class_name(c)});
  }
}

std::vector<ClassIndex> image_of(const std::vector<ClassIndex>& f) {
  std::vector<ClassIndex> out(f);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

LagoisConnection build_from_closures(LatticePtr left, LatticePtr right,
                                     const std::vector<ClassIndex>& c,
                                     const std::vector<ClassIndex>& i, const NameMap& h) {
  require_closure(*left, c, "c");
  require_closure(*right, i, "i");
  const Lattice& L = *left;
  const Lattice& M = *right;
  auto c_image = image_of(c);
  auto i_image = image_of(i);

  constexpr auto kUnset = static_cast<ClassIndex>(-1);
  std::vector<ClassIndex> forward(L.size(), kUnset);
  std::vector<ClassIndex> backward(M.size(), kUnset);
  for (const auto& [from, to] : h) {
    ClassIndex a = L.index_of(from);
    ClassIndex b = M.index_of(to);
    if (c[a] != a) {
      throw Error(ErrorKind::NotIso, "iso source " + from + " is not a closed class of c", {from, to});
    }
    if (i[b] != b) {
      throw Error(ErrorKind::NotIso, "iso target " + to + " is not a closed class of i", {from, to});
    }
    if (backward[b] != kUnset) {
      throw Error(ErrorKind::NotIso, "iso sends two classes to " + to,
                  {L.class_name(backward[b]), from});
    }
    forward[a] = b;
    backward[b] = a;
  }
  for (auto a : c_image) {
    if (forward[a] == kUnset) {
      throw Error(ErrorKind::NotIso, "iso leaves closed class " + L.class_name(a) + " unmapped",
                  {L.class_name(a)});
    }
  }
  for (auto b : i_image) {
    if (backward[b] == kUnset) {
      throw Error(ErrorKind::NotIso, "closed class " + M.class_name(b) + " is not hit by the iso",
                  {M.class_name(b)});
    }
  }
  for (auto a : c_image) {
    for (auto b : c_image) {
      if (L.leq(a, b) != M.leq(forward[a], forward[b])) {
        throw Error(ErrorKind::NotIso,
                    "iso does not preserve and reflect order between " + L.class_name(a) +
                        " and " + L.class_name(b),
                    {L.class_name(a), L.class_name(b)});
      }
    }
  }
  std::vector<ClassIndex> alpha(L.size());
  std::vector<ClassIndex> gamma(M.size());
  for (ClassIndex l = 0; l < L.size(); ++l) alpha[l] = forward[c[l]];
  for (ClassIndex m = 0; m < M.size(); ++m) gamma[m] = backward[i[m]];
  return require_connection(std::move(left), std::move(right), std::move(alpha), std::move(gamma));
}

LagoisConnection build_from_closures(LatticePtr left, LatticePtr right, const NameMap& c,
                                     const NameMap& i, const NameMap& h) {
  auto ct = resolve_table(*left, *left, c);
  auto it = resolve_table(*right, *right, i);
  return build_from_closures(std::move(left), std::move(right), ct, it, h);
}

CompositionAnalysis analyze_composition(const LagoisConnection& ab, const LagoisConnection& bc) {
  const Lattice& L = ab.left();
  const Lattice& M1 = ab.right();
  const Lattice& M2 = bc.left();
  const Lattice& Q = bc.right();
  if (&M1 != &M2 && !M1.same_structure(M2)) {
    throw Error(ErrorKind::LatticeMismatch, "cannot compose through '" + M1.name() + "' and '" +
                                                M2.name() + "': lattices differ");
  }
  auto to2 = detail::translation(M1, M2);
  auto to1 = detail::translation(M2, M1);

  CompositionAnalysis out;
  std::vector<bool> in_alpha1(M1.size(), false);
  for (ClassIndex l = 0; l < L.size(); ++l) in_alpha1[ab.alpha()(l)] = true;
  std::vector<bool> in_gamma2(M1.size(), false);  // over M1 indices
  for (ClassIndex q = 0; q < Q.size(); ++q) in_gamma2[to1[bc.gamma()(q)]] = true;

  out.image_condition = true;
  for (ClassIndex l = 0; l < L.size() && out.image_condition; ++l) {
    ClassIndex m = to1[bc.gamma()(bc.alpha()(to2[ab.alpha()(l)]))];
    if (!in_alpha1[m]) {
      out.image_condition = false;
      out.image_witness = M1.class_name(m);
    }
  }
  out.coimage_condition = true;
  for (ClassIndex q = 0; q < Q.size() && out.coimage_condition; ++q) {
    ClassIndex m = ab.alpha()(ab.gamma()(to1[bc.gamma()(q)]));
    if (!in_gamma2[m]) {
      out.coimage_condition = false;
      out.coimage_witness = M1.class_name(m);
    }
  }
  out.gamma2_image_within_alpha1_image = true;
  out.alpha1_image_within_gamma2_image = true;
  for (ClassIndex m = 0; m < M1.size(); ++m) {
    if (in_gamma2[m] && !in_alpha1[m]) out.gamma2_image_within_alpha1_image = false;
    if (in_alpha1[m] && !in_gamma2[m]) out.alpha1_image_within_gamma2_image = false;
  }

  out.alpha.resize(L.size());
  out.gamma.resize(Q.size());
  for (ClassIndex l = 0; l < L.size(); ++l) out.alpha[l] = bc.alpha()(to2[ab.alpha()(l)]);
  for (ClassIndex q = 0; q < Q.size(); ++q) out.gamma[q] = ab.gamma()(to1[bc.gamma()(q)]);

  auto outcome = check_connection(ab.left_ptr(), bc.right_ptr(), out.alpha, out.gamma);
  out.composite_violations = std::move(outcome.violations);
  bool sufficient = out.gamma2_image_within_alpha1_image || out.alpha1_image_within_gamma2_image;
  if (outcome.ok() && (sufficient || (out.image_condition && out.coimage_condition))) {
    out.admitted_by = sufficient ? "image-inclusion" : "containments";
    out.connection = std::move(outcome.connection);
  }
  return out;
}

LagoisConnection compose(const LagoisConnection& ab, const LagoisConnection& bc) {
  auto a = analyze_composition(ab, bc);
  if (a.connection) return std::move(*a.connection);
  if (!a.image_condition) {
    throw Error(ErrorKind::ComposeError,
                "composite image leaves alpha1's image at " + *a.image_witness,
                {*a.image_witness}, "image");
  }
  if (!a.coimage_condition) {
    throw Error(ErrorKind::ComposeError,
                "composite coimage leaves gamma2's image at " + *a.coimage_witness,
                {*a.coimage_witness}, "coimage");
  }
  const auto& v = a.composite_violations.front();
  throw Error(ErrorKind::ComposeError,
              "composite violates " + std::string(to_string(v.condition)), v.witness, "composite");
}

Decomposition decompose(const LagoisConnection& conn) {
  const auto& buds_l = conn.budpoints(Side::Left);
  const auto& buds_r = conn.budpoints(Side::Right);
  auto lstar = induced_lattice(conn.left(), conn.left().name() + "*", buds_l);
  auto mstar = induced_lattice(conn.right(), conn.right().name() + "*", buds_r);
  std::vector<ClassIndex> pos_l(conn.left().size(), 0);
  std::vector<ClassIndex> pos_r(conn.right().size(), 0);
  for (ClassIndex k = 0; k < buds_l.size(); ++k) pos_l[buds_l[k]] = k;
  for (ClassIndex k = 0; k < buds_r.size(); ++k) pos_r[buds_r[k]] = k;

  std::vector<ClassIndex> r1(conn.left().size());
  for (ClassIndex l = 0; l < r1.size(); ++l) r1[l] = pos_l[conn.representative(Side::Left, l)];
  std::vector<ClassIndex> r2(conn.right().size());
  for (ClassIndex m = 0; m < r2.size(); ++m) r2[m] = pos_r[conn.representative(Side::Right, m)];
  std::vector<ClassIndex> i1(buds_l.size());
  for (ClassIndex k = 0; k < i1.size(); ++k) i1[k] = pos_r[conn.alpha()(buds_l[k])];
  std::vector<ClassIndex> i2(buds_r.size());
  for (ClassIndex k = 0; k < i2.size(); ++k) i2[k] = pos_l[conn.gamma()(buds_r[k])];

  return Decomposition{
      require_connection(conn.left_ptr(), lstar, std::move(r1), buds_l),
      MonotoneMap(lstar, mstar, std::move(i1)),
      MonotoneMap(mstar, lstar, std::move(i2)),
      require_connection(mstar, conn.right_ptr(), buds_r, std::move(r2)),
  };
}

std::pair<std::vector<ClassIndex>, std::vector<ClassIndex>> recompose(const Decomposition& d) {
  const auto& r1 = d.insertion_left.alpha();
  const auto& e1 = d.insertion_left.gamma();
  const auto& e2 = d.insertion_right.alpha();
  const auto& r2 = d.insertion_right.gamma();
  std::vector<ClassIndex> alpha(r1.source().size());
  std::vector<ClassIndex> gamma(r2.source().size());
  for (ClassIndex l = 0; l < alpha.size(); ++l) alpha[l] = e2(d.iso_forward(r1(l)));
  for (ClassIndex m = 0; m < gamma.size(); ++m) gamma[m] = e1(d.iso_backward(r2(m)));
  return {std::move(alpha), std::move(gamma)};
}

LagoisConnection coarsen(const LagoisConnection& conn, const MonotoneMap& alpha2) {
  const Lattice& L = conn.left();
  const Lattice& M = conn.right();
  auto a2 = detail::table_over(alpha2, L, M);
  const auto& a1 = conn.alpha();

  // Ker(alpha) inside Ker(alpha2): compare each class with its cell's first member.
  const auto& cells = conn.kernel_cells(Side::Left);
  std::vector<ClassIndex> first(L.size(), static_cast<ClassIndex>(-1));
  for (ClassIndex l = 0; l < L.size(); ++l) {
    auto& f = first[cells[l]];
    if (f == static_cast<ClassIndex>(-1)) f = l;
    if (a2[f] != a2[l]) {
      throw Error(ErrorKind::CoarsenError,
                  L.class_name(f) + " and " + L.class_name(l) +
                      " share an alpha image but are split by the new map",
                  {L.class_name(f), L.class_name(l)}, "NotRefinement");
    }
  }

  std::vector<std::vector<ClassIndex>> classes(M.size());
  for (ClassIndex l = 0; l < L.size(); ++l) classes[a2[l]].push_back(l);
  for (ClassIndex m = 0; m < M.size(); ++m) {
    if (classes[m].empty()) continue;
    ClassIndex top = L.join_all(classes[m]);
    if (a2[top] != m) {
      throw Error(ErrorKind::CoarsenError,
                  "the class of " + L.class_name(classes[m].front()) +
                      " under the new map has no largest member",
                  {L.class_name(classes[m].front())}, "NoLargestElement");
    }
    if (a1(top) != m) {
      throw Error(ErrorKind::CoarsenError,
                  "largest member " + L.class_name(top) + " has alpha image " +
                      M.class_name(a1(top)) + " but the new map sends its class to " +
                      M.class_name(m),
                  {L.class_name(top)}, "RepresentativeMismatch");
    }
  }

  const auto& g = conn.gamma();
  std::vector<ClassIndex> gamma2(M.size());
  for (ClassIndex m = 0; m < M.size(); ++m) gamma2[m] = g(a2[g(m)]);
  return require_connection(conn.left_ptr(), conn.right_ptr(), std::move(a2), std::move(gamma2));
}

CheckOutcome semi_inverse_connection(const MonotoneMap& alpha1, const MonotoneMap& gamma1) {
  const Lattice& L = alpha1.source();
  const Lattice& M = alpha1.target();
  auto g = detail::table_over(gamma1, M, L);
  const auto& a = alpha1.table();
  for (ClassIndex l = 0; l < L.size(); ++l) {
    if (a[g[a[l]]] != a[l]) {
      throw Error(ErrorKind::NotSemiInverse,
                  "alpha.gamma.alpha differs from alpha at " + L.class_name(l), {L.class_name(l)});
    }
  }
  std::vector<ClassIndex> gamma2(M.size());
  for (ClassIndex m = 0; m < M.size(); ++m) gamma2[m] = g[a[g[m]]];
  return check_connection(alpha1.source_ptr(), alpha1.target_ptr(), a, std::move(gamma2));
}

}  // namespace sifc
