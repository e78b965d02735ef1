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

#include <random>

#include "sifc/error.hpp"
#include "sifc/flowlang.hpp"

namespace sifc {

bool is_low(const VarDecl& d, const LagoisConnection& conn, std::pair<ClassIndex, ClassIndex> pair) {
  const Lattice& lat = conn.lattice(d.domain);
  ClassIndex bound = d.domain == Side::Left ? pair.first : pair.second;
  return lat.leq(lat.index_of(d.cls), bound);
}

NiReport ni_trial_unchecked(const Program& prog, const LagoisConnection& conn,
                            std::pair<ClassIndex, ClassIndex> pair, std::uint64_t seed,
                            std::size_t store_pairs) {
  std::vector<bool> low(prog.decls.size());
  for (std::size_t i = 0; i < low.size(); ++i) low[i] = is_low(prog.decls[i], conn, pair);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Value> value(-1000, 1000);
  NiReport report;
  for (std::size_t t = 0; t < store_pairs; ++t) {
    StorePair a, b;
    for (std::size_t i = 0; i < low.size(); ++i) {
      const auto& d = prog.decls[i];
      Value va = value(rng);
      Value vb = low[i] ? va : value(rng);
      if (!low[i] && vb == va) ++vb;
      a.side(d.domain)[d.name] = va;
      b.side(d.domain)[d.name] = vb;
    }
    StorePair fa = exec(prog, a);
    StorePair fb = exec(prog, b);
    ++report.runs;
    for (std::size_t i = 0; i < low.size(); ++i) {
      const auto& d = prog.decls[i];
      if (low[i] && fa.side(d.domain).at(d.name) != fb.side(d.domain).at(d.name)) {
        report.passed = false;
        report.variable = d.name;
        report.variable_side = d.domain;
        report.init_a = std::move(a);
        report.init_b = std::move(b);
        report.final_a = std::move(fa);
        report.final_b = std::move(fb);
        return report;
      }
    }
  }
  return report;
}

NiReport ni_trial(const Program& prog, const LagoisConnection& conn,
                  std::pair<ClassIndex, ClassIndex> pair, std::uint64_t seed,
                  std::size_t store_pairs) {
  try {
    typecheck(prog, conn);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TypeError) throw;
    throw Error(ErrorKind::IllTyped, std::string("refusing to test an ill-typed program: ") + e.what(),
                e.witness(), e.tag());
  }
  return ni_trial_unchecked(prog, conn, pair, seed, store_pairs);
}

namespace {

struct Pools {
  // [side][kind]
  std::vector<const VarDecl*> vars[2][3];
  const std::vector<const VarDecl*>& get(Side s, VarKind k) const {
    return vars[s == Side::Left ? 0 : 1][static_cast<int>(k)];
  }
};

}  // namespace

Program gen_well_typed(const std::vector<VarDecl>& decls, const LagoisConnection& conn,
                       std::size_t length, std::uint64_t seed, GenOptions opts) {
  check_declarations(decls, &conn);
  Program prog;
  prog.decls = decls;
  if (length == 0) return prog;

  Pools pools;
  for (const auto& d : prog.decls) {
    pools.vars[d.domain == Side::Left ? 0 : 1][static_cast<int>(d.kind)].push_back(&d);
  }
  auto has = [&](Side s, VarKind k) { return !pools.get(s, k).empty(); };
  using K = Phrase::Kind;
  struct Form {
    K kind;
    Side side;
  };
  std::vector<Form> forms;
  if (has(Side::Left, VarKind::Import) && has(Side::Right, VarKind::Export)) forms.push_back({K::Trl, Side::Left});
  if (has(Side::Right, VarKind::Import) && has(Side::Left, VarKind::Export)) forms.push_back({K::Tlr, Side::Right});
  if (!opts.transfers_only) {
    for (Side s : {Side::Left, Side::Right}) {
      if (has(s, VarKind::Internal)) forms.push_back({K::Txn, s});
      if (has(s, VarKind::Internal) && has(s, VarKind::Import)) forms.push_back({K::Rd, s});
      if (has(s, VarKind::Internal) && has(s, VarKind::Export)) forms.push_back({K::Wr, s});
    }
  }
  if (forms.empty()) {
    throw Error(ErrorKind::InvalidArgument, "declarations admit no phrase of the requested forms");
  }

  std::mt19937_64 rng(seed);
  auto pick = [&](Side s, VarKind k) -> const std::string& {
    const auto& pool = pools.get(s, k);
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]->name;
  };
  auto leaf = [&](Side s) {
    if (std::bernoulli_distribution(0.3)(rng)) {
      return Expr::constant(std::uniform_int_distribution<Value>(-9, 9)(rng));
    }
    return Expr::variable(pick(s, VarKind::Internal));
  };
  auto expr = [&](Side s) {
    Expr e = leaf(s);
    int extra = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < extra; ++i) e = Expr::add(std::move(e), leaf(s));
    return e;
  };
  auto propose = [&]() {
    const Form& f = forms[std::uniform_int_distribution<std::size_t>(0, forms.size() - 1)(rng)];
    switch (f.kind) {
      case K::Txn: {
        std::vector<Assignment> as;
        int n = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < n; ++i) as.push_back({pick(f.side, VarKind::Internal), expr(f.side)});
        return Phrase::txn(f.side, std::move(as));
      }
      case K::Rd: return Phrase::rd(f.side, pick(f.side, VarKind::Internal), pick(f.side, VarKind::Import));
      case K::Wr: return Phrase::wr(f.side, pick(f.side, VarKind::Export), pick(f.side, VarKind::Internal));
      case K::Trl: return Phrase::trl(pick(Side::Left, VarKind::Import), pick(Side::Right, VarKind::Export));
      case K::Tlr: return Phrase::tlr(pick(Side::Right, VarKind::Import), pick(Side::Left, VarKind::Export));
    }
    return Phrase{};
  };

  std::size_t rejections = 0;
  while (prog.body.size() < length) {
    Phrase p = propose();
    try {
      typecheck_phrase(prog, conn, p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TypeError) throw;
      if (++rejections >= opts.max_rejections) {
        throw Error(ErrorKind::GenerationStall,
                    std::to_string(rejections) + " consecutive phrase proposals were ill-typed after " +
                        std::to_string(prog.body.size()) + " accepted");
      }
      continue;
    }
    rejections = 0;
    prog.body.push_back(std::move(p));
  }
  return prog;
}

NiSuiteReport run_ni_suite(const std::vector<VarDecl>& decls, const LagoisConnection& conn,
                           std::size_t programs, std::size_t max_len, std::size_t store_pairs,
                           std::uint64_t seed) {
  NiSuiteReport report;
  report.seed = seed;
  report.pairs = adversary_pairs(conn);
  std::mt19937_64 master(seed);
  for (std::size_t k = 0; k < programs; ++k) {
    std::uint64_t program_seed = master();
    std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(master);
    Program prog = gen_well_typed(decls, conn, len, program_seed);
    ++report.programs;
    for (const auto& pair : report.pairs) {
      NiReport r = ni_trial(prog, conn, pair, master(), store_pairs);
      ++report.trials;
      if (!r.passed) {
        ++report.failures;
        if (report.examples.size() < 10) report.examples.emplace_back(prog, std::move(r));
      }
    }
  }
  return report;
}

}  // namespace sifc
