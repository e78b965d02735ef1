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

#ifndef SIFC_FLOWLANG_HPP_
#define SIFC_FLOWLANG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sifc/connection.hpp"

namespace sifc {

using Value = std::int64_t;

enum class VarKind { Internal, Export, Import };

std::string_view to_string(VarKind k);

struct VarDecl {
  std::string name;
  Side domain = Side::Left;
  VarKind kind = VarKind::Internal;
  std::string cls;  // class in the domain's lattice
  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

struct Expr {
  enum class Op { Const, Var, Add };
  Op op = Op::Const;
  Value value = 0;
  std::string var;
  std::vector<Expr> args;  // two operands for Add

  static Expr constant(Value v) { return Expr{Op::Const, v, {}, {}}; }
  static Expr variable(std::string name) { return Expr{Op::Var, 0, std::move(name), {}}; }
  static Expr add(Expr a, Expr b) {
    Expr e{Op::Add, 0, {}, {}};
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }
  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Assignment {
  std::string target;
  Expr expr;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Every phrase moves data into `target`. Rd: internal <- import. Wr: export
// <- internal. Trl: left import <- right export. Tlr: right import <- left
// export. Txn writes its assignment targets instead.
struct Phrase {
  enum class Kind { Txn, Rd, Wr, Trl, Tlr };
  Kind kind = Kind::Txn;
  Side domain = Side::Left;  // ignored for Trl/Tlr
  std::vector<Assignment> assignments;
  std::string target;
  std::string source;

  static Phrase txn(Side d, std::vector<Assignment> as) { return {Kind::Txn, d, std::move(as), {}, {}}; }
  static Phrase rd(Side d, std::string z, std::string y) { return {Kind::Rd, d, {}, std::move(z), std::move(y)}; }
  static Phrase wr(Side d, std::string x, std::string z) { return {Kind::Wr, d, {}, std::move(x), std::move(z)}; }
  static Phrase trl(std::string y, std::string x) { return {Kind::Trl, Side::Left, {}, std::move(y), std::move(x)}; }
  static Phrase tlr(std::string y, std::string x) { return {Kind::Tlr, Side::Right, {}, std::move(y), std::move(x)}; }
  friend bool operator==(const Phrase&, const Phrase&) = default;
};

struct Program {
  std::vector<VarDecl> decls;
  std::vector<Phrase> body;

  // Throws UndeclaredVariable.
  const VarDecl& decl(std::string_view name) const;
  const VarDecl* find(std::string_view name) const;
  friend bool operator==(const Program&, const Program&) = default;
};

struct StorePair {
  std::map<std::string, Value> left;
  std::map<std::string, Value> right;
  std::map<std::string, Value>& side(Side s) { return s == Side::Left ? left : right; }
  const std::map<std::string, Value>& side(Side s) const { return s == Side::Left ? left : right; }
  friend bool operator==(const StorePair&, const StorePair&) = default;
};

struct PhraseType {
  ClassIndex l = 0;
  ClassIndex m = 0;
  friend bool operator==(const PhraseType&, const PhraseType&) = default;
};

// Text form: `var <L|M> name : Class <internal|export|import>`, `t <L|M> {
// z := e; ... }`, `rd <L|M> z y`, `wr <L|M> x z`, `trl y x`, `tlr y x`, with
// `#` comments. Throws ParseError carrying the line number in the message.
Program parse_program(std::string_view text);
std::string print_program(const Program& prog);
std::string print_phrase(const Phrase& p);

// Checks unique names and, when given, that each class exists on its side.
// Throws InvalidArgument (duplicate) or UnknownClass.
void check_declarations(const std::vector<VarDecl>& decls, const LagoisConnection* conn = nullptr);

// Throws UndeclaredVariable or KindMismatch when `p` refers to variables
// outside the positions its shape permits.
void check_phrase_shape(const Program& prog, const Phrase& p);

// Runs the body phrase by phrase. `init` must hold exactly the declared
// variables of each side (InvalidArgument / UndeclaredVariable otherwise).
// Addition wraps around.
StorePair exec(const Program& prog, const StorePair& init);
Value eval(const Expr& e, const std::map<std::string, Value>& store);

// Throws TypeError tagged with the rule name (Tt_L, Tt_M, Trd_L, Trd_M,
// Twr_L, Twr_M, TT_RL, TT_LR) and the two compared classes as witness.
PhraseType typecheck_phrase(const Program& prog, const LagoisConnection& conn, const Phrase& p);
// Componentwise meet over the body; <top, top> for an empty body. The
// TypeError message names the failing phrase index.
PhraseType typecheck(const Program& prog, const LagoisConnection& conn);
bool well_typed(const Program& prog, const LagoisConnection& conn);

// Export/import variables whose class is not a budpoint of its side.
std::vector<std::string> transfer_lint(const Program& prog, const LagoisConnection& conn);

// Pairs (l, m) with gamma(m) = l and alpha(l) = m, ascending by l.
std::vector<std::pair<ClassIndex, ClassIndex>> adversary_pairs(const LagoisConnection& conn);

struct NiReport {
  bool passed = true;
  std::size_t runs = 0;
  // Populated on failure.
  std::string variable;
  Side variable_side = Side::Left;
  StorePair init_a, init_b, final_a, final_b;
};

// Variables visible to an observer at (l, m).
bool is_low(const VarDecl& d, const LagoisConnection& conn, std::pair<ClassIndex, ClassIndex> pair);

// Draws `store_pairs` initial store pairs that agree on low variables and
// differ on all others, runs both, and compares low variables afterwards.
// Throws IllTyped when the program does not typecheck.
NiReport ni_trial(const Program& prog, const LagoisConnection& conn,
                  std::pair<ClassIndex, ClassIndex> pair, std::uint64_t seed,
                  std::size_t store_pairs = 1);
// The same experiment without the typing guard.
NiReport ni_trial_unchecked(const Program& prog, const LagoisConnection& conn,
                            std::pair<ClassIndex, ClassIndex> pair, std::uint64_t seed,
                            std::size_t store_pairs = 1);

struct GenOptions {
  // Only propose cross-domain transfers.
  bool transfers_only = false;
  std::size_t max_rejections = 10000;
};

// Rejection-samples phrases until the body has `length` well-typed phrases.
// Phrase forms whose variable kinds are not all declared are never proposed.
// Throws InvalidArgument when no form is left, GenerationStall after
// `max_rejections` consecutive rejections.
Program gen_well_typed(const std::vector<VarDecl>& decls, const LagoisConnection& conn,
                       std::size_t length, std::uint64_t seed, GenOptions opts = {});

struct NiSuiteReport {
  std::uint64_t seed = 0;
  std::size_t programs = 0;
  std::size_t trials = 0;  // one per (program, adversary pair)
  std::size_t failures = 0;
  std::vector<std::pair<ClassIndex, ClassIndex>> pairs;
  // Up to ten failing programs with their reports.
  std::vector<std::pair<Program, NiReport>> examples;
  bool passed() const noexcept { return failures == 0; }
};

// Generates `programs` well-typed bodies over `decls` with lengths drawn from
// [0, max_len] and runs ni_trial at every adversary pair with `store_pairs`
// store pairs each. Program k uses a seed derived from `seed` and k.
NiSuiteReport run_ni_suite(const std::vector<VarDecl>& decls, const LagoisConnection& conn,
                           std::size_t programs, std::size_t max_len, std::size_t store_pairs,
                           std::uint64_t seed);

}  // namespace sifc

#endif  // SIFC_FLOWLANG_HPP_
