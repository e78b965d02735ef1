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

#include "sifc/flowlang.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "sifc/error.hpp"

namespace sifc {

std::string_view to_string(VarKind k) {
  switch (k) {
    case VarKind::Internal: return "internal";
    case VarKind::Export: return "export";
    case VarKind::Import: return "import";
  }
  return "?";
}

namespace {

const char* side_letter(Side s) { return s == Side::Left ? "L" : "M"; }

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  }
  return true;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Side parse_side(const std::string& tok, std::size_t line) {
  if (tok == "L") return Side::Left;
  if (tok == "M") return Side::Right;
  parse_fail(line, "expected domain L or M, got '" + tok + "'");
}

std::string expect_ident(const std::string& tok, std::size_t line) {
  if (!is_identifier(tok)) parse_fail(line, "'" + tok + "' is not a variable name");
  return tok;
}

// Recursive descent over `e ::= term ('+' term)*`, `term ::= int | var | (e)`.
class ExprParser {
 public:
  ExprParser(std::string_view src, std::size_t line) : src_(src), line_(line) {}

  Expr parse() {
    Expr e = sum();
    skip();
    if (pos_ != src_.size()) parse_fail(line_, "trailing input in expression '" + std::string(src_) + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  Expr sum() {
    Expr e = term();
    for (;;) {
      skip();
      if (pos_ < src_.size() && src_[pos_] == '+') {
        ++pos_;
        e = Expr::add(std::move(e), term());
      } else {
        return e;
      }
    }
  }
  Expr term() {
    skip();
    if (pos_ >= src_.size()) parse_fail(line_, "expression ends early");
    char ch = src_[pos_];
    if (ch == '(') {
      ++pos_;
      Expr e = sum();
      skip();
      if (pos_ >= src_.size() || src_[pos_] != ')') parse_fail(line_, "missing ')'");
      ++pos_;
      return e;
    }
    if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      if (ch == '-') ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      Value v = 0;
      auto [p, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
      if (ec != std::errc() || p != src_.data() + pos_) {
        parse_fail(line_, "bad integer '" + std::string(src_.substr(start, pos_ - start)) + "'");
      }
      return Expr::constant(v);
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    auto name = src_.substr(start, pos_ - start);
    if (!is_identifier(name)) parse_fail(line_, "unexpected character in expression");
    return Expr::variable(std::string(name));
  }

  std::string_view src_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

void parse_statement(std::string_view stmt, std::size_t line, Program& prog) {
  auto head = split_ws(stmt.substr(0, stmt.find('{')));
  if (head.empty()) return;
  const std::string& op = head[0];
  if (op == "t") {
    auto open = stmt.find('{');
    auto close = stmt.rfind('}');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
      parse_fail(line, "transaction needs { ... }");
    }
    if (head.size() != 2) parse_fail(line, "expected 't <L|M> { ... }'");
    if (!trim(stmt.substr(close + 1)).empty()) parse_fail(line, "text after transaction body");
    Side d = parse_side(head[1], line);
    std::vector<Assignment> as;
    auto body = stmt.substr(open + 1, close - open - 1);
    std::size_t start = 0;
    while (start <= body.size()) {
      auto end = body.find(';', start);
      if (end == std::string_view::npos) end = body.size();
      auto piece = trim(body.substr(start, end - start));
      start = end + 1;
      if (piece.empty()) continue;
      auto eq = piece.find(":=");
      if (eq == std::string_view::npos) parse_fail(line, "assignment needs ':='");
      std::string target = expect_ident(std::string(trim(piece.substr(0, eq))), line);
      as.push_back({std::move(target), ExprParser(piece.substr(eq + 2), line).parse()});
    }
    prog.body.push_back(Phrase::txn(d, std::move(as)));
    return;
  }
  if (stmt.find('{') != std::string_view::npos) parse_fail(line, "unexpected '{'");
  // Class names never contain ':', so it can be split off as its own token.
  std::string spaced;
  for (char ch : stmt) {
    if (ch == ':') {
      spaced += " : ";
    } else {
      spaced += ch;
    }
  }
  auto tok = split_ws(spaced);
  if (op == "var") {
    if (tok.size() != 6 || tok[3] != ":") parse_fail(line, "expected 'var <L|M> name : Class kind'");
    VarDecl d;
    d.domain = parse_side(tok[1], line);
    d.name = expect_ident(tok[2], line);
    d.cls = tok[4];
    if (!is_valid_class_name(d.cls)) parse_fail(line, "bad class name '" + d.cls + "'");
    if (tok[5] == "internal") {
      d.kind = VarKind::Internal;
    } else if (tok[5] == "export") {
      d.kind = VarKind::Export;
    } else if (tok[5] == "import") {
      d.kind = VarKind::Import;
    } else {
      parse_fail(line, "unknown variable kind '" + tok[5] + "'");
    }
    prog.decls.push_back(std::move(d));
  } else if (op == "rd" || op == "wr") {
    if (tok.size() != 4) parse_fail(line, "expected '" + op + " <L|M> a b'");
    Side d = parse_side(tok[1], line);
    auto a = expect_ident(tok[2], line);
    auto b = expect_ident(tok[3], line);
    prog.body.push_back(op == "rd" ? Phrase::rd(d, a, b) : Phrase::wr(d, a, b));
  } else if (op == "trl" || op == "tlr") {
    if (tok.size() != 3) parse_fail(line, "expected '" + op + " y x'");
    auto y = expect_ident(tok[1], line);
    auto x = expect_ident(tok[2], line);
    prog.body.push_back(op == "trl" ? Phrase::trl(y, x) : Phrase::tlr(y, x));
  } else {
    parse_fail(line, "unknown statement '" + op + "'");
  }
}

void print_expr(const Expr& e, std::ostringstream& os) {
  switch (e.op) {
    case Expr::Op::Const: os << e.value; break;
    case Expr::Op::Var: os << e.var; break;
    case Expr::Op::Add:
      print_expr(e.args[0], os);
      os << " + ";
      if (e.args[1].op == Expr::Op::Add) {
        os << "(";
        print_expr(e.args[1], os);
        os << ")";
      } else {
        print_expr(e.args[1], os);
      }
      break;
  }
}

void collect_reads(const Expr& e, std::vector<std::string>& out) {
  if (e.op == Expr::Op::Var) out.push_back(e.var);
  for (const auto& a : e.args) collect_reads(a, out);
}

}  // namespace

Program parse_program(std::string_view text) {
  Program prog;
  std::string pending;
  std::size_t pending_line = 0;
  int depth = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty() && depth == 0) continue;
    if (depth == 0) pending_line = line_no;
    pending += std::string(line);
    pending += ' ';
    for (char ch : line) {
      if (ch == '{') ++depth;
      if (ch == '}') --depth;
    }
    if (depth < 0) parse_fail(line_no, "unbalanced '}'");
    if (depth == 0) {
      parse_statement(pending, pending_line, prog);
      pending.clear();
    }
  }
  if (depth != 0) parse_fail(pending_line, "unterminated transaction");
  return prog;
}

std::string print_phrase(const Phrase& p) {
  std::ostringstream os;
  switch (p.kind) {
    case Phrase::Kind::Txn: {
      os << "t " << side_letter(p.domain) << " {";
      for (std::size_t i = 0; i < p.assignments.size(); ++i) {
        os << (i == 0 ? " " : "; ") << p.assignments[i].target << " := ";
        print_expr(p.assignments[i].expr, os);
      }
      os << " }";
      break;
    }
    case Phrase::Kind::Rd: os << "rd " << side_letter(p.domain) << " " << p.target << " " << p.source; break;
    case Phrase::Kind::Wr: os << "wr " << side_letter(p.domain) << " " << p.target << " " << p.source; break;
    case Phrase::Kind::Trl: os << "trl " << p.target << " " << p.source; break;
    case Phrase::Kind::Tlr: os << "tlr " << p.target << " " << p.source; break;
  }
  return os.str();
}

std::string print_program(const Program& prog) {
  std::string out;
  for (const auto& d : prog.decls) {
    out += "var " + std::string(side_letter(d.domain)) + " " + d.name + " : " + d.cls + " " +
           std::string(to_string(d.kind)) + "\n";
  }
  for (const auto& p : prog.body) out += print_phrase(p) + "\n";
  return out;
}

const VarDecl* Program::find(std::string_view name) const {
  for (const auto& d : decls) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const VarDecl& Program::decl(std::string_view name) const {
  if (const auto* d = find(name)) return *d;
  throw Error(ErrorKind::UndeclaredVariable, "variable '" + std::string(name) + "' is not declared",
              {std::string(name)});
}

void check_declarations(const std::vector<VarDecl>& decls, const LagoisConnection* conn) {
  std::set<std::string> seen;
  for (const auto& d : decls) {
    if (!seen.insert(d.name).second) {
      throw Error(ErrorKind::InvalidArgument, "variable '" + d.name + "' declared twice", {d.name});
    }
    if (conn != nullptr) conn->lattice(d.domain).index_of(d.cls);
  }
}

void check_phrase_shape(const Program& prog, const Phrase& p) {
  auto need = [&](const std::string& name, Side side, VarKind kind) {
    const VarDecl& d = prog.decl(name);
    if (d.domain != side || d.kind != kind) {
      throw Error(ErrorKind::KindMismatch,
                  "'" + name + "' is " + std::string(to_string(d.kind)) + " on " +
                      side_letter(d.domain) + " but '" + print_phrase(p) + "' needs " +
                      std::string(to_string(kind)) + " on " + side_letter(side),
                  {name});
    }
  };
  switch (p.kind) {
    case Phrase::Kind::Txn: {
      std::vector<std::string> reads;
      for (const auto& a : p.assignments) {
        need(a.target, p.domain, VarKind::Internal);
        collect_reads(a.expr, reads);
      }
      for (const auto& r : reads) need(r, p.domain, VarKind::Internal);
      break;
    }
    case Phrase::Kind::Rd:
      need(p.target, p.domain, VarKind::Internal);
      need(p.source, p.domain, VarKind::Import);
      break;
    case Phrase::Kind::Wr:
      need(p.target, p.domain, VarKind::Export);
      need(p.source, p.domain, VarKind::Internal);
      break;
    case Phrase::Kind::Trl:
      need(p.target, Side::Left, VarKind::Import);
      need(p.source, Side::Right, VarKind::Export);
      break;
    case Phrase::Kind::Tlr:
      need(p.target, Side::Right, VarKind::Import);
      need(p.source, Side::Left, VarKind::Export);
      break;
  }
}

Value eval(const Expr& e, const std::map<std::string, Value>& store) {
  switch (e.op) {
    case Expr::Op::Const: return e.value;
    case Expr::Op::Var: {
      auto it = store.find(e.var);
      if (it == store.end()) {
        throw Error(ErrorKind::UndeclaredVariable, "variable '" + e.var + "' is not in the store",
                    {e.var});
      }
      return it->second;
    }
    case Expr::Op::Add: {
      auto a = static_cast<std::uint64_t>(eval(e.args[0], store));
      auto b = static_cast<std::uint64_t>(eval(e.args[1], store));
      return static_cast<Value>(a + b);
    }
  }
  return 0;
}

StorePair exec(const Program& prog, const StorePair& init) {
  for (Side s : {Side::Left, Side::Right}) {
    for (const auto& [name, v] : init.side(s)) {
      const VarDecl* d = prog.find(name);
      if (d == nullptr || d->domain != s) {
        throw Error(ErrorKind::UndeclaredVariable,
                    "store variable '" + name + "' is not declared on " + side_letter(s), {name});
      }
    }
  }
  for (const auto& d : prog.decls) {
    if (!init.side(d.domain).contains(d.name)) {
      throw Error(ErrorKind::InvalidArgument, "initial store lacks variable '" + d.name + "'",
                  {d.name});
    }
  }
  StorePair st = init;
  for (const auto& p : prog.body) {
    check_phrase_shape(prog, p);
    switch (p.kind) {
      case Phrase::Kind::Txn: {
        auto& mem = st.side(p.domain);
        for (const auto& a : p.assignments) mem[a.target] = eval(a.expr, mem);
        break;
      }
      case Phrase::Kind::Rd:
      case Phrase::Kind::Wr: {
        auto& mem = st.side(p.domain);
        mem[p.target] = mem.at(p.source);
        break;
      }
      case Phrase::Kind::Trl: st.left[p.target] = st.right.at(p.source); break;
      case Phrase::Kind::Tlr: st.right[p.target] = st.left.at(p.source); break;
    }
  }
  return st;
}

PhraseType typecheck_phrase(const Program& prog, const LagoisConnection& conn, const Phrase& p) {
  check_phrase_shape(prog, p);
  const Lattice& L = conn.left();
  const Lattice& M = conn.right();
  auto cls = [&](const std::string& name) {
    const VarDecl& d = prog.decl(name);
    return conn.lattice(d.domain).index_of(d.cls);
  };
  auto require = [](const Lattice& lat, ClassIndex lo, ClassIndex hi, const std::string& rule) {
    if (!lat.leq(lo, hi)) {
      throw Error(ErrorKind::TypeError,
                  "rule " + rule + " requires " + lat.class_name(lo) + " <= " + lat.class_name(hi),
                  {lat.class_name(lo), lat.class_name(hi)}, rule);
    }
  };
  auto suffix = [](Side s) { return s == Side::Left ? std::string("_L") : std::string("_M"); };
  auto pack = [&](Side s, ClassIndex c) {
    return s == Side::Left ? PhraseType{c, M.top()} : PhraseType{L.top(), c};
  };
  switch (p.kind) {
    case Phrase::Kind::Txn: {
      const Lattice& lat = conn.lattice(p.domain);
      std::vector<std::string> reads;
      ClassIndex written = lat.top();
      for (const auto& a : p.assignments) {
        collect_reads(a.expr, reads);
        written = lat.meet(written, cls(a.target));
      }
      ClassIndex read = lat.bottom();
      for (const auto& r : reads) read = lat.join(read, cls(r));
      require(lat, read, written, "Tt" + suffix(p.domain));
      return pack(p.domain, read);
    }
    case Phrase::Kind::Rd: {
      ClassIndex z = cls(p.target);
      require(conn.lattice(p.domain), cls(p.source), z, "Trd" + suffix(p.domain));
      return pack(p.domain, z);
    }
    case Phrase::Kind::Wr: {
      ClassIndex x = cls(p.target);
      require(conn.lattice(p.domain), cls(p.source), x, "Twr" + suffix(p.domain));
      return pack(p.domain, x);
    }
    case Phrase::Kind::Trl: {
      ClassIndex y = cls(p.target);
      ClassIndex x = cls(p.source);
      require(L, conn.gamma()(x), y, "TT_RL");
      return {y, x};
    }
    case Phrase::Kind::Tlr: {
      ClassIndex y = cls(p.target);
      ClassIndex x = cls(p.source);
      require(M, conn.alpha()(x), y, "TT_LR");
      return {x, y};
    }
  }
  return {L.top(), M.top()};
}

PhraseType typecheck(const Program& prog, const LagoisConnection& conn) {
  check_declarations(prog.decls, &conn);
  PhraseType acc{conn.left().top(), conn.right().top()};
  for (std::size_t i = 0; i < prog.body.size(); ++i) {
    PhraseType t;
    try {
      t = typecheck_phrase(prog, conn, prog.body[i]);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TypeError) throw;
      throw Error(ErrorKind::TypeError,
                  "phrase " + std::to_string(i) + " '" + print_phrase(prog.body[i]) + "': " +
                      e.what(),
                  e.witness(), e.tag());
    }
    acc.l = conn.left().meet(acc.l, t.l);
    acc.m = conn.right().meet(acc.m, t.m);
  }
  return acc;
}

bool well_typed(const Program& prog, const LagoisConnection& conn) {
  try {
    typecheck(prog, conn);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TypeError) return false;
    throw;
  }
}

std::vector<std::string> transfer_lint(const Program& prog, const LagoisConnection& conn) {
  std::vector<std::string> out;
  for (const auto& d : prog.decls) {
    if (d.kind == VarKind::Internal) continue;
    ClassIndex c = conn.lattice(d.domain).index_of(d.cls);
    if (!conn.is_budpoint(d.domain, c)) out.push_back(d.name);
  }
  return out;
}

std::vector<std::pair<ClassIndex, ClassIndex>> adversary_pairs(const LagoisConnection& conn) {
  std::vector<std::pair<ClassIndex, ClassIndex>> out;
  for (auto l : conn.budpoints(Side::Left)) {
    ClassIndex m = conn.alpha()(l);
    if (conn.gamma()(m) == l) out.emplace_back(l, m);
  }
  return out;
}

}  // namespace sifc
