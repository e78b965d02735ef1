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

#include "sifc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "sifc/error.hpp"

namespace sifc {

namespace fs = std::filesystem;

int exit_code(Status s) noexcept {
  switch (s) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::InputError: return 2;
  }
  return 2;
}

namespace {

// Kinds that describe a property of valid input rather than bad input.
bool is_finding(ErrorKind k) {
  switch (k) {
    case ErrorKind::CycleError:
    case ErrorKind::NotALattice:
    case ErrorKind::NotMonotone:
    case ErrorKind::AdjointError:
    case ErrorKind::NotClosure:
    case ErrorKind::NotIso:
    case ErrorKind::ComposeError:
    case ErrorKind::CoarsenError:
    case ErrorKind::NotSemiInverse:
    case ErrorKind::NotLagois:
    case ErrorKind::TypeError:
    case ErrorKind::IllTyped:
    case ErrorKind::GenerationStall:
      return true;
    default:
      return false;
  }
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::InputError: return "error";
  }
  return "error";
}

Verdict make(const std::string& command, bool pass, Json body, std::string summary) {
  Verdict v;
  v.status = pass ? Status::Pass : Status::Fail;
  v.report = Json{{"command", command}, {"status", status_name(v.status)}};
  for (auto& [k, val] : body.items()) v.report[k] = std::move(val);
  v.summary = std::move(summary);
  return v;
}

Json error_json(const Error& e) {
  Json j{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"witness", e.witness()}};
  if (!e.tag().empty()) j["tag"] = e.tag();
  return j;
}

Json violations_json(const std::vector<Violation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(violation_to_json(v));
  return out;
}

std::string violation_lines(const std::vector<Violation>& vs) {
  std::string s;
  for (const auto& v : vs) s += violation_to_json(v).dump() + "\n";
  return s;
}

Json kernel_json(const LagoisConnection& conn, Side s) {
  Json out = Json::array();
  for (const auto& cell : conn.kernel(s)) out.push_back(names_to_json(conn.lattice(s), cell));
  return out;
}

Json describe_connection(const LagoisConnection& conn) {
  Json j = connection_to_json(conn);
  j["budpoints_left"] = names_to_json(conn.left(), conn.budpoints(Side::Left));
  j["budpoints_right"] = names_to_json(conn.right(), conn.budpoints(Side::Right));
  return j;
}

std::string join_names(const Json& arr) {
  std::string s;
  for (const auto& x : arr) {
    if (!s.empty()) s += ", ";
    s += x.get<std::string>();
  }
  return "{" + s + "}";
}

std::set<std::string> parse_authority(const std::string& raw) {
  std::set<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    auto e = item.find_last_not_of(" \t");
    out.insert(item.substr(b, e - b + 1));
  }
  return out;
}

Direction parse_direction(const std::string& s) {
  if (s == "lr") return Direction::LeftToRight;
  if (s == "rl") return Direction::RightToLeft;
  throw Error(ErrorKind::InvalidArgument, "direction must be 'lr' or 'rl', got '" + s + "'");
}

PrincipalConnection require_pm(const PrincipalCheck& chk, const std::string& path) {
  if (!chk.ok()) {
    std::string msg = path + ": principal maps do not form a Lagois connection";
    std::vector<std::string> witness;
    for (const auto& v : chk.violations) {
      witness.push_back(violation_to_json(v).dump());
    }
    throw Error(ErrorKind::NotLagois, msg, witness,
                chk.violations.empty() ? std::string() : std::string(to_string(chk.violations[0].condition)));
  }
  return *chk.connection;
}

Json lifted_json(const LiftedReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back({{"property", f.property}, {"witness", f.witness}});
  return Json{{"checks", r.checks}, {"failures", failures}};
}

std::uint64_t default_seed() {
  const char* env = std::getenv("SIFC_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t pos = 0;
    std::uint64_t s = std::stoull(env, &pos);
    if (pos == std::string_view(env).size()) return s;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidArgument, std::string("SIFC_SEED is not an unsigned integer: ") + env);
}

struct Options {
  std::string format = "json";
  std::string file, file2, program, connection, store, alpha2, label1, label2;
  std::string direction = "lr";
  std::string authority, authority_left, authority_right;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 100, len = 20, stores = 3, samples = 500;
  bool lint = false;
};

// ---- connection workflows -------------------------------------------------

Verdict cmd_check_lattice(const Options& o) {
  auto lat = load_lattice(o.file);
  Json hasse = Json::array();
  for (auto [lo, hi] : lat->hasse()) hasse.push_back({lat->class_name(lo), lat->class_name(hi)});
  return make("check-lattice", true,
              Json{{"name", lat->name()},
                   {"size", lat->size()},
                   {"top", lat->class_name(lat->top())},
                   {"bottom", lat->class_name(lat->bottom())},
                   {"hasse", hasse}},
              "lattice '" + lat->name() + "' is valid (" + std::to_string(lat->size()) + " classes)");
}

Verdict cmd_check_connection(const Options& o, std::uint64_t seed) {
  auto spec = load_connection_spec(o.file);
  if (!spec.gamma) throw Error(ErrorKind::ParseError, o.file + ": connection needs a 'gamma' map");
  auto out = check_connection(spec.left, spec.right, spec.alpha, *spec.gamma);
  if (!out.ok()) {
    return make("check-connection", false, Json{{"violations", violations_json(out.violations)}},
                "not a Lagois connection\n" + violation_lines(out.violations));
  }
  const auto& conn = *out.connection;
  auto tight = check_tightness(conn, seed);
  Json body = describe_connection(conn);
  body["kernel_alpha"] = kernel_json(conn, Side::Left);
  body["kernel_gamma"] = kernel_json(conn, Side::Right);
  body["tightness"] = Json{{"passed", tight.passed},
                           {"subsets_checked", tight.subsets_checked},
                           {"failures", tight.failures},
                           {"seed", seed}};
  body["violations"] = Json::array();
  std::string summary = "Lagois connection holds; budpoints " + join_names(body["budpoints_left"]) +
                        " / " + join_names(body["budpoints_right"]) + "; seed " + std::to_string(seed);
  if (!tight.passed) summary += "\ntightness check failed";
  return make("check-connection", tight.passed, std::move(body), summary);
}

Verdict cmd_find_adjoint(const Options& o) {
  auto spec = load_connection_spec(o.file);
  auto alpha = MonotoneMap::from_names(spec.left, spec.right, spec.alpha);
  auto gamma = find_adjoint(alpha);
  return make("find-adjoint", true, Json{{"gamma", map_to_json(gamma)}},
              "found the Lagois adjoint of alpha");
}

Verdict cmd_build_from_closures(const Options& o) {
  auto spec = load_closure_spec(o.file);
  auto conn = build_from_closures(spec.left, spec.right, spec.c, spec.i, spec.h);
  return make("build-from-closures", true, describe_connection(conn), "built a Lagois connection");
}

Verdict cmd_compose(const Options& o) {
  auto ab = load_connection(o.file);
  auto bc = load_connection(o.file2);
  auto a = analyze_composition(ab, bc);
  const Lattice& l = ab.left();
  const Lattice& q = bc.right();
  Json body{{"image_condition", a.image_condition},
            {"image_witness", a.image_witness ? Json(*a.image_witness) : Json(nullptr)},
            {"coimage_condition", a.coimage_condition},
            {"coimage_witness", a.coimage_witness ? Json(*a.coimage_witness) : Json(nullptr)},
            {"gamma2_image_within_alpha1_image", a.gamma2_image_within_alpha1_image},
            {"alpha1_image_within_gamma2_image", a.alpha1_image_within_gamma2_image},
            {"alpha", table_to_json(l, q, a.alpha)},
            {"gamma", table_to_json(q, l, a.gamma)},
            {"composite_violations", violations_json(a.composite_violations)},
            {"admitted_by", a.admitted_by.empty() ? Json(nullptr) : Json(a.admitted_by)}};
  bool ok = a.connection.has_value();
  if (ok) body["connection"] = describe_connection(*a.connection);
  std::string summary = ok ? "composite admitted (" + a.admitted_by + ")"
                           : std::string("composition refused");
  if (!a.image_condition) summary += "\nimage condition fails at " + a.image_witness.value_or("?");
  if (!a.coimage_condition) summary += "\ncoimage condition fails at " + a.coimage_witness.value_or("?");
  summary += "\n" + violation_lines(a.composite_violations);
  while (!summary.empty() && summary.back() == '\n') summary.pop_back();
  return make("compose", ok, std::move(body), summary);
}

Verdict cmd_decompose(const Options& o) {
  auto conn = load_connection(o.file);
  auto d = decompose(conn);
  auto [a, g] = recompose(d);
  bool round_trip = a == conn.alpha().table() && g == conn.gamma().table();
  return make("decompose", round_trip,
              Json{{"insertion_left", connection_to_json(d.insertion_left)},
                   {"iso_forward", map_to_json(d.iso_forward)},
                   {"iso_backward", map_to_json(d.iso_backward)},
                   {"insertion_right", connection_to_json(d.insertion_right)},
                   {"round_trip", round_trip}},
              round_trip ? "decomposed; components recompose to the original"
                         : "decomposed, but recomposition differs from the original");
}

Verdict cmd_coarsen(const Options& o) {
  auto conn = load_connection(o.file);
  auto raw = name_map_from_json(read_json(o.alpha2));
  auto alpha2 = MonotoneMap::from_names(conn.left_ptr(), conn.right_ptr(), raw);
  auto coarse = coarsen(conn, alpha2);
  return make("coarsen", true, describe_connection(coarse), "coarsened connection verified");
}

Verdict cmd_semi_inverse(const Options& o) {
  auto spec = load_connection_spec(o.file);
  if (!spec.gamma) throw Error(ErrorKind::ParseError, o.file + ": semi-inverse needs a 'gamma' map");
  auto a1 = MonotoneMap::from_names(spec.left, spec.right, spec.alpha);
  auto g1 = MonotoneMap::from_names(spec.right, spec.left, *spec.gamma);
  auto out = semi_inverse_connection(a1, g1);
  Json body{{"alpha", map_to_json(a1)},
            {"gamma", map_to_json(g1.then(a1).then(g1))},
            {"violations", violations_json(out.violations)}};
  if (out.ok()) {
    body["budpoints_left"] = names_to_json(out.connection->left(), out.connection->budpoints(Side::Left));
    body["budpoints_right"] = names_to_json(out.connection->right(), out.connection->budpoints(Side::Right));
  }
  return make("semi-inverse", out.ok(), std::move(body),
              out.ok() ? std::string("semi-inverse construction is a Lagois connection")
                       : "semi-inverse construction is not a Lagois connection\n" +
                             violation_lines(out.violations));
}

// ---- flow language ---------------------------------------------------------

Verdict cmd_typecheck(const Options& o) {
  auto prog = parse_program(read_text(o.program));
  auto conn = load_connection(o.connection);
  check_declarations(prog.decls, &conn);
  auto t = typecheck(prog, conn);
  Json body{{"type", {{"left", conn.left().class_name(t.l)}, {"right", conn.right().class_name(t.m)}}}};
  bool pass = true;
  std::string summary = "well-typed at <" + conn.left().class_name(t.l) + ", " +
                        conn.right().class_name(t.m) + ">";
  if (o.lint) {
    auto lint = transfer_lint(prog, conn);
    body["lint"] = lint;
    for (const auto& v : lint) summary += "\nlint: '" + v + "' is not declared at a budpoint";
    pass = lint.empty();
  }
  return make("typecheck", pass, std::move(body), summary);
}

Verdict cmd_run(const Options& o) {
  auto prog = parse_program(read_text(o.program));
  auto init = store_from_json(read_json(o.store));
  if (!o.connection.empty()) {
    auto conn = load_connection(o.connection);
    check_declarations(prog.decls, &conn);
    try {
      typecheck(prog, conn);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TypeError) throw;
      throw Error(ErrorKind::IllTyped, std::string("refusing to run an ill-typed program: ") + e.what(),
                  e.witness(), e.tag());
    }
  } else {
    check_declarations(prog.decls);
  }
  auto fin = exec(prog, init);
  return make("run", true, Json{{"store", store_to_json(fin)}},
              "ran " + std::to_string(prog.body.size()) + " phrases");
}

Verdict cmd_ni_suite(const Options& o, std::uint64_t seed) {
  auto prog = parse_program(read_text(o.program));
  auto conn = load_connection(o.connection);
  auto r = run_ni_suite(prog.decls, conn, o.trials, o.len, o.stores, seed);
  Json pairs = Json::array();
  for (auto [l, m] : r.pairs) pairs.push_back({conn.left().class_name(l), conn.right().class_name(m)});
  Json examples = Json::array();
  for (const auto& [p, nr] : r.examples) {
    examples.push_back({{"program", print_program(p)},
                        {"variable", nr.variable},
                        {"init_a", store_to_json(nr.init_a)},
                        {"init_b", store_to_json(nr.init_b)},
                        {"final_a", store_to_json(nr.final_a)},
                        {"final_b", store_to_json(nr.final_b)}});
  }
  std::string summary = std::to_string(r.programs) + " programs, " + std::to_string(r.trials) +
                        " trials, " + std::to_string(r.failures) + " failures; seed " +
                        std::to_string(seed);
  return make("ni-suite", r.passed(),
              Json{{"seed", seed},
                   {"programs", r.programs},
                   {"trials", r.trials},
                   {"failures", r.failures},
                   {"adversary_pairs", pairs},
                   {"examples", examples}},
              summary);
}

// ---- dlm -------------------------------------------------------------------

Verdict cmd_dlm_check_hierarchy(const Options& o) {
  Json j = read_json(o.file);
  if (j.is_object() && j.contains("alpha")) {
    auto chk = load_principal_connection(o.file);
    if (!chk.ok()) {
      return make("dlm check-hierarchy", false, Json{{"violations", violations_json(chk.violations)}},
                  "principal maps do not form a Lagois connection\n" + violation_lines(chk.violations));
    }
    const auto& pm = *chk.connection;
    Json alpha = Json::object(), gamma = Json::object();
    for (std::size_t p = 0; p < pm.left().size(); ++p) alpha[pm.left().name(p)] = pm.right().name(pm.alpha()[p]);
    for (std::size_t q = 0; q < pm.right().size(); ++q) gamma[pm.right().name(q)] = pm.left().name(pm.gamma()[q]);
    return make("dlm check-hierarchy", true,
                Json{{"alpha", alpha}, {"gamma", gamma}, {"violations", Json::array()}},
                "principal maps form a Lagois connection");
  }
  auto h = hierarchy_from_json(j);
  Json acts = Json::array();
  for (std::size_t p = 0; p < h->size(); ++p) {
    for (std::size_t q = 0; q < h->size(); ++q) {
      if (p != q && h->acts_for(p, q)) acts.push_back({h->name(p), h->name(q)});
    }
  }
  return make("dlm check-hierarchy", true, Json{{"principals", h->principals()}, {"acts_for", acts}},
              "hierarchy with " + std::to_string(h->size()) + " principals");
}

Verdict cmd_dlm_label_leq(const Options& o) {
  auto h = load_hierarchy(o.file);
  auto l1 = parse_label(o.label1);
  auto l2 = parse_label(o.label2);
  check_label(*h, l1);
  check_label(*h, l2);
  bool leq = label_leq(*h, l1, l2);
  bool geq = label_leq(*h, l2, l1);
  return make("dlm label-leq", leq, Json{{"leq", leq}, {"geq", geq}, {"equivalent", leq && geq}},
              print_label(l1) + (leq ? " <= " : " is not below ") + print_label(l2));
}

Verdict cmd_dlm_lift(const Options& o) {
  auto pm = require_pm(load_principal_connection(o.file), o.file);
  auto dir = parse_direction(o.direction);
  auto label = parse_label(o.label1);
  check_label(dir == Direction::LeftToRight ? pm.left() : pm.right(), label);
  auto lifted = lift_label(pm, dir, label);
  return make("dlm lift", true, Json{{"label", print_label(label)}, {"lifted", print_label(lifted)}},
              print_label(label) + " -> " + print_label(lifted));
}

Verdict cmd_dlm_check_lifted(const Options& o, std::uint64_t seed) {
  auto pm = require_pm(load_principal_connection(o.file), o.file);
  auto r = check_lifted_connection(pm, o.samples, seed);
  Json body = lifted_json(r);
  body["seed"] = seed;
  body["samples"] = o.samples;
  return make("dlm check-lifted", r.passed, std::move(body),
              std::to_string(r.checks) + " checks, " + std::to_string(r.failures.size()) +
                  " failures; seed " + std::to_string(seed));
}

Verdict cmd_dlm_declassify(const Options& o) {
  auto h = load_hierarchy(o.file);
  auto l1 = parse_label(o.label1);
  auto l2 = parse_label(o.label2);
  auto ok = declassify_check(*h, parse_authority(o.authority), l1, l2);
  return make("dlm declassify", ok, Json{{"allowed", ok}},
              print_label(l1) + (ok ? " may be declassified to " : " may not be declassified to ") +
                  print_label(l2));
}

Verdict cmd_dlm_cross_declassify(const Options& o) {
  auto pm = require_pm(load_principal_connection(o.file), o.file);
  auto dir = parse_direction(o.direction);
  auto l1 = parse_label(o.label1);
  auto l2 = parse_label(o.label2);
  auto r = cross_declassify_check(pm, dir, parse_authority(o.authority_left),
                                  parse_authority(o.authority_right), l1, l2);
  std::string summary = std::string("source side ") + (r.source_side ? "allows" : "refuses") +
                        ", target side " + (r.target_side ? "allows" : "refuses");
  if (!r.iff_holds()) summary += "\nthe two sides disagree";
  return make("dlm cross-declassify", r.iff_holds(),
              Json{{"source_side", r.source_side}, {"target_side", r.target_side}, {"iff_holds", r.iff_holds()}},
              summary);
}

Verdict input_error(std::string summary, Json report = nullptr) {
  Verdict v;
  v.status = Status::InputError;
  v.report = std::move(report);
  v.summary = std::move(summary);
  return v;
}

}  // namespace

Verdict cli_dispatch(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Lagois connections between security lattices", "sifc"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Report style")->check(CLI::IsMember({"json", "text"}));

  std::vector<std::pair<CLI::App*, std::function<Verdict(std::uint64_t)>>> handlers;
  auto sub = [&](CLI::App& parent, const char* name, const char* help,
                 std::function<Verdict(std::uint64_t)> fn) {
    CLI::App* s = parent.add_subcommand(name, help);
    handlers.emplace_back(s, std::move(fn));
    return s;
  };
  auto seed_opt = [&](CLI::App* s) { s->add_option("--seed", o.seed, "Random seed (default $SIFC_SEED or 0)"); };
  auto plain = [&](Verdict (*fn)(const Options&)) {
    return [fn, &o](std::uint64_t) { return fn(o); };
  };
  auto seeded = [&](Verdict (*fn)(const Options&, std::uint64_t)) {
    return [fn, &o](std::uint64_t s) { return fn(o, s); };
  };

  auto* s = sub(app, "check-lattice", "Validate a lattice file", plain(cmd_check_lattice));
  s->add_option("lattice", o.file)->required();
  s = sub(app, "check-connection", "Verify LC1-LC4 and report budpoints", seeded(cmd_check_connection));
  s->add_option("connection", o.file)->required();
  seed_opt(s);
  s = sub(app, "find-adjoint", "Synthesise gamma from alpha", plain(cmd_find_adjoint));
  s->add_option("connection", o.file)->required();
  s = sub(app, "build-from-closures", "Build a connection from two closures and an isomorphism",
          plain(cmd_build_from_closures));
  s->add_option("closures", o.file)->required();
  s = sub(app, "compose", "Compose two connections", plain(cmd_compose));
  s->add_option("first", o.file)->required();
  s->add_option("second", o.file2)->required();
  s = sub(app, "decompose", "Split into insertion, isomorphism and insertion", plain(cmd_decompose));
  s->add_option("connection", o.file)->required();
  s = sub(app, "coarsen", "Replace alpha by a coarser map", plain(cmd_coarsen));
  s->add_option("connection", o.file)->required();
  s->add_option("--alpha2", o.alpha2, "JSON object mapping left classes to right classes")->required();
  s = sub(app, "semi-inverse", "Connection from a semi-inverse pair", plain(cmd_semi_inverse));
  s->add_option("maps", o.file)->required();
  s = sub(app, "typecheck", "Type-check a transfer program", plain(cmd_typecheck));
  s->add_option("program", o.program)->required();
  s->add_option("--connection", o.connection)->required();
  s->add_flag("--lint", o.lint, "Flag transfer variables outside the budpoints");
  s = sub(app, "run", "Execute a program on a store pair", plain(cmd_run));
  s->add_option("program", o.program)->required();
  s->add_option("--store", o.store)->required();
  s->add_option("--connection", o.connection, "Type-check first against this connection");
  s = sub(app, "ni-suite", "Non-interference test over generated programs", seeded(cmd_ni_suite));
  s->add_option("program", o.program, "Program file whose declarations are used")->required();
  s->add_option("--connection", o.connection)->required();
  s->add_option("--trials", o.trials, "Number of generated programs");
  s->add_option("--len", o.len, "Maximum body length");
  s->add_option("--stores", o.stores, "Store pairs per trial");
  seed_opt(s);

  CLI::App* dlm = app.add_subcommand("dlm", "Decentralized label model");
  dlm->require_subcommand(1);
  s = sub(*dlm, "check-hierarchy", "Validate a hierarchy or principal connection file",
          plain(cmd_dlm_check_hierarchy));
  s->add_option("file", o.file)->required();
  s = sub(*dlm, "label-leq", "Compare two labels", plain(cmd_dlm_label_leq));
  s->add_option("hierarchy", o.file)->required();
  s->add_option("l1", o.label1)->required();
  s->add_option("l2", o.label2)->required();
  s = sub(*dlm, "lift", "Map a label through the principal connection", plain(cmd_dlm_lift));
  s->add_option("connection", o.file)->required();
  s->add_option("label", o.label1)->required();
  s->add_option("--direction", o.direction)->check(CLI::IsMember({"lr", "rl"}));
  s = sub(*dlm, "check-lifted", "Sample the lifted connection laws", seeded(cmd_dlm_check_lifted));
  s->add_option("connection", o.file)->required();
  s->add_option("--samples", o.samples);
  seed_opt(s);
  s = sub(*dlm, "declassify", "Check a declassification under an authority", plain(cmd_dlm_declassify));
  s->add_option("hierarchy", o.file)->required();
  s->add_option("l1", o.label1)->required();
  s->add_option("l2", o.label2)->required();
  s->add_option("--authority", o.authority, "Comma-separated principals");
  s = sub(*dlm, "cross-declassify", "Declassification across the principal connection",
          plain(cmd_dlm_cross_declassify));
  s->add_option("connection", o.file)->required();
  s->add_option("l1", o.label1)->required();
  s->add_option("l2", o.label2)->required();
  s->add_option("--direction", o.direction)->check(CLI::IsMember({"lr", "rl"}));
  s->add_option("--authority-left", o.authority_left);
  s->add_option("--authority-right", o.authority_right);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    Verdict v;
    v.summary = app.help();
    return v;
  } catch (const CLI::CallForAllHelp&) {
    Verdict v;
    v.summary = app.help("", CLI::AppFormatMode::All);
    return v;
  } catch (const CLI::ParseError& e) {
    return input_error(std::string(e.what()) + "\n" + app.help());
  }

  bool text = o.format == "text";
  for (auto& [cmd, fn] : handlers) {
    if (!cmd->parsed()) continue;
    std::string name = cmd->get_parent() == dlm ? "dlm " + cmd->get_name() : cmd->get_name();
    Verdict v;
    try {
      std::uint64_t seed = o.seed ? *o.seed : default_seed();
      v = fn(seed);
    } catch (const Error& e) {
      Status st = is_finding(e.kind()) ? Status::Fail : Status::InputError;
      v.status = st;
      v.report = Json{{"command", name}, {"status", status_name(st)}, {"error", error_json(e)}};
      v.summary = std::string(to_string(e.kind())) + ": " + e.what();
      if (!e.witness().empty()) {
        v.summary += "\nwitness:";
        for (const auto& w : e.witness()) v.summary += " " + w;
      }
    } catch (const std::exception& e) {
      v = input_error(std::string("error: ") + e.what(),
                      Json{{"command", name}, {"status", "error"}, {"error", {{"kind", "InputError"}, {"message", e.what()}}}});
    }
    v.text = text;
    return v;
  }
  return input_error(app.help());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Verdict v = cli_dispatch(args);
  if (v.report.is_null()) {
    (v.status == Status::Pass ? out : err) << v.summary;
    if (!v.summary.empty() && v.summary.back() != '\n') (v.status == Status::Pass ? out : err) << '\n';
    return exit_code(v.status);
  }
  if (v.text) {
    out << v.summary << '\n';
    for (const auto& [k, val] : v.report.items()) {
      if (k == "command") continue;
      out << k << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << '\n';
    }
  } else {
    out << v.report.dump() << '\n';
    err << v.summary << '\n';
  }
  return exit_code(v.status);
}

}  // namespace sifc
