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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sifc/cli.hpp"
#include "sifc/error.hpp"
#include "test_util.hpp"

using namespace sifc;
using testutil::fixture;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string f(const std::string& rel) { return fixture(rel).string(); }

}  // namespace

TEST(Cli, CheckConnectionPasses) {
  auto r = run({"check-connection", f("college-univ.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["budpoints_left"], Json({"bot1", "Faculty", "CollegePrincipal", "top1"}));
  EXPECT_EQ(j["budpoints_right"], Json({"bot2", "UnivFac", "Dean(Colleges)", "top2"}));
  EXPECT_EQ(j["tightness"]["passed"], true);
  EXPECT_EQ(j["tightness"]["seed"], 0);
}

TEST(Cli, CheckConnectionBroken) {
  auto r = run({"check-connection", f("broken.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find(R"({"condition":"LC2","witness":["ViceChancellor"]})"), std::string::npos) << r.out;
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"check-connection", f("missing.json")}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"check-connection"}).code, 2);
  EXPECT_EQ(run({"check-connection", f("college-univ.json"), "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("check-connection"), std::string::npos);
}

TEST(Cli, FindAdjointMatchesLibrary) {
  auto r = run({"find-adjoint", f("college-univ-alpha.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto conn = testutil::college_univ();
  EXPECT_EQ(r.json()["gamma"], map_to_json(find_adjoint(conn.alpha())));
}

TEST(Cli, BuildFromClosures) {
  auto r = run({"build-from-closures", f("dorm-college-closures.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["alpha"], map_to_json(testutil::dorm_college().alpha()));
}

TEST(Cli, ComposeRefused) {
  auto r = run({"compose", f("dorm-college.json"), f("college-univ.json")});
  EXPECT_EQ(r.code, 1);
  auto j = r.json();
  EXPECT_EQ(j["image_condition"], false);
  EXPECT_EQ(j["image_witness"], "Faculty");
  EXPECT_EQ(j["alpha"]["Caretaker"], "Dean(Colleges)");
  EXPECT_EQ(j["gamma"]["Chancellor"], "top0");
}

TEST(Cli, Decompose) {
  auto r = run({"decompose", f("college-univ.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["round_trip"], true);
  EXPECT_EQ(j["insertion_left"]["right"]["classes"], Json({"bot1", "Faculty", "CollegePrincipal", "top1"}));
}

TEST(Cli, Coarsen) {
  auto r = run({"coarsen", f("college-univ.json"), "--alpha2", f("coarse-alpha.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["gamma"]["UnivFac"], "CollegePrincipal");
  auto bad = run({"coarsen", f("college-univ.json"), "--alpha2", f("coarse-mismatch-alpha.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.json()["error"]["tag"], "RepresentativeMismatch");
}

TEST(Cli, SemiInverse) {
  auto r = run({"semi-inverse", f("semi-inverse.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["violations"][0]["condition"], "LC2");
}

TEST(Cli, Typecheck) {
  auto ok = run({"typecheck", f("example3.sif"), "--connection", f("college-univ.json")});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.json()["type"]["left"], "Faculty");
  auto bad = run({"typecheck", f("leak-literal.sif"), "--connection", f("college-univ.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.json()["error"]["tag"], "TT_RL");
  EXPECT_EQ(bad.json()["error"]["witness"], Json({"Faculty", "Student"}));
  auto lint = run({"typecheck", f("example3.sif"), "--connection", f("college-univ.json"), "--lint"});
  EXPECT_EQ(lint.code, 0);
}

TEST(Cli, Run) {
  auto r = run({"run", f("example3.sif"), "--store", f("example3-store.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["store"]["right"]["z2"], 7);
  auto refused = run({"run", f("leak.sif"), "--store", f("example3-store.json"), "--connection",
                      f("college-univ.json")});
  EXPECT_EQ(refused.code, 1);
}

TEST(Cli, NiSuiteMatchesLibraryAndIsDeterministic) {
  std::vector<std::string> args = {"ni-suite", f("suite.sif"), "--connection", f("college-univ.json"),
                                   "--trials", "20", "--seed", "9", "--len", "10"};
  auto a = run(args);
  auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto conn = testutil::college_univ();
  auto decls = parse_program(read_text(fixture("suite.sif"))).decls;
  auto lib = run_ni_suite(decls, conn, 20, 10, 3, 9);
  EXPECT_EQ(a.json()["trials"], lib.trials);
  EXPECT_EQ(a.json()["seed"], 9);
  EXPECT_NE(a.err.find("seed 9"), std::string::npos);
}

TEST(Cli, DlmCommands) {
  auto h = run({"dlm", "check-hierarchy", f("dlm/left.json")});
  ASSERT_EQ(h.code, 0) << h.err;
  auto pm = run({"dlm", "check-hierarchy", f("dlm/pm.json")});
  ASSERT_EQ(pm.code, 0) << pm.err;
  EXPECT_EQ(run({"dlm", "check-hierarchy", f("dlm/pm-broken.json")}).code, 1);

  auto leq = run({"dlm", "label-leq", f("dlm/left.json"), "{ta:}", "{prof:}"});
  EXPECT_EQ(leq.code, 0);
  EXPECT_EQ(run({"dlm", "label-leq", f("dlm/left.json"), "{prof:}", "{ta:}"}).code, 1);
  EXPECT_EQ(run({"dlm", "label-leq", f("dlm/left.json"), "{nobody:}", "{ta:}"}).code, 2);

  auto lift = run({"dlm", "lift", f("dlm/pm.json"), "{dean: prof}"});
  ASSERT_EQ(lift.code, 0) << lift.err;
  EXPECT_EQ(lift.json()["lifted"], "{chair: tutor}");
  auto back = run({"dlm", "lift", f("dlm/pm.json"), "{guest: lecturer}", "--direction", "rl"});
  EXPECT_EQ(back.json()["lifted"], "{prof: dean}");

  auto lifted = run({"dlm", "check-lifted", f("dlm/pm.json"), "--samples", "100", "--seed", "4"});
  ASSERT_EQ(lifted.code, 0) << lifted.err;
  auto chk = load_principal_connection(fixture("dlm/pm.json"));
  auto lib = check_lifted_connection(*chk.connection, 100, 4);
  EXPECT_EQ(lifted.json()["checks"], lib.checks);

  EXPECT_EQ(run({"dlm", "declassify", f("dlm/left.json"), "{prof:}", "{}", "--authority", "prof"}).code, 0);
  EXPECT_EQ(run({"dlm", "declassify", f("dlm/left.json"), "{prof:}", "{}"}).code, 1);

  auto cross = run({"dlm", "cross-declassify", f("dlm/pm.json"), "{prof:}", "{}", "--authority-left", "prof",
                    "--authority-right", "tutor"});
  ASSERT_EQ(cross.code, 0) << cross.err;
  EXPECT_EQ(cross.json()["source_side"], true);
  EXPECT_EQ(run({"dlm", "cross-declassify", f("dlm/pm.json"), "{prof:}", "{}", "--authority-left", "prof"}).code, 2);
}

TEST(Cli, TextFormat) {
  auto r = run({"--format", "text", "check-connection", f("college-univ.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("budpoints_left:"), std::string::npos);
  EXPECT_THROW(Json::parse(r.out), std::exception);
}

TEST(Cli, CheckLatticeCycle) {
  auto dir = std::filesystem::temp_directory_path() / "sifc_cli_test";
  std::filesystem::create_directories(dir);
  auto p = dir / "cycle.json";
  {
    std::ofstream out(p);
    out << R"({"name":"c","classes":["a","b"],"covers":[["a","b"],["b","a"]]})";
  }
  auto r = run({"check-lattice", p.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["error"]["kind"], "CycleError");
  EXPECT_EQ(run({"check-lattice", f("college.json")}).code, 0);
}
