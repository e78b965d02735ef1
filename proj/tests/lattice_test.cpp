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

#include <random>

#include "sifc/error.hpp"
#include "sifc/lattice.hpp"
#include "test_util.hpp"

using namespace sifc;

namespace {

LatticePtr college() { return load_lattice(testutil::fixture("college.json")); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Lattice, CollegeIsValid) {
  auto lat = college();
  EXPECT_EQ(lat->size(), 7u);
  EXPECT_EQ(lat->class_name(lat->top()), "top1");
  EXPECT_EQ(lat->class_name(lat->bottom()), "bot1");
}

TEST(Lattice, SinglePoint) {
  auto lat = build_lattice("one", {"x"}, {});
  EXPECT_EQ(lat->top(), lat->bottom());
  EXPECT_TRUE(lat->leq("x", "x"));
  EXPECT_EQ(lat->join("x", "x"), "x");
}

TEST(Lattice, MissingUpperBoundIsNotALattice) {
  std::vector<ClassPair> covers = {{"bot1", "Student"}, {"Student", "Faculty"}, {"Faculty", "Dean(F)"},
                                   {"Student", "Dean(S)"}};
  try {
    build_lattice("College", {"bot1", "Student", "Dean(S)", "Faculty", "Dean(F)"}, covers);
    FAIL() << "expected NotALattice";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotALattice);
    // The reported pair must really lack an upper bound.
    ASSERT_EQ(e.witness().size(), 2u);
    std::set<std::string> below_dean_f = {"bot1", "Student", "Faculty", "Dean(F)"};
    std::set<std::string> below_dean_s = {"bot1", "Student", "Dean(S)"};
    const auto& a = e.witness()[0];
    const auto& b = e.witness()[1];
    bool common_upper = (below_dean_f.count(a) && below_dean_f.count(b)) ||
                        (below_dean_s.count(a) && below_dean_s.count(b));
    EXPECT_FALSE(common_upper) << a << " " << b;
  }
}

TEST(Lattice, Errors) {
  EXPECT_EQ(kind_of([] { build_lattice("d", {"a", "a"}, {}); }), ErrorKind::DuplicateClass);
  EXPECT_EQ(kind_of([] { build_lattice("u", {"a"}, {{"a", "b"}}); }), ErrorKind::UnknownClass);
  EXPECT_EQ(kind_of([] { build_lattice("c", {"a", "b"}, {{"a", "b"}, {"b", "a"}}); }),
            ErrorKind::CycleError);
  EXPECT_EQ(kind_of([] { build_lattice("e", {}, {}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { build_lattice("n", {"a b"}, {}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { college()->index_of("Nobody"); }), ErrorKind::UnknownClass);
}

TEST(Lattice, CollegeQueries) {
  auto lat = college();
  EXPECT_TRUE(lat->leq("Student", "CollegePrincipal"));
  EXPECT_FALSE(lat->leq("Dean(F)", "Dean(S)"));
  EXPECT_FALSE(lat->leq("Dean(S)", "Dean(F)"));
  EXPECT_EQ(lat->join("Dean(F)", "Dean(S)"), "CollegePrincipal");
  EXPECT_EQ(lat->meet("Dean(F)", "Dean(S)"), "Student");
  for (ClassIndex x = 0; x < lat->size(); ++x) {
    EXPECT_TRUE(lat->leq(x, x));
    EXPECT_EQ(lat->join(x, lat->bottom()), x);
    EXPECT_EQ(lat->meet(x, lat->top()), x);
  }
}

TEST(Lattice, RedundantPairsAccepted) {
  auto lat = build_lattice("chain", {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"a", "b"}});
  EXPECT_EQ(lat->hasse().size(), 2u);
  EXPECT_TRUE(lat->leq("a", "c"));
}

TEST(Lattice, FoldsOfEmptySets) {
  auto lat = college();
  EXPECT_EQ(lat->join_all({}), lat->bottom());
  EXPECT_EQ(lat->meet_all({}), lat->top());
}

// Every random lattice against DFS reachability and brute-force bounds.
TEST(Lattice, AgreesWithOracleOnRandomLattices) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    auto raw = oracle::random_lattice(rng, 9, 4);
    auto lat = oracle::build(raw, "r");
    auto ord = raw.order();
    for (ClassIndex a = 0; a < lat->size(); ++a) {
      for (ClassIndex b = 0; b < lat->size(); ++b) {
        ASSERT_EQ(lat->leq(a, b), ord.leq(a, b));
        ASSERT_EQ(lat->join(a, b), *ord.join(a, b));
        ASSERT_EQ(lat->meet(a, b), *ord.meet(a, b));
        ASSERT_EQ(lat->leq(a, b), lat->join(a, b) == b);
        ASSERT_EQ(lat->leq(a, b), lat->meet(a, b) == a);
      }
    }
  }
}

TEST(Lattice, AlgebraicLaws) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto lat = oracle::build(oracle::random_lattice(rng, 8, 4), "r");
    const auto n = lat->size();
    for (ClassIndex a = 0; a < n; ++a) {
      ASSERT_EQ(lat->join(a, a), a);
      ASSERT_EQ(lat->meet(a, a), a);
      for (ClassIndex b = 0; b < n; ++b) {
        ASSERT_EQ(lat->join(a, b), lat->join(b, a));
        ASSERT_EQ(lat->meet(a, b), lat->meet(b, a));
        ASSERT_EQ(lat->join(a, lat->meet(a, b)), a);
        ASSERT_EQ(lat->meet(a, lat->join(a, b)), a);
        for (ClassIndex c = 0; c < n; ++c) {
          ASSERT_EQ(lat->join(lat->join(a, b), c), lat->join(a, lat->join(b, c)));
          ASSERT_EQ(lat->meet(lat->meet(a, b), c), lat->meet(a, lat->meet(b, c)));
        }
      }
    }
  }
}

TEST(Lattice, NonLatticeShapes) {
  // Two incomparable maxima: no top.
  EXPECT_EQ(kind_of([] { build_lattice("v", {"b", "x", "y"}, {{"b", "x"}, {"b", "y"}}); }),
            ErrorKind::NotALattice);
  // Two incomparable upper bounds of a pair with a common top above both.
  EXPECT_EQ(kind_of([] {
              build_lattice("bowtie", {"b", "x", "y", "p", "q", "t"},
                            {{"b", "x"}, {"b", "y"}, {"x", "p"}, {"y", "p"}, {"x", "q"}, {"y", "q"},
                             {"p", "t"}, {"q", "t"}});
            }),
            ErrorKind::NotALattice);
}

TEST(Lattice, InducedSublattice) {
  auto lat = college();
  std::vector<ClassIndex> members = {lat->index_of("bot1"), lat->index_of("Faculty"),
                                     lat->index_of("CollegePrincipal"), lat->index_of("top1")};
  auto sub = induced_lattice(*lat, "College*", members);
  EXPECT_EQ(sub->size(), 4u);
  EXPECT_TRUE(sub->leq("Faculty", "CollegePrincipal"));
  EXPECT_EQ(sub->name(), "College*");
}

TEST(Lattice, SameStructureIgnoresIndexOrder) {
  auto a = build_lattice("a", {"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  auto b = build_lattice("b", {"z", "x", "y"}, {{"y", "z"}, {"x", "y"}});
  auto c = build_lattice("c", {"x", "y", "z"}, {{"x", "z"}, {"z", "y"}});
  EXPECT_TRUE(a->same_structure(*b));
  EXPECT_FALSE(a->same_structure(*c));
}

TEST(Lattice, JsonRoundTrip) {
  auto lat = college();
  auto again = lattice_from_json(lattice_to_json(*lat));
  EXPECT_EQ(again->classes(), lat->classes());
  EXPECT_TRUE(again->same_structure(*lat));
}
