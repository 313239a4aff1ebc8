// Copyright 2026 The PP-ADRC Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ppadrc/network/graph.h"

#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "ppadrc/base/errors.h"
#include "ppadrc/base/random.h"
#include "test_util.h"

namespace ppadrc {
namespace {

using ::ppadrc::testing::IsOk;
using ::ppadrc::testing::StatusIs;
using ::testing::ElementsAre;
using ::testing::Pair;

DiGraph FromEdges(int n, const std::vector<std::pair<int, int>>& edges) {
  DiGraph g(n);
  for (const auto& [from, to] : edges) EXPECT_THAT(g.AddEdge(from, to), IsOk());
  return g;
}

// Transitive closure by Floyd-Warshall; some vertex is reached by all.
bool ClosureOracle(const DiGraph& g) {
  const int n = g.n();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int v = 0; v < n; ++v) r[v][v] = true;
  for (const auto& [from, to] : g.Edges()) r[from][to] = true;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (r[i][k] && r[k][j]) r[i][j] = true;
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    bool all = true;
    for (int u = 0; u < n; ++u) all = all && r[u][v];
    if (all) return true;
  }
  return false;
}

TEST(DiGraphTest, RejectsSelfLoopsAndRange) {
  DiGraph g(3);
  EXPECT_THAT(g.AddEdge(1, 1), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(g.AddEdge(0, 3), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(g.AddEdge(0, 2), IsOk());
  EXPECT_THAT(g.AddEdge(0, 2), IsOk());
  EXPECT_EQ(g.EdgeCount(), 1);
  EXPECT_TRUE(g.HasEdge(0, 2));
  EXPECT_FALSE(g.HasEdge(2, 0));
}

TEST(UnionGraphTest, Examples) {
  const DiGraph g = FromEdges(3, {{0, 1}, {2, 0}});
  const DiGraph twice[] = {g, g};
  EXPECT_EQ(*UnionGraph(twice), g);
  const DiGraph parts[] = {FromEdges(3, {{0, 1}}), FromEdges(3, {{1, 2}})};
  EXPECT_THAT(UnionGraph(parts)->Edges(), ElementsAre(Pair(0, 1), Pair(1, 2)));
  const DiGraph empty[] = {DiGraph(3), DiGraph(3)};
  EXPECT_EQ(UnionGraph(empty)->EdgeCount(), 0);
  const DiGraph mixed[] = {DiGraph(3), DiGraph(4)};
  EXPECT_THAT(UnionGraph(mixed).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(UnionGraphTest, AssociativeAndCommutative) {
  Stream s(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<DiGraph> gs;
    for (int k = 0; k < 3; ++k) {
      DiGraph g(5);
      for (int e = 0; e < 5; ++e) {
        const int a = s.UniformInt(5);
        const int b = s.UniformInt(5);
        if (a != b) ASSERT_THAT(g.AddEdge(a, b), IsOk());
      }
      gs.push_back(g);
    }
    const DiGraph ab[] = {gs[0], gs[1]};
    const DiGraph ba[] = {gs[1], gs[0]};
    EXPECT_EQ(*UnionGraph(ab), *UnionGraph(ba));
    const DiGraph left[] = {*UnionGraph(ab), gs[2]};
    const DiGraph bc[] = {gs[1], gs[2]};
    const DiGraph right[] = {gs[0], *UnionGraph(bc)};
    EXPECT_EQ(*UnionGraph(left), *UnionGraph(right));
  }
}

TEST(JointReachabilityTest, Examples) {
  const DiGraph complete[] = {DiGraph::Complete(4)};
  EXPECT_TRUE(*IsJointlyReachable(complete));
  const DiGraph edgeless[] = {DiGraph(3), DiGraph(3)};
  EXPECT_FALSE(*IsJointlyReachable(edgeless));
  const DiGraph chain[] = {FromEdges(3, {{0, 1}}), FromEdges(3, {{1, 2}})};
  EXPECT_TRUE(*IsJointlyReachable(chain));
  const DiGraph split[] = {FromEdges(4, {{0, 1}, {2, 3}})};
  EXPECT_FALSE(*IsJointlyReachable(split));
  EXPECT_THAT(IsJointlyReachable({}).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(JointReachabilityTest, AgreesWithClosureOracle) {
  Stream s(11);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + trial % 5;
    DiGraph g(n);
    const double density = s.Uniform(0.0, 0.6);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b && s.Uniform() < density) ASSERT_THAT(g.AddEdge(a, b), IsOk());
      }
    }
    const DiGraph one[] = {g};
    EXPECT_EQ(*IsJointlyReachable(one), ClosureOracle(g)) << "trial " << trial;
  }
}

TEST(RepeatedReachabilityTest, Examples) {
  const std::vector<int> faulty = {3};
  GraphSchedule complete{4, {DiGraph::Complete(4), DiGraph::Complete(4)},
                         {0, 1}};
  EXPECT_TRUE(*CheckRepeatedReachability(complete, faulty));

  // Only the faulty agent talks in the second window.
  GraphSchedule broken{4,
                       {DiGraph::Complete(4), FromEdges(4, {{3, 0}, {3, 1}})},
                       {0, 1}};
  EXPECT_FALSE(*CheckRepeatedReachability(broken, faulty));

  // Windows of three graphs whose union is an in-tree rooted at 0.
  GraphSchedule tree{5,
                     {FromEdges(5, {{1, 0}}), FromEdges(5, {{2, 0}}),
                      FromEdges(5, {{3, 1}, {4, 2}}), FromEdges(5, {{4, 0}}),
                      FromEdges(5, {{3, 4}, {1, 0}}),
                      FromEdges(5, {{2, 3}})},
                     {0, 3}};
  EXPECT_TRUE(*CheckRepeatedReachability(tree, {}));
  const std::vector<int> out_of_range = {7};
  EXPECT_THAT(CheckRepeatedReachability(tree, out_of_range).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(FaultConditionTest, Examples) {
  // Agent 0 hears agents 1..9; agents 8 and 9 (and then 7) are faulty.
  DiGraph g(10);
  for (int j = 1; j < 10; ++j) ASSERT_THAT(g.AddEdge(j, 0), IsOk());
  const std::vector<int> two = {8, 9};
  const std::vector<int> three = {7, 8, 9};
  EXPECT_TRUE(FaultConditionOk(g, two, 2));
  EXPECT_FALSE(FaultConditionOk(g, three, 2));
  EXPECT_TRUE(FaultConditionOk(DiGraph(4), {}, 2));
  EXPECT_TRUE(FaultConditionOk(g, {}, 3));
}

TEST(GenerateScheduleTest, CompletePolicy) {
  const std::vector<int> faulty = {8, 9};
  auto s = GenerateSchedule({TopologyKind::kComplete}, 10, faulty, 2, 20, 1);
  ASSERT_THAT(s, IsOk());
  for (const DiGraph& g : s->graphs) {
    for (int i = 0; i < 8; ++i) EXPECT_EQ(g.in_neighbors(i).size(), 9);
    EXPECT_TRUE(g.in_neighbors(8).empty());
  }
  EXPECT_TRUE(*CheckRepeatedReachability(*s, faulty));
}

TEST(GenerateScheduleTest, RandomKInMeetsFaultCondition) {
  const std::vector<int> faulty = {8, 9};
  auto s = GenerateSchedule({TopologyKind::kRandomKIn, 9}, 10, faulty, 2, 50,
                            7);
  ASSERT_THAT(s, IsOk());
  auto sparse = GenerateSchedule({TopologyKind::kRandomKIn, 7}, 10, faulty, 2,
                                 200, 7, {.window_len = 2});
  ASSERT_THAT(sparse, IsOk());
  for (const GraphSchedule* sched : {&*s, &*sparse}) {
    for (const DiGraph& g : sched->graphs) {
      EXPECT_TRUE(FaultConditionOk(g, faulty, 2));
    }
    EXPECT_TRUE(*CheckRepeatedReachability(*sched, faulty));
  }
  EXPECT_EQ(sparse->windows.size(), 100);
}

TEST(GenerateScheduleTest, InfeasiblePolicies) {
  const std::vector<int> faulty = {8, 9};
  auto small = GenerateSchedule({TopologyKind::kRandomKIn, 3}, 10, faulty, 2,
                                10, 1);
  EXPECT_TRUE(IsInfeasiblePolicy(small.status())) << small.status();
  const std::vector<int> many = {5, 6, 7, 8, 9};
  auto complete = GenerateSchedule({TopologyKind::kComplete}, 10, many, 3, 10,
                                   1);
  EXPECT_TRUE(IsInfeasiblePolicy(complete.status())) << complete.status();
}

// Two faulty in-neighbors need more than 2 * (d + 1) in-neighbors in all.
TEST(CheckPolicyFeasibleTest, FaultFractionBoundary) {
  EXPECT_TRUE(IsInfeasiblePolicy(
      CheckPolicyFeasible({TopologyKind::kRandomKIn, 6}, 8, 2, 2)));
  EXPECT_THAT(CheckPolicyFeasible({TopologyKind::kRandomKIn, 7}, 8, 2, 2),
              IsOk());
  EXPECT_TRUE(IsInfeasiblePolicy(
      CheckPolicyFeasible({TopologyKind::kRandomKIn, 8}, 8, 2, 3)));
  EXPECT_THAT(CheckPolicyFeasible({TopologyKind::kOneFaulty}, 10, 2, 3),
              IsOk());
  EXPECT_THAT(CheckPolicyFeasible({TopologyKind::kComplete}, 5, 1, 2),
              IsOk());
  EXPECT_TRUE(IsInfeasiblePolicy(
      CheckPolicyFeasible({TopologyKind::kComplete}, 4, 2, 2)));
  EXPECT_THAT(CheckPolicyFeasible({TopologyKind::kComplete}, 4, 0, 3),
              IsOk());
}

TEST(GenerateScheduleTest, OneFaultyPolicy) {
  const std::vector<int> faulty = {10, 11};
  auto s = GenerateSchedule({TopologyKind::kOneFaulty}, 12, faulty, 3, 100, 5);
  ASSERT_THAT(s, IsOk());
  int hears_ten = 0;
  for (const DiGraph& g : s->graphs) {
    EXPECT_TRUE(FaultConditionOk(g, faulty, 3));
    for (int i = 0; i < 10; ++i) {
      ASSERT_EQ(g.in_neighbors(i).size(), 10);
      hears_ten += g.HasEdge(10, i) ? 1 : 0;
    }
  }
  EXPECT_GT(hears_ten, 300);
  EXPECT_LT(hears_ten, 700);
}

TEST(GenerateScheduleTest, PostHocValidationOverSeeds) {
  const std::vector<int> faulty = {0, 5};
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const int window = 1 + seed % 4;
    auto s = GenerateSchedule({TopologyKind::kRandomKIn, 7 + static_cast<int>(seed % 3)},
                              10, faulty, 2, 40, seed,
                              {.window_len = window});
    ASSERT_THAT(s, IsOk());
    EXPECT_EQ(s->horizon(), 40);
    for (const DiGraph& g : s->graphs) {
      EXPECT_TRUE(FaultConditionOk(g, faulty, 2));
    }
    EXPECT_TRUE(*CheckRepeatedReachability(*s, faulty));
  }
}

TEST(GenerateScheduleTest, DeterministicGivenSeed) {
  const std::vector<int> faulty = {1};
  auto a = GenerateSchedule({TopologyKind::kRandomKIn, 5}, 8, faulty, 2, 30, 9);
  auto b = GenerateSchedule({TopologyKind::kRandomKIn, 5}, 8, faulty, 2, 30, 9);
  auto c = GenerateSchedule({TopologyKind::kRandomKIn, 5}, 8, faulty, 2, 30,
                            10);
  ASSERT_THAT(a, IsOk());
  EXPECT_EQ(a->graphs, b->graphs);
  EXPECT_EQ(ScheduleDigest(*a), ScheduleDigest(*b));
  EXPECT_NE(ScheduleDigest(*a), ScheduleDigest(*c));
}

TEST(ScheduleTextTest, RoundTrip) {
  const std::vector<int> faulty = {2};
  auto s = GenerateSchedule({TopologyKind::kRandomKIn, 4}, 7, faulty, 2, 12, 3,
                            {.window_len = 3});
  ASSERT_THAT(s, IsOk());
  const std::string text = SerializeSchedule(*s);
  auto back = ParseSchedule(text);
  ASSERT_THAT(back, IsOk());
  EXPECT_EQ(back->graphs, s->graphs);
  EXPECT_EQ(back->windows, s->windows);
  EXPECT_EQ(ScheduleDigest(*back), ScheduleDigest(*s));
}

TEST(ScheduleTextTest, RejectsMalformedLines) {
  EXPECT_THAT(ParseSchedule("0 1>2\n").status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParseSchedule("n 3\n0 1>1\n").status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParseSchedule("n 3\n1 0>1\n").status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParseSchedule("n 3\n0 0-1\n").status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  auto ok = ParseSchedule("n 3\n0 0>1 2>1\n1\n");
  ASSERT_THAT(ok, IsOk());
  EXPECT_EQ(ok->horizon(), 2);
  EXPECT_EQ(ok->windows, (std::vector<int>{0, 1}));
}

}  // namespace
}  // namespace ppadrc
