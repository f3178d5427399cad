// Copyright 2026 The confl3 Authors
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

#include "confl3/error.hpp"
#include "confl3/solver.hpp"
#include "oracles.hpp"

namespace confl3 {
namespace {

TEST(SolveLpTest, SingleLowerBoundRow) {
  Model m;
  const VarId x = m.AddVariable("x", VarKind::kContinuous, 0, 10);
  m.SetObjectiveCoefficient(x, 1.0);
  m.AddConstraint({{{x, 1.0}}, Sense::kGreaterEqual, 3.0, "x>=3"});
  const LpResult r = SolveLp(m);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 3.0, 1e-9);
  EXPECT_NEAR(r.assignment[x], 3.0, 1e-9);
}

TEST(SolveLpTest, DetectsUnbounded) {
  Model m;
  const VarId x = m.AddVariable("x", VarKind::kContinuous, 0, kInfinity);
  m.SetObjectiveCoefficient(x, -1.0);
  EXPECT_EQ(SolveLp(m).status, LpStatus::kUnbounded);
}

TEST(SolveLpTest, DetectsInfeasible) {
  Model m;
  const VarId x = m.AddVariable("x", VarKind::kContinuous, 0, 1);
  const VarId y = m.AddVariable("y", VarKind::kContinuous, 0, 1);
  m.AddConstraint({{{x, 1.0}, {y, 1.0}}, Sense::kGreaterEqual, 3.0, "too-big"});
  EXPECT_EQ(SolveLp(m).status, LpStatus::kInfeasible);
}

TEST(SolveLpTest, RejectsBinaries) {
  Model m;
  m.AddVariable("b", VarKind::kBinary, 0, 1);
  try {
    SolveLp(m);
    FAIL() << "expected contract violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContractViolation);
  }
}

TEST(SolveLpTest, FreeVariablesAndEqualities) {
  Model m;
  const VarId x = m.AddVariable("x", VarKind::kContinuous, -kInfinity, kInfinity);
  const VarId y = m.AddVariable("y", VarKind::kContinuous, -kInfinity, 4);
  m.SetObjectiveCoefficient(x, 1.0);
  m.SetObjectiveCoefficient(y, -1.0);
  m.AddConstraint({{{x, 1.0}, {y, -2.0}}, Sense::kEqual, 1.0, "link"});
  // x = 1 + 2y, objective = 1 + y, y free below -> unbounded
  EXPECT_EQ(SolveLp(m).status, LpStatus::kUnbounded);
  m.AddConstraint({{{x, 1.0}}, Sense::kGreaterEqual, -5.0, "floor"});
  const LpResult r = SolveLp(m);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -2.0, 1e-9);  // y = -3, x = -5
}

Model RandomLp(std::mt19937_64& rng, int n, int m) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> coef(-5, 5);
  Model model;
  std::vector<double> anchor(n);
  for (int j = 0; j < n; ++j) {
    const double up = 1.0 + 9.0 * unit(rng);
    model.AddVariable("x" + std::to_string(j), VarKind::kContinuous, 0.0, up);
    model.SetObjectiveCoefficient(VarId{j}, coef(rng));
    anchor[j] = up * unit(rng);
  }
  for (int i = 0; i < m; ++i) {
    LinearConstraint row;
    double activity = 0.0;
    for (int j = 0; j < n; ++j) {
      const int c = coef(rng);
      if (c == 0) continue;
      row.terms.push_back({VarId{j}, static_cast<double>(c)});
      activity += c * anchor[j];
    }
    const int kind = static_cast<int>(unit(rng) * 3);
    // Most rows keep the anchor feasible; one in five may cut it off.
    const double shift = unit(rng) < 0.8 ? unit(rng) : -2.0 * unit(rng);
    if (kind == 0) {
      row.sense = Sense::kLessEqual;
      row.rhs = activity + shift;
    } else if (kind == 1) {
      row.sense = Sense::kGreaterEqual;
      row.rhs = activity - shift;
    } else {
      row.sense = Sense::kEqual;
      row.rhs = activity;
    }
    row.tag = "r" + std::to_string(i);
    model.AddConstraint(row);
  }
  return model;
}

TEST(SolveLpTest, MatchesVertexEnumerationOnRandomLps) {
  std::mt19937_64 rng(2024);
  int optimal = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Model model = RandomLp(rng, 5, 8);
    const std::optional<double> oracle = testing::VertexEnumerationLp(model);
    const LpResult lp = SolveLp(model);
    if (!oracle) {
      EXPECT_EQ(lp.status, LpStatus::kInfeasible) << "trial " << trial;
      ++infeasible;
      continue;
    }
    ASSERT_EQ(lp.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(lp.objective, *oracle, 1e-6) << "trial " << trial;
    EXPECT_TRUE(Evaluate(model, lp.assignment, 1e-6).feasible());
    ++optimal;
  }
  EXPECT_GT(optimal, 20);
  EXPECT_GT(infeasible, 0);
}

TEST(SolveMipTest, CoverOfTwoBinaries) {
  Model m;
  const VarId x1 = m.AddVariable("x1", VarKind::kBinary, 0, 1);
  const VarId x2 = m.AddVariable("x2", VarKind::kBinary, 0, 1);
  m.SetObjectiveCoefficient(x1, 1.0);
  m.SetObjectiveCoefficient(x2, 1.0);
  m.AddConstraint({{{x1, 1.0}, {x2, 1.0}}, Sense::kGreaterEqual, 1.0, "cover"});
  const MipResult r = SolveMip(m);
  ASSERT_EQ(r.status, MipStatus::kOptimal);
  EXPECT_NEAR(r.objective, 1.0, 1e-9);
  EXPECT_NEAR(r.lower_bound, 1.0, 1e-9);
}

TEST(SolveMipTest, ContradictoryFixingIsInfeasible) {
  Model m;
  const VarId x1 = m.AddVariable("x1", VarKind::kBinary, 0, 1);
  m.AddConstraint({{{x1, 1.0}}, Sense::kGreaterEqual, 1.0, "x1>=1"});
  const MipResult r = SolveMip(ApplyFixings(m, {{x1, 0.0}}));
  EXPECT_EQ(r.status, MipStatus::kInfeasible);
  EXPECT_FALSE(r.has_incumbent());
}

TEST(SolveMipTest, RejectsNonPositiveTimeLimit) {
  MipOptions options;
  options.time_limit = 0.0;
  EXPECT_THROW(SolveMip(Model{}, options), Error);
}

Model RandomMip(std::mt19937_64& rng, int binaries, int continuous, int rows) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> coef(-4, 6);
  Model model;
  for (int j = 0; j < binaries; ++j) {
    model.AddVariable("b" + std::to_string(j), VarKind::kBinary, 0, 1);
    model.SetObjectiveCoefficient(VarId{j}, coef(rng));
  }
  for (int j = 0; j < continuous; ++j) {
    const VarId v = model.AddVariable("c" + std::to_string(j),
                                      VarKind::kContinuous, 0, 3);
    model.SetObjectiveCoefficient(v, coef(rng) * 0.5);
  }
  const int n = binaries + continuous;
  for (int i = 0; i < rows; ++i) {
    LinearConstraint row;
    for (int j = 0; j < n; ++j) {
      if (unit(rng) < 0.5) continue;
      const int c = coef(rng);
      if (c != 0) row.terms.push_back({VarId{j}, static_cast<double>(c)});
    }
    row.sense = unit(rng) < 0.5 ? Sense::kLessEqual : Sense::kGreaterEqual;
    row.rhs = row.sense == Sense::kLessEqual ? 2.0 + 4 * unit(rng)
                                             : -2.0 + 3 * unit(rng);
    model.AddConstraint(row);
  }
  return model;
}

TEST(SolveMipTest, MatchesEnumerationAndDominatesRelaxation) {
  std::mt19937_64 rng(99);
  int solved = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Model model = RandomMip(rng, 6 + trial % 5, 2, 5);
    const testing::EnumerationResult oracle = testing::EnumerateBinaries(model);
    const MipResult mip = SolveMip(model);
    if (!oracle.optimum) {
      EXPECT_EQ(mip.status, MipStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(mip.status, MipStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(mip.objective, *oracle.optimum, 1e-6) << "trial " << trial;
    EXPECT_LE(mip.lower_bound, mip.objective + 1e-9);
    const Evaluation eval = Evaluate(model, *mip.incumbent, 1e-6);
    EXPECT_TRUE(eval.feasible());
    EXPECT_NEAR(eval.objective, mip.objective, 1e-9);
    const LpResult lp = SolveLp(LpRelaxation(model));
    ASSERT_EQ(lp.status, LpStatus::kOptimal);
    EXPECT_LE(lp.objective, mip.objective + 1e-6);
    ++solved;
  }
  EXPECT_GT(solved, 15);
}

TEST(SolveMipTest, DeterministicAcrossRuns) {
  std::mt19937_64 rng(5);
  const Model model = RandomMip(rng, 12, 3, 8);
  const MipResult a = SolveMip(model);
  const MipResult b = SolveMip(model);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.nodes, b.nodes);
  EXPECT_EQ(a.objective, b.objective);
  if (a.incumbent) EXPECT_EQ(*a.incumbent, *b.incumbent);
}

TEST(SolveMipTest, NodeLimitReportsValidBound) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Model model = RandomMip(rng, 14, 2, 8);
    MipOptions limited;
    limited.node_limit = 3;
    const MipResult partial = SolveMip(model, limited);
    const MipResult full = SolveMip(model);
    if (full.status != MipStatus::kOptimal) continue;
    EXPECT_LE(partial.lower_bound, full.objective + 1e-6);
    if (partial.has_incumbent()) {
      EXPECT_GE(partial.objective, full.objective - 1e-6);
    }
  }
}

}  // namespace
}  // namespace confl3
