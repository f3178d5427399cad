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

#include <string>
#include <vector>

#include "confl3/error.hpp"
#include "confl3/solution_io.hpp"
#include "fixtures.hpp"

namespace confl3 {
namespace {

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kNumerical;
}

std::string Doc(const std::string& method, const std::string& hash, const std::string& gap,
                const std::string& name = "inst") {
  return R"({"format": "confl3-solution", "method": ")" + method +
         R"(", "instance": {"name": ")" + name + R"(", "hash": ")" + hash +
         R"("}, "status": "x", "objective": 10.0, "lower_bound": 5.0, "gap": )" + gap +
         "}";
}

TEST(SolutionSummaryTest, ReadsRequiredFields) {
  const SolutionSummary s = ReadSolutionSummary(Doc("exact", "abc", "0.25"));
  EXPECT_EQ(s.method, "exact");
  EXPECT_EQ(s.instance_hash, "abc");
  EXPECT_EQ(s.objective, 10.0);
  EXPECT_EQ(s.lower_bound, 5.0);
  EXPECT_EQ(s.gap, 0.25);
  EXPECT_FALSE(ReadSolutionSummary(Doc("heuristic", "abc", "null")).gap.has_value());
}

TEST(SolutionSummaryTest, SchemaErrorsNameThePath) {
  try {
    ReadSolutionSummary(R"({"format": "confl3-solution", "method": "exact"})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
    EXPECT_NE(std::string(e.what()).find("/instance"), std::string::npos);
  }
  EXPECT_EQ(CodeOf([] { ReadSolutionSummary("{"); }), ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([] { ReadSolutionSummary(R"({"format": "other"})"); }),
            ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([] { ReadSolutionSummary(Doc("guess", "h", "0.1")); }),
            ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([] { ReadSolutionSummary(Doc("exact", "h", "\"big\"")); }),
            ErrorCode::kSchema);
}

TEST(PairSolutionsTest, PairsByHashInFirstAppearanceOrder) {
  const std::vector<SolutionSummary> in{
      ReadSolutionSummary(Doc("heuristic", "h2", "0.5", "second")),
      ReadSolutionSummary(Doc("exact", "h1", "0.4", "first")),
      ReadSolutionSummary(Doc("exact", "h2", "0.25", "second")),
      ReadSolutionSummary(Doc("heuristic", "h1", "0.2", "first"))};
  const std::vector<ResultRow> rows = PairSolutions(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].id, "second");
  EXPECT_DOUBLE_EQ(rows[0].gap_reference, 25.0);
  EXPECT_DOUBLE_EQ(rows[0].gap_heuristic, 50.0);
  EXPECT_EQ(rows[1].id, "first");
  EXPECT_DOUBLE_EQ(rows[1].DeltaGap(), -50.0);
}

TEST(PairSolutionsTest, RefusesUnpairedOrDuplicated) {
  const SolutionSummary e = ReadSolutionSummary(Doc("exact", "h", "0.1"));
  const SolutionSummary h = ReadSolutionSummary(Doc("heuristic", "h", "0.2"));
  const SolutionSummary other = ReadSolutionSummary(Doc("heuristic", "g", "0.2"));
  const SolutionSummary no_gap = ReadSolutionSummary(Doc("heuristic", "h", "null"));
  EXPECT_EQ(CodeOf([&] { PairSolutions({e}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { PairSolutions({e, other}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { PairSolutions({e, h, h}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { PairSolutions({e, no_gap}); }), ErrorCode::kInvalidArgument);
  EXPECT_TRUE(PairSolutions({}).empty());
}

TEST(ResultCsvTest, HeaderOptionalAndNumbersChecked) {
  const std::vector<ResultRow> rows =
      ReadResultRowsCsv("id,gap_ref_pct,gap_heu_pct\nI1,148.57,131.23\n\nI13,95.20,52.08\r\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].id, "I13");
  EXPECT_DOUBLE_EQ(rows[1].gap_heuristic, 52.08);
  EXPECT_EQ(ReadResultRowsCsv("a,1,2\n").size(), 1u);
  EXPECT_EQ(CodeOf([] { ReadResultRowsCsv("a,1,2\nb,x,3\n"); }), ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([] { ReadResultRowsCsv("a,1\n"); }), ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([] { ReadResultRowsCsv("a,1,2\nb,1.5z,2\n"); }), ErrorCode::kSchema);
}

TEST(ReportTest, ZeroReferenceGapIsNotApplicable) {
  const std::string csv = Report({{"proved", 0.0, 12.0}, {"I1", 148.57, 131.23}}, true);
  EXPECT_EQ(csv,
            "id,gap_ref_pct,gap_heu_pct,delta_gap_pct\n"
            "proved,0.00,12.00,n/a\n"
            "I1,148.57,131.23,-11.67\n"
            "average,,,-11.67\n");
  EXPECT_NE(Report({{"proved", 0.0, 1.0}}, false).find("n/a"), std::string::npos);
}

class SolutionJsonTest : public ::testing::Test {
 protected:
  static Instance Small() {
    GeneratorParams gp;
    gp.grid_width = 3;
    gp.grid_height = 2;
    gp.n_facilities = 3;
    gp.n_central_offices = 1;
    gp.n_steiner = 0;
    return Generate(gp, 2);
  }
};

TEST_F(SolutionJsonTest, HeuristicDocumentRoundTripsAndIsStable) {
  const Instance inst = Small();
  HeuristicParams params;
  params.max_outer_iterations = 1;
  params.rng_seed = 5;
  const RunResult result = confl3::Run(inst, params);
  ASSERT_EQ(result.status, RunStatus::kSolved);
  const std::string doc = HeuristicSolutionJson(inst, params, result);
  EXPECT_EQ(doc, HeuristicSolutionJson(inst, params, confl3::Run(inst, params)));
  EXPECT_NE(doc.find("\"feasible\": true"), std::string::npos);
  EXPECT_NE(doc.find("\"trace\""), std::string::npos);
  const SolutionSummary s = ReadSolutionSummary(doc);
  EXPECT_EQ(s.method, "heuristic");
  EXPECT_EQ(s.instance_hash, InstanceHash(inst));
  EXPECT_EQ(s.objective, result.objective);
  EXPECT_EQ(s.gap, result.gap);
}

TEST_F(SolutionJsonTest, ExactDocumentCarriesZeroGapAtOptimum) {
  const Instance inst = Small();
  const ConflModel confl = Build3Confl(inst);
  const MipResult r = SolveMip(confl.model);
  ASSERT_EQ(r.status, MipStatus::kOptimal);
  const SolutionSummary s = ReadSolutionSummary(ExactSolutionJson(inst, confl, false, r));
  EXPECT_EQ(s.method, "exact");
  EXPECT_EQ(s.status, "optimal");
  ASSERT_TRUE(s.gap.has_value());
  EXPECT_NEAR(*s.gap, 0.0, 1e-9);

  MipResult none;
  none.status = MipStatus::kInfeasible;
  const SolutionSummary empty =
      ReadSolutionSummary(ExactSolutionJson(inst, confl, false, none));
  EXPECT_FALSE(empty.objective.has_value());
  EXPECT_FALSE(empty.gap.has_value());
}

}  // namespace
}  // namespace confl3
