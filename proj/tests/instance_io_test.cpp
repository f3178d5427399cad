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

#include <cmath>
#include <functional>
#include <string>

#include "confl3/confl_model.hpp"
#include "confl3/error.hpp"
#include "confl3/instance_io.hpp"
#include "fixtures.hpp"
#include "json.hpp"

namespace confl3 {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

std::string MessageOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(GeneratorTest, DefaultShape) {
  const Instance inst = Generate(GeneratorParams{}, 1);
  EXPECT_EQ(inst.num_users(), 25 * 18);
  EXPECT_EQ(inst.num_facilities(), 30);
  EXPECT_EQ(inst.num_central_offices(), 5);
  EXPECT_EQ(inst.name, "grid25x18-seed1");
  ASSERT_TRUE(inst.wireless.has_value());
  EXPECT_EQ(inst.wireless->fading.size(), 30u);
  for (const auto& row : inst.wireless->fading) {
    ASSERT_EQ(row.size(), 450u);
    for (double a : row) {
      EXPECT_GE(a, 0.0);
      EXPECT_LE(a, 1.0);
    }
  }
  EXPECT_NEAR(inst.coverage[2], 0.7 * 450, 1e-9);
}

TEST(GeneratorTest, SameSeedSameBytes) {
  const GeneratorParams p;
  EXPECT_EQ(WriteInstance(Generate(p, 42)), WriteInstance(Generate(p, 42)));
  EXPECT_EQ(InstanceHash(Generate(p, 42)), InstanceHash(Generate(p, 42)));
  EXPECT_NE(InstanceHash(Generate(p, 42)), InstanceHash(Generate(p, 43)));
}

TEST(GeneratorTest, FadingIsCappedPathLoss) {
  EXPECT_EQ(PathLossFading(0.0, 1.0, 3.0), 1.0);
  EXPECT_EQ(PathLossFading(0.5, 1.0, 3.0), 1.0);
  EXPECT_NEAR(PathLossFading(2.0, 1.0, 3.0), 0.125, 1e-15);
  EXPECT_NEAR(PathLossFading(4.0, 2.0, 2.0), 0.25, 1e-15);
}

TEST(GeneratorTest, ManySeedsBuildValidModels) {
  GeneratorParams p;
  p.grid_width = 8;
  p.grid_height = 6;
  p.n_facilities = 6;
  p.n_central_offices = 2;
  p.n_steiner = 3;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = Generate(p, seed);
    EXPECT_NO_THROW(ValidateInstance(inst));
    EXPECT_NO_THROW(Build3Confl(inst));
    for (int t = 0; t < kNumTechnologies; ++t) {
      double potential = 0.0;
      for (int f = 0; f < inst.num_facilities(); ++f) potential += inst.PotentialWeight(f, t);
      EXPECT_GE(potential, inst.coverage[t]);
    }
  }
}

TEST(GeneratorTest, UnreachableCoverageIsReported) {
  GeneratorParams p;
  p.grid_width = 6;
  p.grid_height = 6;
  p.n_facilities = 1;
  p.ensure_reach = false;
  p.radius = {0.1, 0.1, 0.1};
  p.max_retries = 3;
  EXPECT_EQ(CodeOf([&] { Generate(p, 1); }), ErrorCode::kUnattainableCoverage);
}

TEST(GeneratorTest, RejectsBadParameters) {
  GeneratorParams p;
  p.coverage_fraction = {0.6, 0.5, 0.7};
  EXPECT_EQ(CodeOf([&] { Generate(p, 1); }), ErrorCode::kInvalidArgument);
  p = GeneratorParams{};
  p.delta = 0.0;
  EXPECT_EQ(CodeOf([&] { Generate(p, 1); }), ErrorCode::kInvalidArgument);
  p = GeneratorParams{};
  p.p_min = 2.0;
  EXPECT_EQ(CodeOf([&] { Generate(p, 1); }), ErrorCode::kInvalidArgument);
}

TEST(JsonTest, RoundTripIsExact) {
  GeneratorParams p;
  p.grid_width = 6;
  p.grid_height = 5;
  p.n_facilities = 5;
  for (uint64_t seed : {1u, 2u, 3u}) {
    const Instance inst = Generate(p, seed);
    const std::string text = WriteInstance(inst);
    const Instance back = ReadInstance(text);
    EXPECT_EQ(WriteInstance(back), text);
    EXPECT_EQ(InstanceHash(back), InstanceHash(inst));
    EXPECT_EQ(Build3Confl(back).model, Build3Confl(inst).model);
  }
}

TEST(JsonTest, NullWirelessMeansWiredOnly) {
  const Instance inst = testing::SingleChain();
  const Instance back = ReadInstance(WriteInstance(inst));
  EXPECT_FALSE(back.wireless.has_value());
}

TEST(JsonTest, MissingWirelessNamesThePath) {
  auto doc = nlohmann::json::parse(WriteInstance(testing::ConflictExample()));
  doc.erase("wireless");
  const std::string text = doc.dump();
  EXPECT_EQ(CodeOf([&] { ReadInstance(text); }), ErrorCode::kSchema);
  EXPECT_NE(MessageOf([&] { ReadInstance(text); }).find("/wireless"), std::string::npos);
}

TEST(JsonTest, SchemaErrorsCarryPaths) {
  auto base = nlohmann::json::parse(WriteInstance(testing::ConflictExample()));
  auto doc = base;
  doc["users"][1]["weight"] = "heavy";
  EXPECT_NE(MessageOf([&] { ReadInstance(doc.dump()); }).find("/users/1/weight"),
            std::string::npos);
  doc = base;
  doc["core_arcs"][0]["head"] = "Q7";
  EXPECT_NE(MessageOf([&] { ReadInstance(doc.dump()); }).find("/core_arcs/0/head"),
            std::string::npos);
  doc = base;
  doc["meta"]["version"] = 9;
  EXPECT_EQ(CodeOf([&] { ReadInstance(doc.dump()); }), ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([] { ReadInstance("{not json"); }), ErrorCode::kSchema);
}

TEST(JsonTest, OutOfRangeFadingIsInvalid) {
  auto doc = nlohmann::json::parse(WriteInstance(testing::ConflictExample()));
  doc["wireless"]["fading"][0][0] = 1.5;
  EXPECT_EQ(CodeOf([&] { ReadInstance(doc.dump()); }), ErrorCode::kInvalidInstance);
}

TEST(ReportTest, DeltaGapExamples) {
  EXPECT_NEAR((ResultRow{"I1", 148.57, 131.23}.DeltaGap()), -11.6712, 1e-4);
  EXPECT_NEAR((ResultRow{"I13", 95.20, 52.08}.DeltaGap()), -45.2941, 1e-4);
  EXPECT_EQ((ResultRow{"same", 12.5, 12.5}.DeltaGap()), 0.0);
  EXPECT_EQ(CodeOf([] { (void)ResultRow{"zero", 0.0, 1.0}.DeltaGap(); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { (void)ResultRow{"neg", -1.0, 1.0}.DeltaGap(); }),
            ErrorCode::kInvalidArgument);
}

TEST(ReportTest, TableAndCsvLayout) {
  const std::vector<ResultRow> rows{{"I1", 148.57, 131.23}, {"I13", 95.20, 52.08},
                                    {"same", 10.0, 10.0}};
  const std::string csv = Report(rows, true);
  EXPECT_EQ(csv,
            "id,gap_ref_pct,gap_heu_pct,delta_gap_pct\n"
            "I1,148.57,131.23,-11.67\n"
            "I13,95.20,52.08,-45.29\n"
            "same,10.00,10.00,0.00\n"
            "average,,,-18.99\n");
  const std::string table = Report(rows, false);
  EXPECT_NE(table.find("ΔGap%"), std::string::npos);
  EXPECT_NE(table.find("-11.67"), std::string::npos);
  EXPECT_NE(table.find("Average"), std::string::npos);
  EXPECT_EQ(Report({}, true), "id,gap_ref_pct,gap_heu_pct,delta_gap_pct\n");
}

}  // namespace
}  // namespace confl3
