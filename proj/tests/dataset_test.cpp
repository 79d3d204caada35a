// Copyright 2026 The cfprelease Authors
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

#include "cfp/dataset.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "cfp/errors.hpp"
#include "json.hpp"
#include "test_util.hpp"

namespace cfp {
namespace {

using ::testing::HasSubstr;

class DatasetDirTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = std::filesystem::temp_directory_path() /
            ("cfp_dataset_test_" +
             std::string(::testing::UnitTest::GetInstance()
                             ->current_test_info()
                             ->name()));
    std::filesystem::remove_all(root_);
  }
  void TearDown() override { std::filesystem::remove_all(root_); }

  std::filesystem::path root_;
};

TEST_F(DatasetDirTest, GraphRoundTrip) {
  const LoadedGraph loaded = testing::LoadString("10 20\n20 30\n30 30\n20 10\n");
  const DatasetDir dir(root_);
  dir.WriteGraph("toy", loaded);
  EXPECT_EQ(dir.ReadGraph(), loaded.graph);
  EXPECT_EQ(dir.ReadName(), "toy");
  std::ifstream meta(dir.meta_path());
  const auto j = nlohmann::json::parse(meta);
  EXPECT_EQ(j["nodes"], 3);
  EXPECT_EQ(j["edges"], 2);
  EXPECT_EQ(j["self_loops_dropped"], 1);
  EXPECT_EQ(j["duplicates_dropped"], 1);
}

TEST_F(DatasetDirTest, PublicAndSpecRoundTrip) {
  const LoadedGraph loaded = testing::LoadString("10 20\n20 30\n30 40\n");
  const Graph& g = loaded.graph;
  const DatasetDir dir(root_);
  dir.WriteGraph("toy", loaded);
  const PublicLabeling lab = testing::MakeLabeling(4, {0, 3});
  EXPECT_FALSE(dir.HasPublic());
  dir.WritePublic(g, lab);
  EXPECT_TRUE(dir.HasPublic());
  EXPECT_EQ(dir.ReadPublic(g), lab);

  const PrivacySpec spec(lab, {0.1, 16.0});
  dir.WriteSpec(g, spec);
  EXPECT_EQ(dir.ReadSpec(g, lab), spec);
  std::ifstream in(dir.spec_path());
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_THAT(text.str(), HasSubstr("node,epsilon\n20,0.1"));
}

TEST_F(DatasetDirTest, BadSpecLinesReportLineNumbers) {
  const LoadedGraph loaded = testing::LoadString("10 20\n20 30\n");
  const DatasetDir dir(root_);
  dir.WriteGraph("toy", loaded);
  const PublicLabeling lab = testing::MakeLabeling(3, {0});
  {
    std::ofstream out(dir.spec_path());
    out << "node,epsilon\n20,1\n30,abc\n";
  }
  try {
    dir.ReadSpec(loaded.graph, lab);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  {
    std::ofstream out(dir.spec_path());
    out << "node,epsilon\n20,1\n99,1\n";
  }
  EXPECT_THROW(dir.ReadSpec(loaded.graph, lab), ValidationError);
}

TEST_F(DatasetDirTest, MissingFilesAreValidationErrors) {
  const DatasetDir dir(root_);
  EXPECT_THROW(dir.ReadGraph(), ValidationError);
}

TEST(DenseIdTest, MapsOriginalIds) {
  const LoadedGraph loaded = testing::LoadString("5 900\n");
  EXPECT_EQ(DenseId(loaded.graph, 5), 0u);
  EXPECT_EQ(DenseId(loaded.graph, 900), 1u);
  EXPECT_THROW(DenseId(loaded.graph, 6), ValidationError);
}

TEST(ReleaseOutputTest, CsvAndSidecar) {
  const LoadedGraph loaded = testing::LoadString("10 11\n11 12\n12 13\n");
  const Graph& g = loaded.graph;
  const PublicLabeling lab = testing::MakeLabeling(4, {0, 3});
  const PrivacySpec spec(lab, {16.0, 16.0});
  MechanismConfig cfg;
  cfg.mechanism = Mechanism::kDeba;
  cfg.seed = 5;
  NoiseSource zero = NoiseSource::ZeroNoise();
  const ReleaseReport report = RunDeba(g, lab, spec, cfg, zero);

  std::ostringstream csv;
  WriteReleaseCsv(csv, FillNulls(report), lab, g);
  EXPECT_EQ(csv.str(), "node,k1,k2,k3,k4\n11,1,1,1,0\n12,1,1,1,0\n");

  std::ostringstream sidecar;
  WriteReleaseSidecar(sidecar, report, cfg);
  const auto j = nlohmann::json::parse(sidecar.str());
  EXPECT_EQ(j["mechanism"], "deba");
  EXPECT_EQ(j["seed"], 5);
  ASSERT_EQ(j["steps"].size(), 4u);
  EXPECT_EQ(j["steps"][0]["published"], true);
  EXPECT_TRUE(j["steps"][0]["noisy_dist"].is_null());
  EXPECT_EQ(j["steps"][1]["published"], false);
  EXPECT_EQ(j["steps"][2]["noisy_dist"], 1.0);
  EXPECT_NEAR(j["distance_fraction"].get<double>(), 3.0 / 8, 1e-15);
}

}  // namespace
}  // namespace cfp
