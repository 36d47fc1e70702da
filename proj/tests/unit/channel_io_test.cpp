// Copyright 2026 The bcc Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bcc/channel_io.hpp"
#include "bcc/error.hpp"
#include "support/generators.hpp"

namespace bcc {
namespace {

using nlohmann::json;

json deterministic_doc() {
  return json::parse(R"({
    "format": "bcc-channel", "format_version": 1, "kind": "deterministic",
    "sizes": {"x": 4, "y1": 2, "y2": 2},
    "labels": {"y1": ["lo", "hi"]},
    "pairs": [[0, 0], [0, 1], ["hi", 0], [1, 1]]
  })");
}

json dense_doc() {
  return json::parse(R"({
    "format": "bcc-channel", "format_version": 1, "kind": "dense",
    "sizes": {"x": 2, "y1": 1, "y2": 2},
    "probs": [[["1/3", "2/3"]], [[0.5, 0.5]]]
  })");
}

std::string location_of(const json& doc) {
  try {
    parse_channel(doc);
  } catch (const ParseError& e) {
    return e.location;
  }
  return "<no error>";
}

TEST(ParseChannel, Deterministic) {
  const ChannelFile f = parse_channel(deterministic_doc());
  ASSERT_TRUE(f.deterministic.has_value());
  EXPECT_EQ(f.kind, ChannelFile::Kind::kDeterministic);
  EXPECT_EQ(f.deterministic->input_size(), 4u);
  EXPECT_EQ((*f.deterministic)[2], (DeterministicChannel::Pair{1, 0}));
  EXPECT_EQ(f.y1_labels, (std::vector<std::string>{"lo", "hi"}));
  EXPECT_DOUBLE_EQ(f.table(3, 1, 1), 1.0);
}

TEST(ParseChannel, DenseWithFractions) {
  const ChannelFile f = parse_channel(dense_doc());
  EXPECT_FALSE(f.deterministic.has_value());
  EXPECT_DOUBLE_EQ(f.table(0, 0, 0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(f.table(1, 0, 1), 0.5);
  EXPECT_THROW(f.as_deterministic(), NotDeterministic);
}

TEST(ParseChannel, BadRowSumNamesInput) {
  json doc = dense_doc();
  doc["probs"][1][0][1] = 0.4;
  try {
    parse_channel(doc);
    FAIL();
  } catch (const RowNotNormalized& e) {
    EXPECT_EQ(e.x, 1u);
    EXPECT_NE(std::string(e.what()).find("x=1"), std::string::npos) << e.what();
  }
}

TEST(ParseChannel, ErrorLocations) {
  json doc = dense_doc();
  doc["probs"][0][0][1] = "2/0";
  EXPECT_EQ(location_of(doc), "/probs/0/0/1");
  doc = dense_doc();
  doc["probs"][1][0] = json::array({0.5});
  EXPECT_EQ(location_of(doc), "/probs/1/0");
  doc = dense_doc();
  doc.erase("sizes");
  EXPECT_EQ(location_of(doc), "");
  doc = dense_doc();
  doc["format_version"] = 2;
  EXPECT_EQ(location_of(doc), "/format_version");
  doc = deterministic_doc();
  doc["pairs"][2][0] = "mid";
  EXPECT_EQ(location_of(doc), "/pairs/2/0");
  doc = deterministic_doc();
  doc["pairs"][3][1] = 2;
  EXPECT_EQ(location_of(doc), "/pairs/3/1");
  doc = deterministic_doc();
  doc["labels"]["y1"] = json::array({"a", "a"});
  EXPECT_EQ(location_of(doc), "/labels/y1/1");
  doc = deterministic_doc();
  doc["kind"] = "sparse";
  EXPECT_EQ(location_of(doc), "/kind");
}

TEST(ParseChannel, NegativeEntry) {
  json doc = dense_doc();
  doc["probs"][1][0] = json::array({1.5, -0.5});
  EXPECT_THROW(parse_channel(doc), NegativeProbability);
}

class ChannelFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("bcc_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override {
    unsetenv("BCC_WORKDIR");
    std::filesystem::remove_all(dir_);
  }
  std::filesystem::path dir_;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST_F(ChannelFiles, RoundTripIsByteIdentical) {
  testing::Engine eng(80);
  const ChannelFile dense = make_channel_file(testing::random_channel(eng, 3, 2, 2));
  const ChannelFile det = parse_channel(deterministic_doc());
  for (const ChannelFile& f : {dense, det}) {
    const auto a = dir_ / "a.json", b = dir_ / "b.json";
    save_channel(a, f);
    save_channel(b, load_channel(a));
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a), canonical_channel_text(f));
    const ChannelFile back = load_channel(a);
    EXPECT_TRUE(std::equal(back.table.probs().begin(), back.table.probs().end(),
                           f.table.probs().begin()));
  }
}

TEST_F(ChannelFiles, WorkdirResolvesRelativePaths) {
  setenv("BCC_WORKDIR", dir_.c_str(), 1);
  save_channel("c.json", parse_channel(deterministic_doc()));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "c.json"));
  EXPECT_EQ(load_channel("c.json").table.input_size(), 4u);
  EXPECT_EQ(resolve_path("/abs/x.json"), std::filesystem::path("/abs/x.json"));
}

TEST_F(ChannelFiles, MissingOrMalformedFile) {
  EXPECT_THROW(load_channel(dir_ / "nope.json"), ParseError);
  std::ofstream(dir_ / "bad.json") << "{ not json";
  EXPECT_THROW(load_channel(dir_ / "bad.json"), ParseError);
}

}  // namespace
}  // namespace bcc
