// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwalk/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"

namespace qwalk {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qwalk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    last_err_ = err.str();
    return code;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  static json header(const std::string& p) {
    const std::string text = slurp(p);
    const std::string prefix = "# qwalk ";
    EXPECT_EQ(text.rfind(prefix, 0), 0u);
    return json::parse(text.substr(prefix.size(), text.find('\n') - prefix.size()));
  }

  // Data rows of a CSV with a leading comment line and a header row.
  static std::vector<std::vector<double>> rows(const std::string& p) {
    std::istringstream is(slurp(p));
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line.rfind("# ", 0), 0u);
    std::getline(is, line);
    std::vector<std::vector<double>> out;
    while (std::getline(is, line)) {
      std::vector<double> r;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
      out.push_back(r);
    }
    return out;
  }

  fs::path dir_;
  std::string last_err_;
};

TEST_F(CliTest, walk_is_left_peaked_with_metadata) {
  ASSERT_EQ(run({"walk", "--steps", "20", "--theta", "1.5707963", "--p-spin", "0", "--p-pos", "0",
                 "--out", path("w.csv")}),
            cli::kOk)
      << last_err_;
  const std::string text = slurp(path("w.csv"));
  const json meta = header(path("w.csv"));
  EXPECT_EQ(meta.at("command"), "walk");
  EXPECT_EQ(meta.at("seed"), 1);
  EXPECT_EQ(meta.at("config").at("steps"), 20);
  EXPECT_TRUE(meta.contains("version"));
  EXPECT_NE(text.find("\nx,probability\n"), std::string::npos);

  const auto r = rows(path("w.csv"));
  ASSERT_EQ(r.size(), 43u);
  std::size_t best = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i][1] > r[best][1]) best = i;
  }
  EXPECT_LT(r[best][0], 0.0);

  const json side = json::parse(slurp(path("w.csv.json")));
  EXPECT_GT(side.at("rms_width").get<double>(), 5.0);
  EXPECT_LT(side.at("mean_position").get<double>(), 0.0);
}

TEST_F(CliTest, zero_steps_is_a_delta) {
  ASSERT_EQ(run({"walk", "--steps", "0", "--out", path("d.csv")}), cli::kOk) << last_err_;
  const auto r = rows(path("d.csv"));
  for (const auto& row : r) EXPECT_EQ(row[1], row[0] == 0.0 ? 1.0 : 0.0);
}

TEST_F(CliTest, trajectory_walk_is_deterministic) {
  const std::vector<std::string> args{"walk", "--steps", "6", "--p-spin", "0.1", "--trajectories",
                                      "500", "--seed", "9"};
  auto a = args, b = args;
  a.insert(a.end(), {"--out", path("a.csv")});
  b.insert(b.end(), {"--out", path("b.csv")});
  ASSERT_EQ(run(a), cli::kOk) << last_err_;
  ASSERT_EQ(run(b), cli::kOk) << last_err_;
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.csv.json")), slurp(path("b.csv.json")));
}

TEST_F(CliTest, widthscan_spreading_laws) {
  ASSERT_EQ(run({"widthscan", "--max-steps", "100", "--p-spin", "1", "--out", path("c.csv")}),
            cli::kOk)
      << last_err_;
  const auto classical = rows(path("c.csv"));
  ASSERT_EQ(classical.size(), 101u);
  for (const auto& r : classical) EXPECT_NEAR(r[1], std::sqrt(r[0]), 1e-8);

  ASSERT_EQ(run({"widthscan", "--max-steps", "100", "--out", path("q.csv")}), cli::kOk);
  const auto quantum = rows(path("q.csv"));
  EXPECT_NEAR(quantum[1][1], 1.0, 1e-12);
  EXPECT_NEAR(quantum[100][1] / quantum[50][1], 2.0, 0.04);
}

TEST_F(CliTest, lg_endpoints) {
  ASSERT_EQ(run({"lg", "--theta", "0", "--theta", "3.1415926", "--out", path("lg.csv")}), cli::kOk)
      << last_err_;
  const auto r = rows(path("lg.csv"));
  ASSERT_EQ(r.size(), 2u);
  for (const auto& row : r) EXPECT_NEAR(row[4], 1.0, 1e-12);
}

TEST_F(CliTest, lg_range_is_sorted) {
  ASSERT_EQ(run({"lg", "--theta-range", "0", "3.141592653589793", "25", "--theta", "0.1",
                 "--out", path("lg.csv")}),
            cli::kOk)
      << last_err_;
  const auto r = rows(path("lg.csv"));
  ASSERT_EQ(r.size(), 26u);
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_LT(r[i - 1][0], r[i][0]);
}

TEST_F(CliTest, electric_full_turn_matches_zero_field) {
  ASSERT_EQ(run({"electric", "--phi", "0", "--steps", "50", "--out", path("e0.csv")}), cli::kOk)
      << last_err_;
  ASSERT_EQ(run({"electric", "--phi", "6.283185307179586", "--steps", "50", "--out",
                 path("e2.csv")}),
            cli::kOk);
  ASSERT_EQ(run({"electric", "--phi", "6.2831853", "--steps", "50", "--out", path("e7.csv")}),
            cli::kOk);
  const auto a = rows(path("e0.csv"));
  for (const char* other : {"e2.csv", "e7.csv"}) {
    const auto b = rows(path(other));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i][1], b[i][1], 1e-12) << other;
  }
}

TEST_F(CliTest, hom_without_interference_losses) {
  ASSERT_EQ(run({"hom", "--overlap", "1", "--survival", "1", "--parity-eff", "0", "--events",
                 "1000", "--out", path("h.json")}),
            cli::kOk)
      << last_err_;
  const json report = json::parse(slurp(path("h.json")));
  EXPECT_EQ(report.at("observed_counts").at("anti_bunched_seen"), 0);
  EXPECT_EQ(report.at("command"), "hom");
  EXPECT_EQ(report.at("config").at("events"), 1000);
}

TEST_F(CliTest, hom_population_and_overlap_are_exclusive) {
  EXPECT_EQ(run({"hom", "--overlap", "0.3", "--ground-state-population", "0.6", "0.6", "--out",
                 path("h.json")}),
            cli::kInvalidArguments);
  EXPECT_FALSE(fs::exists(path("h.json")));
}

TEST_F(CliTest, collide_writes_series) {
  ASSERT_EQ(run({"collide", "--pcoll", "0.2", "--pcoll", "0.5", "--events", "20000", "--out",
                 path("c.csv")}),
            cli::kOk)
      << last_err_;
  const auto r = rows(path("c.csv"));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1][1], 0.5);
  EXPECT_LE(r[1][3], r[1][2]);
  EXPECT_GE(r[1][4], r[1][2]);
  EXPECT_EQ(run({"collide", "--out", path("x.csv")}), cli::kInvalidArguments);
}

TEST_F(CliTest, invalid_flags_exit_two_without_output) {
  EXPECT_EQ(run({"walk", "--steps", "-1", "--out", path("x.csv")}), cli::kInvalidArguments);
  EXPECT_EQ(run({"walk", "--p-spin", "1.5", "--out", path("x.csv")}), cli::kInvalidArguments);
  EXPECT_EQ(run({"walk", "--bogus", "1", "--out", path("x.csv")}), cli::kInvalidArguments);
  EXPECT_EQ(run({"walk", "--steps", "3"}), cli::kInvalidArguments);
  EXPECT_EQ(run({"teleport", "--out", path("x.csv")}), cli::kInvalidArguments);
  EXPECT_EQ(run({"lg", "--mode", "weak", "--out", path("x.csv")}), cli::kInvalidArguments);
  EXPECT_FALSE(fs::exists(path("x.csv")));
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(CliTest, boundary_overflow_exits_three_without_output) {
  EXPECT_EQ(run({"walk", "--steps", "10", "--half-width", "5", "--out", path("x.csv")}),
            cli::kBoundaryOverflow);
  EXPECT_EQ(run({"electric", "--steps", "10", "--half-width", "3", "--out", path("x.csv")}),
            cli::kBoundaryOverflow);
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(CliTest, config_file_supplies_flags) {
  {
    std::ofstream os(path("cfg.json"));
    os << R"({"command": "walk", "steps": 4, "theta": 0.0, "out": ")" << path("cfg.csv")
       << R"(", "seed": 5})";
  }
  ASSERT_EQ(run({"walk", "--config", path("cfg.json"), "--steps", "2"}), cli::kOk) << last_err_;
  const json meta = header(path("cfg.csv"));
  EXPECT_EQ(meta.at("config").at("steps"), 2);
  EXPECT_EQ(meta.at("config").at("theta"), 0.0);
  EXPECT_EQ(meta.at("seed"), 5);
  const auto r = rows(path("cfg.csv"));
  EXPECT_EQ(r[1][1], 1.0);  // x = -2 after two unmixed steps on half width 3
}

TEST_F(CliTest, config_file_rejects_unknown_keys) {
  {
    std::ofstream os(path("bad.json"));
    os << R"({"stepz": 4})";
  }
  EXPECT_EQ(run({"walk", "--config", path("bad.json"), "--out", path("x.csv")}),
            cli::kInvalidArguments);
  {
    std::ofstream os(path("other.json"));
    os << R"({"command": "lg"})";
  }
  EXPECT_EQ(run({"walk", "--config", path("other.json"), "--out", path("x.csv")}),
            cli::kInvalidArguments);
  EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(CliTest, help_exits_zero) { EXPECT_EQ(run({"--help"}), cli::kOk); }

}  // namespace
}  // namespace qwalk
