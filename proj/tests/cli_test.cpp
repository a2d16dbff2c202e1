// Copyright 2026 The Acquihire Authors
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

#include "acquihire/cli.hpp"

#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

namespace acquihire {
namespace {

using testing::Q;

namespace fs = std::filesystem;

const char* kProfile =
    "profile: {pi_F: 49/45, pi_bar_H: 121/45, pi_bar_L: 81/45, "
    "pi_under_H: 25/45, pi_under_L: 36/45, pi_E: 0.9}\n";

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("acquihire_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path Write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path Config(const std::string& name) { return fs::path(ACQUIHIRE_CONFIG_DIR) / name; }

TEST(Config, ParsesSectionsExactly) {
  const RunConfig c = ParseConfig(std::string("variant: cs\n") + kProfile +
                                  "surplus: {cs_F: 196/90, cs_E: 0.4, cs_H: 256/90, cs_L: 225/90}\n"
                                  "lambda: 0.354167\n"
                                  "seed: 7\n");
  EXPECT_EQ(c.variant, Variant::kCs);
  EXPECT_EQ(c.profile->pi_E, Q(9, 10));
  EXPECT_EQ(c.lambda, Q(354167, 1000000));
  EXPECT_EQ(c.surplus->cs_H, Q(256, 90));
  EXPECT_EQ(c.surplus->cs_L, Q(225, 90));
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.Line("lambda"), 4);
  EXPECT_EQ(c.Line("profile.pi_E"), 2);
}

TEST(Config, RejectsLambdaOutsideUnitInterval) {
  try {
    ParseConfig(std::string("variant: baseline\n") + kProfile + "lambda: 1.2\n", "x.yaml");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "lambda");
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("x.yaml:3: lambda"), std::string::npos);
  }
}

TEST(Config, ExactlyOnePrimitivesSource) {
  EXPECT_THROW(ParseConfig("variant: baseline\n"), ConfigError);
  EXPECT_THROW(ParseConfig(std::string("variant: baseline\n") + kProfile +
                           "cournot: {a: 10, b: 5, c: 3, H: 2, L: 1, pi_E: 0.9}\n"),
               ConfigError);
}

TEST(Config, RejectsUnknownKeysAndBadNumbers) {
  EXPECT_THROW(ParseConfig(std::string("variant: baseline\n") + kProfile + "lamda: 0.2\n"),
               ConfigError);
  try {
    ParseConfig(std::string("variant: baseline\n") + kProfile + "tau: abc\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "tau");
  }
  EXPECT_THROW(ParseConfig(std::string("variant: auction\n") + kProfile), ConfigError);
}

TEST(Config, VariantRequirements) {
  const std::string base = kProfile;
  EXPECT_THROW(ParseConfig("variant: tech\n" + base), ConfigError);
  EXPECT_THROW(ParseConfig("variant: partial\n" + base), ConfigError);
  EXPECT_THROW(ParseConfig("variant: labor\n" + base), ConfigError);
  EXPECT_THROW(ParseConfig("variant: surplus_share\n" + base), ConfigError);
  EXPECT_THROW(ParseConfig("variant: cs\n" + base), ConfigError);
  EXPECT_NO_THROW(ParseConfig("variant: tech\ntau: 1\n" + base));
}

TEST(Config, SweepGrids) {
  const std::string base = std::string("variant: baseline\n") + kProfile;
  const RunConfig c = ParseConfig(base + "sweep: {from: 0.1, to: 0.5, points: 5}\n");
  ASSERT_EQ(c.LambdaGrid().size(), 5u);
  EXPECT_EQ(c.LambdaGrid()[1], Q(1, 5));
  EXPECT_TRUE(ParseConfig(base + "sweep: {values: []}\n").sweep->values.empty());
  EXPECT_THROW(ParseConfig(base + "sweep: {values: [0.3]}\n"), ConfigError);
  EXPECT_THROW(ParseConfig(base + "sweep: {values: [0.3, 0.3]}\n"), ConfigError);
  EXPECT_THROW(ParseConfig(base + "sweep: {from: 0.1, to: 0.5, points: 1}\n"), ConfigError);
  EXPECT_THROW(ParseConfig(base + "sweep: {values: [0.5, 1.5]}\n"), ConfigError);
  EXPECT_THROW(ParseConfig(base + "sweep: {parameter: tau, values: [0, 1]}\n"), ConfigError);
}

TEST(Config, CurvesTable) {
  const RunConfig c = ParseConfig(std::string("variant: partial\n") + kProfile +
                                  "curves:\n  family: table\n  rows: [[0, 0.9, 0], [1, 0.3, 1]]\n");
  EXPECT_EQ(c.curves->v(Q(1, 2)), Q(6, 10));
  EXPECT_THROW(ParseConfig(std::string("variant: partial\n") + kProfile +
                           "curves: {family: table, rows: [[0, 0.9, 0], [0.5, 1, 1]]}\n"),
               ConfigError);
}

TEST(Csv, QuotingRoundTrip) {
  Table t;
  t.header = {"a", "b"};
  t.rows = {{"x,y", "say \"hi\""}, {"", "2"}};
  const std::string csv = ToCsv(t);
  EXPECT_EQ(csv, "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n,2\n");
  const Table back = ParseCsv(csv);
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_THROW(ParseCsv("a,b\n1\n"), std::invalid_argument);
}

TEST(Emit, ReportRoundTrip) {
  const ProfitProfile p = testing::Figure1Profile();
  const SurplusProfile s = testing::Figure1Surplus(Q(2, 5));
  std::vector<EquilibriumReport> reports = {
      solve_baseline(p, Q(1, 2), s), solve_baseline(p, Q(1, 5)),
      solve_tech(ToGains(p, Q(1)), Q(3, 10)),
      solve_partial(p, OwnershipCurves::Power(Q(9, 10), Q(3, 10)), Q(3, 10), 51, 3).report};
  for (const auto& r : reports) {
    EXPECT_EQ(ReportFromJson(Json::parse(ToJson(r).dump())), r) << r.variant;
    EXPECT_EQ(ReportFromTable(ParseCsv(ToCsv(ReportToTable(r)))), r) << r.variant;
  }
}

TEST(Sweep, FigureRowAtPointThree) {
  const RunConfig c = ParseConfig(
      "variant: cs\ncournot: {a: 10, b: 5, c: 3, H: 2, L: 1, pi_E: 0.9, cs_E: 0.4}\n"
      "sweep: {values: [0.3, 0.5]}\n");
  const Table t = ToTable(SweepRecords(c));
  EXPECT_EQ(ToCsv(Table{t.header, {}}), "lambda,cs_allowed,cs_banned,cs_onlyH,regime,hoarding\n");
  EXPECT_EQ(t.At(0, "lambda"), "0.3");
  EXPECT_EQ(t.At(0, "cs_allowed"), "2.71378");
  EXPECT_EQ(t.At(0, "hoarding"), "false");
  EXPECT_EQ(t.At(1, "hoarding"), "true");
}

TEST(Sweep, EmptyIsHeaderOnly) {
  TempDir dir;
  const fs::path cfg = dir.Write(
      "e.yaml", "variant: cs\ncournot: {a: 10, b: 5, c: 3, H: 2, L: 1, pi_E: 0.9, cs_E: 0.4}\n"
                "sweep: {values: []}\n");
  const CliRun r = Cli({"sweep", cfg.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "lambda,cs_allowed,cs_banned,cs_onlyH,regime,hoarding\n");
}

TEST(Sweep, SameBytesForAnyThreadCount) {
  const std::string one = Cli({"sweep", Config("figure1_cs04.yaml").string()}).out;
  const std::string four =
      Cli({"sweep", Config("figure1_cs04.yaml").string(), "--threads", "4"}).out;
  EXPECT_EQ(one, four);
  EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 100);
  EXPECT_EQ(one.find('\r'), std::string::npos);
}

TEST(ParallelMap, KeepsOrderAndFirstError) {
  const auto v = ParallelMap<int>(50, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (int i = 0; i < 50; ++i) EXPECT_EQ(v[i], i * i);
  try {
    ParallelMap<int>(20, 3, [](std::size_t i) -> int {
      if (i == 5 || i == 13) throw std::runtime_error(std::to_string(i));
      return 0;
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "5");
  }
}

TEST(Cli, MalformedLambdaExitsTwoNamingField) {
  TempDir dir;
  const fs::path cfg = dir.Write("bad.yaml", std::string("variant: baseline\n") + kProfile +
                                                 "lambda: 1.2\n");
  for (const char* cmd : {"validate", "solve", "sweep", "oracle", "report"}) {
    const CliRun r = Cli({cmd, cfg.string()});
    EXPECT_EQ(r.code, kExitConfig) << cmd;
    EXPECT_NE(r.err.find("lambda"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
  }
}

TEST(Cli, AssumptionFailureExitsTwo) {
  TempDir dir;
  const fs::path cfg = dir.Write(
      "a1.yaml", "variant: baseline\nprofile: {pi_F: 1, pi_bar_H: 3, pi_bar_L: 2.6, "
                 "pi_under_H: 0.4, pi_under_L: 0.9, pi_E: 0.9}\n");
  const CliRun v = Cli({"validate", cfg.string()});
  EXPECT_EQ(v.code, kExitConfig);
  EXPECT_FALSE(Json::parse(v.out).at("ok").get<bool>());
  const CliRun s = Cli({"solve", cfg.string()});
  EXPECT_EQ(s.code, kExitConfig);
  EXPECT_NE(s.err.find("A1(i)"), std::string::npos) << s.err;
  EXPECT_EQ(Cli({"solve", "/nonexistent/x.yaml"}).code, kExitConfig);
  EXPECT_EQ(Cli({}).code, kExitConfig);
  EXPECT_EQ(Cli({"sweep"}).code, kExitConfig);
}

TEST(Cli, Figure1WritesTwoFiles) {
  TempDir dir;
  const CliRun r = Cli({"figure1", "-o", dir.path().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::pair<const char*, const char*> expect[] = {{"0.4", "0.225806"},
                                                        {"0.5", "0.516129"}};
  for (const auto& [share, lcs] : expect) {
    const Table t = ParseCsv(ReadFile(dir.path() / Figure1FileName(share)));
    ASSERT_EQ(t.rows.size(), 99u);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      EXPECT_EQ(t.At(i, "lambda_A"), "0.354167");
      EXPECT_EQ(t.At(i, "lambda_CS"), lcs);
    }
  }
}

TEST(Cli, OutputDirOverride) {
  TempDir dir;
  ::setenv(kOutputDirEnv, dir.path().c_str(), 1);
  const CliRun r = Cli({"sweep", Config("figure1_cs05.yaml").string(), "-o", "sub/out.csv"});
  ::unsetenv(kOutputDirEnv);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(ParseCsv(ReadFile(dir.path() / "sub" / "out.csv")).rows.size(), 99u);
}

TEST(Cli, SweepJsonMatchesCsv) {
  const CliRun csv = Cli({"sweep", Config("tech.yaml").string()});
  const CliRun json = Cli({"sweep", Config("tech.yaml").string(), "--format", "json"});
  ASSERT_EQ(csv.code, 0);
  ASSERT_EQ(json.code, 0);
  const Table t = ParseCsv(csv.out);
  const Json j = Json::parse(json.out);
  ASSERT_EQ(j.at("rows").size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const Json& row = j.at("rows")[i];
    EXPECT_EQ(Cell(RationalFromJson(row.at("lambda_A_tau"))), t.At(i, "lambda_A_tau"));
    EXPECT_EQ(row.at("low_action").get<std::string>(), t.At(i, "low_action"));
  }
}

TEST(Cli, ReportConvertRoundTrip) {
  TempDir dir;
  const fs::path cfg =
      dir.Write("t.yaml", std::string("variant: tech\ntau: 1\nlambda: 0.3\n") + kProfile);
  const fs::path json = dir.path() / "r.json";
  const fs::path csv = dir.path() / "r.csv";
  const fs::path back = dir.path() / "r2.json";
  ASSERT_EQ(Cli({"report", cfg.string(), "-o", json.string()}).code, 0);
  ASSERT_EQ(Cli({"report", "--convert", json.string(), "-o", csv.string()}).code, 0);
  ASSERT_EQ(Cli({"report", "--convert", csv.string(), "-o", back.string()}).code, 0);
  EXPECT_EQ(ReadFile(json), ReadFile(back));
  EXPECT_EQ(Cli({"report", Config("labor.yaml").string()}).code, kExitConfig);
}

TEST(Cli, LaborCsvHeader) {
  const CliRun r = Cli({"labor", Config("labor.yaml").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = ParseCsv(r.out);
  EXPECT_EQ(ToCsv(Table{t.header, {}}),
            "case,hire,layoff,exit,bench_hire,bench_layoff,bench_exit,prop3\n");
  EXPECT_EQ(t.rows.size(), 4u);
}

TEST(Cli, OracleAgreesOnSampleConfigs) {
  for (const char* name : {"baseline.yaml", "tech.yaml", "partial_table.yaml", "dominant.yaml",
                           "nfirm_b2.yaml", "uncertain_order.yaml", "surplus_share.yaml"}) {
    const CliRun r = Cli({"oracle", Config(name).string()});
    EXPECT_EQ(r.code, kExitOk) << name << "\n" << r.err;
    EXPECT_TRUE(Json::parse(r.out).at("agree").get<bool>()) << name;
  }
}

}  // namespace
}  // namespace acquihire
