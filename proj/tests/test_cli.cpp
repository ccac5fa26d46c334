// Copyright 2026 The kickdyn Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "kickdyn/cli.hpp"

namespace kickdyn {
namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"kickdyn"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t columns(const std::string& line) { return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("kickdyn_test_" + name);
}

TEST(ParseConfig, PresetValues) {
  const io::RunConfig c = io::resolve_config(io::Command::timeseries, {}, [] {
    io::Overrides o;
    o.preset = "fig1a";
    return o;
  }());
  EXPECT_EQ(c.initial, NamedState::psi_plus);
  EXPECT_EQ(c.train, io::RunConfig::Train::kicks);
  ASSERT_EQ(c.events.size(), 1u);
  EXPECT_EQ(c.events[0].time, 5.0);
  EXPECT_EQ(c.alpha, 2.0);
  EXPECT_EQ(c.beta, 1.0);
  EXPECT_EQ(c.J, 1.0);
  EXPECT_EQ(c.method, Method::analytic_kick);
}

TEST(ParseConfig, PrecedencePresetFileFlags) {
  const io::Overrides file = io::parse_config_text("preset = fig6b\nalpha = 3\nJ = 0.5\n");
  io::Overrides flags;
  flags.alpha = 4.0;
  const io::RunConfig c = io::resolve_config(io::Command::timeseries, file, flags);
  EXPECT_EQ(*c.preset, "fig6b");
  EXPECT_EQ(c.alpha, 4.0);
  EXPECT_EQ(c.J, 0.5);
  EXPECT_EQ(c.initial, NamedState::ket01);
  EXPECT_EQ(*c.tau, 0.05);
  EXPECT_EQ(c.method, Method::rk4_pulse);
}

TEST(ParseConfig, LaterTrainReplacesPresetTrain) {
  io::Overrides flags;
  flags.preset = "fig1a";
  flags.pulses = io::parse_events("pulses", "5:+,10:-");
  flags.tau = 0.1;
  const io::RunConfig c = io::resolve_config(io::Command::timeseries, {}, flags);
  EXPECT_EQ(c.train, io::RunConfig::Train::pulses);
  EXPECT_EQ(c.method, Method::rk4_pulse);
  EXPECT_EQ(c.events[1].sign, Sign::minus);
}

TEST(ParseConfig, SectionsAndComments) {
  const io::Overrides o = io::parse_config_text(
      "# header\ninitial = psi-\n[pulses]\ntau = 0.15  # width\n5:+\n 10 : - \n");
  ASSERT_TRUE(o.pulses.has_value());
  EXPECT_EQ(o.pulses->size(), 2u);
  EXPECT_EQ((*o.pulses)[1].time, 10.0);
  EXPECT_EQ((*o.pulses)[1].sign, Sign::minus);
  EXPECT_EQ(*o.tau, 0.15);
  EXPECT_EQ(*o.initial, NamedState::psi_minus);
}

TEST(ParseConfig, ErrorsNameTheField) {
  auto message = [](auto&& f) {
    try {
      f();
    } catch (const UsageError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message([] { io::parse_config_text("alpha = 2x\n"); }).find("alpha"), std::string::npos);
  EXPECT_NE(message([] { io::parse_config_text("gamma = 1\n"); }).find("gamma"), std::string::npos);
  EXPECT_NE(message([] { io::parse_config_text("J = 1\nJ = 2\n"); }).find("duplicate"), std::string::npos);
  EXPECT_NE(message([] { io::parse_config_text("kicks = 5:+\npulses = 6:+\n"); }).find("kicks/pulses"), std::string::npos);
  EXPECT_NE(message([] { io::parse_events("kicks", "5:*"); }).find("kicks"), std::string::npos);
  EXPECT_NE(message([] { io::parse_axis("ratio-range", "1:10"); }).find("ratio-range"), std::string::npos);
  EXPECT_NE(message([] {
              io::Overrides o;
              o.preset = "fig42";
              io::resolve_config(io::Command::timeseries, {}, o);
            }).find("preset"),
            std::string::npos);
  EXPECT_NE(message([] {
              io::Overrides o;
              o.kicks = io::parse_events("kicks", "10:+,5:+");
              io::resolve_config(io::Command::timeseries, {}, o);
            }).find("kicks"),
            std::string::npos);
  EXPECT_NE(message([] {
              io::Overrides o;
              o.pulses = io::parse_events("pulses", "5:+");
              io::resolve_config(io::Command::timeseries, {}, o);
            }).find("tau"),
            std::string::npos);
}

TEST(Cli, TimeseriesPreset) {
  const CliRun r = cli({"timeseries", "--preset", "fig1a", "--samples", "251"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 252u);
  EXPECT_EQ(ls[0], "t,C");
  EXPECT_EQ(ls[1], "0,1");
}

TEST(Cli, ContourPresetShape) {
  const CliRun r = cli({"contour", "--preset", "fig5b"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 201u);
  for (const auto& l : ls) EXPECT_EQ(columns(l), 501u);
}

TEST(Cli, CompareColumns) {
  const CliRun r = cli({"compare", "--preset", "fig2a", "--alpha", "3", "--samples", "26"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 27u);
  EXPECT_EQ(ls[0], "t,C,C_noordering,diff");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({"timeseries", "--alpha", "2", "--alpha", "3"}).code, kExitUsage);
  EXPECT_EQ(cli({"timeseries", "--preset", "fig99z"}).code, kExitUsage);
  EXPECT_EQ(cli({"timeseries", "--J", "one"}).code, kExitUsage);
  EXPECT_EQ(cli({"timeseries", "--kicks", "5:+", "--pulses", "5:+", "--tau", "0.1"}).code, kExitUsage);
  EXPECT_EQ(cli({"timeseries", "--pulses", "5:+", "--tau", "0.1", "--method", "analytic-kick"}).code, kExitUsage);
  EXPECT_EQ(cli({"contour", "--preset", "fig1a"}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({}).code, kExitUsage);
  const CliRun r = cli({"timeseries", "--initial", "bogus"});
  EXPECT_NE(r.err.find("initial"), std::string::npos);
}

TEST(Cli, UnwritablePathIsIoError) {
  const CliRun r = cli({"timeseries", "--out", "/nonexistent-dir/x.csv"});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_NE(r.err.find("I/O"), std::string::npos);
}

TEST(Cli, CsvFileGetsSidecarAndIsRewritten) {
  const auto path = temp_path("series.csv");
  {
    std::ofstream f(path);
    f << std::string(100000, 'x');
  }
  const CliRun r = cli({"timeseries", "--preset", "fig3b", "--samples", "11", "--out", path.c_str()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(lines(ss.str()).size(), 12u);
  std::ifstream meta(path.string() + ".meta.json");
  const auto j = nlohmann::json::parse(meta);
  EXPECT_EQ(j["method"], "analytic-kick");
  EXPECT_EQ(j["config"]["preset"], "fig3b");
  EXPECT_EQ(j["config"]["kicks"], "5:+,10:+");
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".meta.json");
}

TEST(Cli, ConfigFileFlag) {
  const auto path = temp_path("run.conf");
  {
    std::ofstream f(path);
    f << "initial = 01\nalpha = 3\nsamples = 6\n[kicks]\n5:+\n10:-\n";
  }
  const CliRun a = cli({"timeseries", "--config", path.c_str(), "--format", "json"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["metadata"]["alpha"], 3.0);
  EXPECT_EQ(j["metadata"]["train"], "kicks[5:+,10:-]");
  EXPECT_EQ(j["C"].size(), 6u);
  const CliRun b = cli({"timeseries", "--config", path.c_str(), "--alpha", "2", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(b.out)["metadata"]["alpha"], 2.0);
  std::filesystem::remove(path);
  EXPECT_EQ(cli({"timeseries", "--config", path.c_str()}).code, kExitIo);
}

TEST(Emit, JsonRoundTripAtTwelveDigits) {
  const CliRun r = cli({"timeseries", "--preset", "fig4b", "--samples", "501", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto values = j["C"].get<std::vector<double>>();
  const CliRun csv = cli({"timeseries", "--preset", "fig4b", "--samples", "501"});
  const auto ls = lines(csv.out);
  ASSERT_EQ(values.size() + 1, ls.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::string cell = ls[k + 1].substr(ls[k + 1].find(',') + 1);
    EXPECT_EQ(values[k], std::stod(cell));
    EXPECT_EQ(io::fmt12(values[k]), cell);
  }
  EXPECT_EQ(j["metadata"]["version"], kVersion);
  EXPECT_EQ(j["metadata"]["method"], "analytic-kick");
  EXPECT_TRUE(j["metadata"]["dt"].is_null());
}

TEST(Emit, ContourJson) {
  const CliRun r = cli({"contour", "--kicks", "5:+,10:+", "--initial", "psi+", "--ratio-range", "1:3:5", "--samples", "7",
                     "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["ratio"].size(), 5u);
  EXPECT_EQ(j["Jt"].size(), 7u);
  EXPECT_EQ(j["C"].size(), 5u);
  EXPECT_TRUE(j["metadata"]["alpha"].is_null());
  EXPECT_EQ(j["metadata"]["config"]["ratio-range"], "1:3:5");
}

TEST(Verify, PassesAndIsDeterministic) {
  const CliRun a = cli({"verify"});
  const CliRun b = cli({"verify"});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("all checks passed"), std::string::npos);
}

TEST(Verify, DetectsCorruptedClosedForm) {
  const ClosedForm corrupted = [](const KickTrain& k, const FieldStrengths& s, CouplingConstants c, double t) {
    BlockPropagator p = closed_form_kick_params(k, s, c, t);
    if (classify(k) == KickShape::plus_plus) p.w = -p.w;
    return p;
  };
  EXPECT_FALSE(check_closed_forms(corrupted).passed);
  EXPECT_TRUE(check_closed_forms().passed);
  std::ostringstream os;
  EXPECT_FALSE(report_verify(run_verify(corrupted), os));
  EXPECT_NE(os.str().find("FAIL  closed forms"), std::string::npos);
}

}  // namespace
}  // namespace kickdyn
