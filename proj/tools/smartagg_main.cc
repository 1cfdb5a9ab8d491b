/*
 * Copyright 2026 The smartagg Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// smartagg: key setup, protocol simulation and error-rate experiments.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or config error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "smartagg/error.h"
#include "smartagg/experiments.h"
#include "smartagg/provisioning.h"
#include "smartagg/selftest.h"
#include "smartagg/simnet.h"

namespace fs = std::filesystem;
using namespace smartagg;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) {
    throw IoFailure("cannot write " + path.string());
  }
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create " + dir.string() + ": " + ec.message());
}

fs::path MeterKeyPath(const fs::path& dir, size_t group, size_t position) {
  return dir / "meters" /
         ("meter_" + std::to_string(group) + "_" + std::to_string(position) + ".key");
}

struct KeygenArgs {
  unsigned bits = 512;
  size_t group_size = 10;
  size_t groups = 10;
  uint64_t seed = 1;
  std::string out;
  bool emit_factors = false;
  std::string generator = "random";
};

int RunKeygen(const KeygenArgs& args) {
  KicOptions options;
  options.generator = args.generator == "n-plus-one" ? GeneratorChoice::kNPlusOne
                                                     : GeneratorChoice::kRandom;
  RandomSource rng(args.seed);
  Deployment dep = KicSetup(args.bits, args.group_size, args.groups, rng, options);
  fs::path out(args.out);
  EnsureDir(out / "meters");
  WriteFile(out / "params.txt", FormatParams(dep.params));
  WriteFile(out / "aggregator.txt", FormatAggregator(dep.aggregator));
  for (size_t g = 0; g < dep.meters.size(); ++g) {
    for (size_t i = 0; i < dep.meters[g].size(); ++i) {
      WriteFile(MeterKeyPath(out, g, i), FormatMeterKey(dep.meters[g][i]));
    }
  }
  if (args.emit_factors) WriteFile(out / "factors.txt", FormatFactors(dep.keys.factors));
  std::cout << "wrote params, aggregator and " << dep.params.meter_count()
            << " meter keys to " << out.string() << "\n";
  return 0;
}

struct SimulateArgs {
  std::string config;
  size_t rounds = 0;
  unsigned threads = 0;
  std::string out;
};

int RunSimulate(const SimulateArgs& args) {
  ScenarioConfig config = ParseScenarioConfig(ReadFile(args.config));
  if (args.rounds > 0) config.rounds = args.rounds;
  if (args.threads > 0) config.threads = args.threads;
  config.Validate();
  EmpiricalSummary summary = EmpiricalError(config);

  std::ostringstream stream;
  stream << RoundCsvHeader() << "\n";
  for (const RoundResult& r : summary.rounds) stream << FormatRoundLine(r) << "\n";
  std::string block = summary.Summary() + OpcountReport(summary.rounds).Format();

  if (args.out.empty()) {
    std::cout << stream.str() << "\n" << block;
  } else {
    fs::path out(args.out);
    EnsureDir(out);
    WriteFile(out / "rounds.csv", stream.str());
    WriteFile(out / "summary.txt", block);
    std::cout << block;
  }
  return 0;
}

// CSV goes to --out when given (summary on stdout), otherwise CSV on stdout
// and summary on stderr.
void EmitTable(const std::string& csv, const std::string& summary,
               const std::string& out) {
  if (out.empty()) {
    std::cout << csv;
    std::cerr << summary;
  } else {
    WriteFile(out, csv);
    std::cout << summary;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Masked Paillier aggregation for smart-meter telemetry"};
  app.require_subcommand(1, 1);

  KeygenArgs keygen;
  auto* keygen_cmd = app.add_subcommand("keygen", "Run KIC setup and write key material");
  keygen_cmd->add_option("--bits", keygen.bits, "Paillier modulus size")
      ->check(CLI::Range(64u, 8192u));
  keygen_cmd->add_option("--group-size", keygen.group_size, "Meters per group (d)")
      ->check(CLI::Range(size_t{2}, size_t{100000}));
  keygen_cmd->add_option("--groups", keygen.groups, "Number of groups")
      ->check(CLI::Range(size_t{1}, size_t{10000000}));
  keygen_cmd->add_option("--seed", keygen.seed, "Master seed");
  keygen_cmd->add_option("--out", keygen.out, "Output directory")->required();
  keygen_cmd->add_flag("--emit-factors", keygen.emit_factors,
                       "Also write p and q (test use only)");
  keygen_cmd->add_option("--generator", keygen.generator, "g1 choice")
      ->check(CLI::IsMember({"random", "n-plus-one"}));

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a fault-injection scenario");
  simulate_cmd->add_option("--config", simulate.config, "Scenario key=value file")
      ->required();
  simulate_cmd->add_option("--rounds", simulate.rounds, "Override rounds");
  simulate_cmd->add_option("--threads", simulate.threads, "Override encryption threads");
  simulate_cmd->add_option("--out", simulate.out, "Output directory");

  SweepSpec spec;
  ErrorCurveParams curve;
  std::string fig2_out;
  auto* fig2_cmd = app.add_subcommand("sweep-fig2", "e_os over an (N, M) grid");
  fig2_cmd->add_option("--n-min", spec.n_min);
  fig2_cmd->add_option("--n-max", spec.n_max);
  fig2_cmd->add_option("--n-step", spec.n_step);
  fig2_cmd->add_option("--m-min", spec.m_min);
  fig2_cmd->add_option("--m-max", spec.m_max);
  fig2_cmd->add_option("--m-step", spec.m_step);
  fig2_cmd->add_option("--gcal", curve.g_cal, "Calibration base");
  fig2_cmd->add_option("--mcal", curve.m_cal, "Calibration exponent");
  fig2_cmd->add_option("--out", fig2_out, "CSV output file");

  double fig4_step = 0.01;
  std::string fig4_out;
  auto* fig4_cmd = app.add_subcommand("sweep-fig4", "e_os versus the group-dropping baseline");
  fig4_cmd->add_option("--d", curve.d, "Baseline group size")->check(CLI::PositiveNumber);
  fig4_cmd->add_option("--gcal", curve.g_cal);
  fig4_cmd->add_option("--mcal", curve.m_cal);
  fig4_cmd->add_option("--step", fig4_step, "Rate grid step")
      ->check(CLI::Range(1e-6, 1.0));
  fig4_cmd->add_option("--out", fig4_out, "CSV output file");

  double tolerance = 1e-9;
  double target = 0.97;
  auto* cross_cmd = app.add_subcommand(
      "crossover", "Where the baseline overtakes e_os, under both calibrations");
  cross_cmd->add_option("--d", curve.d)->check(CLI::PositiveNumber);
  cross_cmd->add_option("--gcal", curve.g_cal);
  cross_cmd->add_option("--mcal", curve.m_cal);
  cross_cmd->add_option("--tolerance", tolerance)->check(CLI::PositiveNumber);
  cross_cmd->add_option("--target", target, "Crossover to calibrate against")
      ->check(CLI::Range(0.5, 1.0));

  std::string keys_dir;
  auto* selftest_cmd = app.add_subcommand("selftest", "Fixture transcript and invariant smoke suite");
  selftest_cmd->add_option("--keys", keys_dir, "Also check a keygen output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*keygen_cmd) return RunKeygen(keygen);
    if (*simulate_cmd) return RunSimulate(simulate);
    if (*fig2_cmd) {
      Fig2Table table = SweepFig2(spec, curve);
      EmitTable(table.Csv(), table.Summary(), fig2_out);
      return 0;
    }
    if (*fig4_cmd) {
      std::vector<double> grid;
      const long steps = std::lround(1.0 / fig4_step);
      for (long i = 0; i <= steps; ++i) grid.push_back(std::min(1.0, i * fig4_step));
      auto rows = SweepFig4(grid, curve);
      EmitTable(Fig4Csv(rows), "", fig4_out);
      return 0;
    }
    if (*cross_cmd) {
      auto x = FindCrossover(curve, tolerance);
      std::cout << "crossover=" << (x ? FormatDouble(*x) : "none") << "\n";
      std::cout << CompareCalibrations(SweepSpec{}, curve, target).Format();
      return 0;
    }
    if (*selftest_cmd) {
      std::optional<ProvisionedKeys> keys;
      if (!keys_dir.empty()) {
        fs::path dir(keys_dir);
        ProvisionedKeys loaded;
        loaded.params = ParseParams(ReadFile(dir / "params.txt"));
        loaded.aggregator = ParseAggregator(ReadFile(dir / "aggregator.txt"));
        for (size_t g = 0; g < loaded.params.num_groups; ++g) {
          for (size_t i = 0; i < loaded.params.d; ++i) {
            loaded.meters.push_back(ParseMeterKey(ReadFile(MeterKeyPath(dir, g, i))));
          }
        }
        keys = std::move(loaded);
      }
      SelfTestResult result = RunSelfTest(std::cout, keys);
      if (!result.ok) {
        std::cerr << "selftest failed: " << result.failed_check << "\n";
        return kExitRuntime;
      }
      std::cout << "selftest ok (" << result.checks_run << " checks)\n";
      return 0;
    }
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    bool usage = e.code() == ErrorCode::kInvalidArgument ||
                 e.code() == ErrorCode::kParseError;
    return usage ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
