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

// Deterministic in-memory round simulator.
//
// Every random draw is derived from the master seed by an index path
// (setup, per-round readings, per-round faults, per-meter encryption), so a
// (config, seed) pair fixes the whole result stream regardless of how many
// threads encrypt the reports.

#ifndef SMARTAGG_SIMNET_H_
#define SMARTAGG_SIMNET_H_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "smartagg/entities.h"

namespace smartagg {

struct NoFaults {
  friend bool operator==(const NoFaults&, const NoFaults&) = default;
};
// Exactly `count` distinct meters are dead each round.
struct FixedCount {
  uint64_t count = 0;
  friend bool operator==(const FixedCount&, const FixedCount&) = default;
};
// Each group independently loses one uniformly chosen meter with
// probability `rate`.
struct PerGroupProbability {
  double rate = 0.0;
  friend bool operator==(const PerGroupProbability&,
                         const PerGroupProbability&) = default;
};
using FaultModel = std::variant<NoFaults, FixedCount, PerGroupProbability>;

std::string FormatFaultModel(const FaultModel& model);
// "none", "fixed:<M>" or "group_rate:<r>". Throws kParseError.
FaultModel ParseFaultModel(const std::string& text);

struct ScenarioConfig {
  uint64_t meters = 100;  // N
  size_t group_size = 10;  // d
  size_t rounds = 1;
  FaultModel faults = NoFaults{};
  double mu = 0.0;
  double sigma = 0.5;
  double scale = 500.0;  // watt-hours per unit of the log-normal sample
  uint64_t seed = 1;
  unsigned modulus_bits = 512;
  unsigned threads = 1;

  // Throws kInvalidArgument.
  void Validate() const;
  size_t num_groups() const { return meters / group_size; }
};

// Flat key=value text; '#' starts a comment. Keys: N, d, rounds, faults,
// mu, sigma, scale, seed, bits, threads. Throws kParseError or
// kInvalidArgument.
ScenarioConfig ParseScenarioConfig(const std::string& text);
std::string FormatScenarioConfig(const ScenarioConfig& config);

// exp(mu + sigma * z), z standard normal.
double LognormalSample(double mu, double sigma, RandomSource& rng);
// exp(mu + sigma^2 / 2).
double LognormalMean(double mu, double sigma);
// round(sample * scale), clamped to [0, cap].
uint64_t QuantizeReading(double sample, double scale, uint64_t cap);

// Sorted dead meter ids out of [0, meters).
std::vector<uint64_t> InjectFaults(const FaultModel& model, uint64_t meters,
                                   size_t group_size, RandomSource& rng);

struct RoundResult {
  uint64_t t = 0;
  BigInt true_sum;       // S, includes dead meters' readings
  BigInt recovered_sum;  // S'
  double rel_error = 0.0;
  std::vector<uint64_t> dead;
  size_t substitutions = 0;
  std::vector<GroupFailure> failures;
  std::vector<RoundAggregate> aggregates;
  std::vector<uint64_t> readings;  // ground truth, indexed group * d + position
  BigNat m_bar;
  OpCounters ops;  // fault-path work done this round
};

class Simulator {
 public:
  // Runs KIC setup from the config seed.
  explicit Simulator(const ScenarioConfig& config);
  // Uses an existing deployment; config.meters and group_size must match.
  Simulator(const ScenarioConfig& config, Deployment deployment);

  RoundResult RunRound();

  const Deployment& deployment() const { return deployment_; }
  const Aggregator& aggregator() const { return *aggregator_; }
  const ScenarioConfig& config() const { return config_; }

 private:
  std::vector<MeterReport> EncryptLive(const std::vector<uint64_t>& readings,
                                       const std::vector<bool>& alive,
                                       uint64_t t) const;

  ScenarioConfig config_;
  Deployment deployment_;
  std::unique_ptr<Aggregator> aggregator_;
  uint64_t next_t_ = 1;
};

std::vector<RoundResult> RunScenario(const ScenarioConfig& config);

// round,S,S_prime,rel_error,faults,substitutions,failed_groups
std::string RoundCsvHeader();
std::string FormatRoundLine(const RoundResult& result);
// Shortest representation that round-trips.
std::string FormatDouble(double value);

}  // namespace smartagg

#endif  // SMARTAGG_SIMNET_H_
