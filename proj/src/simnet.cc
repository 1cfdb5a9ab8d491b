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

#include "smartagg/simnet.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "smartagg/error.h"

namespace smartagg {
namespace {

// Stream identifiers for RandomSource::Derive paths.
constexpr uint64_t kSetupStream = 0;
constexpr uint64_t kEncryptStream = 1;
constexpr uint64_t kReadingStream = 2;
constexpr uint64_t kFaultStream = 3;

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kParseError, "bad value for " + key + ": '" + value + "'");
  }
  return out;
}

double ParseReal(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    double out = std::stod(value, &used);
    if (used == value.size()) return out;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kParseError, "bad value for " + key + ": '" + value + "'");
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::string FormatFaultModel(const FaultModel& model) {
  if (const auto* fixed = std::get_if<FixedCount>(&model)) {
    return "fixed:" + std::to_string(fixed->count);
  }
  if (const auto* rate = std::get_if<PerGroupProbability>(&model)) {
    return "group_rate:" + FormatDouble(rate->rate);
  }
  return "none";
}

FaultModel ParseFaultModel(const std::string& text) {
  std::string t = Trim(text);
  if (t == "none") return NoFaults{};
  if (t.rfind("fixed:", 0) == 0) {
    return FixedCount{ParseNumber<uint64_t>("faults", t.substr(6))};
  }
  if (t.rfind("group_rate:", 0) == 0) {
    return PerGroupProbability{ParseReal("faults", t.substr(11))};
  }
  throw Error(ErrorCode::kParseError, "unknown fault model '" + t + "'");
}

void ScenarioConfig::Validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, msg);
  };
  if (group_size < 2) fail("d must be at least 2");
  if (meters == 0 || meters % group_size != 0) fail("d must divide N");
  if (!(sigma >= 0.0)) fail("sigma must be nonnegative");
  if (!(scale > 0.0)) fail("scale must be positive");
  if (rounds == 0) fail("rounds must be positive");
  if (threads == 0) fail("threads must be positive");
  if (modulus_bits < 64 || modulus_bits % 2 != 0) fail("bits must be even and >= 64");
  if (const auto* fixed = std::get_if<FixedCount>(&faults)) {
    if (fixed->count > meters) fail("fault count exceeds N");
  }
  if (const auto* rate = std::get_if<PerGroupProbability>(&faults)) {
    if (!(rate->rate >= 0.0 && rate->rate <= 1.0)) fail("fault rate outside [0,1]");
  }
}

ScenarioConfig ParseScenarioConfig(const std::string& text) {
  ScenarioConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (key == "N") {
      config.meters = ParseNumber<uint64_t>(key, value);
    } else if (key == "d") {
      config.group_size = ParseNumber<size_t>(key, value);
    } else if (key == "rounds") {
      config.rounds = ParseNumber<size_t>(key, value);
    } else if (key == "faults") {
      config.faults = ParseFaultModel(value);
    } else if (key == "mu") {
      config.mu = ParseReal(key, value);
    } else if (key == "sigma") {
      config.sigma = ParseReal(key, value);
    } else if (key == "scale") {
      config.scale = ParseReal(key, value);
    } else if (key == "seed") {
      config.seed = ParseNumber<uint64_t>(key, value);
    } else if (key == "bits") {
      config.modulus_bits = ParseNumber<unsigned>(key, value);
    } else if (key == "threads") {
      config.threads = ParseNumber<unsigned>(key, value);
    } else {
      throw Error(ErrorCode::kParseError, "unknown key '" + key + "'");
    }
  }
  config.Validate();
  return config;
}

std::string FormatScenarioConfig(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "N=" << c.meters << "\n"
      << "d=" << c.group_size << "\n"
      << "rounds=" << c.rounds << "\n"
      << "faults=" << FormatFaultModel(c.faults) << "\n"
      << "mu=" << FormatDouble(c.mu) << "\n"
      << "sigma=" << FormatDouble(c.sigma) << "\n"
      << "scale=" << FormatDouble(c.scale) << "\n"
      << "seed=" << c.seed << "\n"
      << "bits=" << c.modulus_bits << "\n"
      << "threads=" << c.threads << "\n";
  return out.str();
}

double LognormalSample(double mu, double sigma, RandomSource& rng) {
  return std::exp(mu + sigma * rng.StandardNormal());
}

double LognormalMean(double mu, double sigma) {
  return std::exp(mu + sigma * sigma / 2.0);
}

uint64_t QuantizeReading(double sample, double scale, uint64_t cap) {
  double v = std::nearbyint(sample * scale);
  if (!(v > 0.0)) return 0;
  if (v >= static_cast<double>(cap)) return cap;
  return static_cast<uint64_t>(v);
}

std::vector<uint64_t> InjectFaults(const FaultModel& model, uint64_t meters,
                                   size_t group_size, RandomSource& rng) {
  std::vector<uint64_t> dead;
  if (const auto* fixed = std::get_if<FixedCount>(&model)) {
    if (fixed->count > meters) {
      throw Error(ErrorCode::kInvalidArgument, "fault count exceeds N");
    }
    // Partial Fisher-Yates over a sparse permutation.
    std::map<uint64_t, uint64_t> swapped;
    auto at = [&swapped](uint64_t i) {
      auto it = swapped.find(i);
      return it == swapped.end() ? i : it->second;
    };
    for (uint64_t i = 0; i < fixed->count; ++i) {
      uint64_t j = i + rng.Below(static_cast<unsigned long>(meters - i)).get_ui();
      uint64_t vi = at(i), vj = at(j);
      swapped[i] = vj;
      swapped[j] = vi;
      dead.push_back(vj);
    }
  } else if (const auto* rate = std::get_if<PerGroupProbability>(&model)) {
    for (uint64_t g = 0; g < meters / group_size; ++g) {
      double u = static_cast<double>(rng.NextU64() >> 11) * 0x1.0p-53;
      if (u < rate->rate) {
        dead.push_back(g * group_size + rng.NextU64() % group_size);
      }
    }
  }
  std::sort(dead.begin(), dead.end());
  return dead;
}

Simulator::Simulator(const ScenarioConfig& config)
    : Simulator(config, [&config] {
        config.Validate();
        RandomSource rng = RandomSource::Derive(config.seed, {kSetupStream});
        return KicSetup(config.modulus_bits, config.group_size,
                        config.num_groups(), rng);
      }()) {}

Simulator::Simulator(const ScenarioConfig& config, Deployment deployment)
    : config_(config), deployment_(std::move(deployment)) {
  config_.Validate();
  if (deployment_.params.d != config_.group_size ||
      deployment_.params.meter_count() != config_.meters) {
    throw Error(ErrorCode::kInvalidArgument,
                "deployment shape does not match scenario config");
  }
  aggregator_ = std::make_unique<Aggregator>(deployment_.params,
                                             deployment_.aggregator);
}

std::vector<MeterReport> Simulator::EncryptLive(
    const std::vector<uint64_t>& readings, const std::vector<bool>& alive,
    uint64_t t) const {
  const size_t d = config_.group_size;
  std::vector<MeterReport> slots(readings.size());
  auto work = [&](size_t begin, size_t end) {
    for (size_t id = begin; id < end; ++id) {
      if (!alive[id]) continue;
      RandomSource rng =
          RandomSource::Derive(config_.seed, {kEncryptStream, t, id});
      const MeterKey& key = deployment_.meters[id / d][id % d];
      slots[id] = MakeReport(key, deployment_.params,
                             static_cast<unsigned long>(readings[id]), t, rng);
    }
  };
  size_t threads = std::min<size_t>(config_.threads, readings.size());
  if (threads <= 1) {
    work(0, readings.size());
  } else {
    std::vector<std::jthread> pool;
    size_t chunk = (readings.size() + threads - 1) / threads;
    for (size_t begin = 0; begin < readings.size(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(readings.size(), begin + chunk));
    }
  }
  std::vector<MeterReport> live;
  live.reserve(readings.size());
  for (size_t id = 0; id < readings.size(); ++id) {
    if (alive[id]) live.push_back(std::move(slots[id]));
  }
  return live;
}

RoundResult Simulator::RunRound() {
  const uint64_t t = next_t_++;
  const uint64_t meters = config_.meters;
  const uint64_t cap = deployment_.params.reading_cap.get_ui();

  RoundResult result;
  result.t = t;
  RandomSource reading_rng = RandomSource::Derive(config_.seed, {kReadingStream, t});
  result.readings.reserve(meters);
  result.true_sum = 0;
  for (uint64_t id = 0; id < meters; ++id) {
    double sample = LognormalSample(config_.mu, config_.sigma, reading_rng);
    result.readings.push_back(QuantizeReading(sample, config_.scale, cap));
    result.true_sum += static_cast<unsigned long>(result.readings.back());
  }

  RandomSource fault_rng = RandomSource::Derive(config_.seed, {kFaultStream, t});
  result.dead = InjectFaults(config_.faults, meters, config_.group_size, fault_rng);
  std::vector<bool> alive(meters, true);
  for (uint64_t id : result.dead) alive[id] = false;

  std::vector<MeterReport> reports = EncryptLive(result.readings, alive, t);

  OpCounters before = aggregator_->counters();
  RoundOutcome outcome = aggregator_->ProcessRound(reports, t);
  const OpCounters& after = aggregator_->counters();
  result.ops.substitutions = after.substitutions - before.substitutions;
  result.ops.mod_exp = after.mod_exp - before.mod_exp;
  result.ops.mod_inv = after.mod_inv - before.mod_inv;
  result.ops.mod_mul = after.mod_mul - before.mod_mul;
  result.ops.tag_comparisons = after.tag_comparisons - before.tag_comparisons;

  NetworkTotals totals = CcCollect(outcome.aggregates);
  result.recovered_sum = totals.total;
  result.m_bar = outcome.m_bar;
  result.failures = std::move(outcome.failures);
  for (const RoundAggregate& agg : outcome.aggregates) {
    result.substitutions += agg.substitutions.size();
  }
  result.aggregates = std::move(outcome.aggregates);
  if (result.true_sum != 0) {
    BigInt diff = result.true_sum - result.recovered_sum;
    result.rel_error = diff.get_d() / result.true_sum.get_d();
  }
  return result;
}

std::vector<RoundResult> RunScenario(const ScenarioConfig& config) {
  Simulator sim(config);
  std::vector<RoundResult> results;
  results.reserve(config.rounds);
  for (size_t i = 0; i < config.rounds; ++i) results.push_back(sim.RunRound());
  return results;
}

std::string RoundCsvHeader() {
  return "round,S,S_prime,rel_error,faults,substitutions,failed_groups";
}

std::string FormatRoundLine(const RoundResult& r) {
  std::ostringstream out;
  out << r.t << "," << ToDecimal(r.true_sum) << "," << ToDecimal(r.recovered_sum)
      << "," << FormatDouble(r.rel_error) << "," << r.dead.size() << ","
      << r.substitutions << "," << r.failures.size();
  return out.str();
}

}  // namespace smartagg
