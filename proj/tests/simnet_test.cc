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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "smartagg/error.h"

namespace smartagg {
namespace {

ScenarioConfig SmallConfig(uint64_t meters, size_t d, FaultModel faults,
                           uint64_t seed) {
  ScenarioConfig c;
  c.meters = meters;
  c.group_size = d;
  c.faults = faults;
  c.seed = seed;
  c.modulus_bits = 256;
  return c;
}

// Expected S - S' for a round with no failed groups: each substitution of a
// dead meter i by donor j contributes m_i - m_j + m_bar.
BigInt ExpectedError(const Simulator& sim, const RoundResult& r) {
  const Deployment& dep = sim.deployment();
  const size_t d = dep.params.d;
  BigInt expected = 0;
  for (const RoundAggregate& agg : r.aggregates) {
    for (const Substitution& sub : agg.substitutions) {
      size_t pos = d;
      for (size_t i = 0; i < d; ++i) {
        if (Tag1(r.t, dep.weights.s_list[i]) == sub.missing_tag1) pos = i;
      }
      EXPECT_LT(pos, d);
      unsigned long lost = r.readings[agg.group_id * d + pos];
      unsigned long donor = r.readings[sub.donor_group * d + pos];
      expected += BigInt(lost) - BigInt(donor) + sub.m_bar;
    }
  }
  return expected;
}

TEST(LognormalTest, DegenerateSigma) {
  RandomSource rng(1);
  EXPECT_EQ(LognormalSample(0.0, 0.0, rng), 1.0);
  EXPECT_DOUBLE_EQ(LognormalSample(1.0, 0.0, rng), std::exp(1.0));
}

TEST(LognormalTest, MeanClosedForm) {
  EXPECT_EQ(LognormalMean(0.0, 0.0), 1.0);
  EXPECT_NEAR(LognormalMean(0.0, 1.0), 1.64872, 1e-5);
  EXPECT_NEAR(LognormalMean(1.0, 0.0), 2.71828, 1e-5);
}

TEST(LognormalTest, MonteCarloMeanWithinOnePercent) {
  RandomSource rng(2);
  double sum = 0.0;
  const int kSamples = 1000000;
  for (int i = 0; i < kSamples; ++i) sum += LognormalSample(0.0, 0.5, rng);
  double expected = LognormalMean(0.0, 0.5);
  EXPECT_NEAR(expected, 1.1331, 1e-4);
  EXPECT_NEAR(sum / kSamples, expected, 0.01 * expected);
}

TEST(LognormalTest, SeededSequenceRepeats) {
  RandomSource a(3), b(3);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(LognormalSample(0.2, 0.7, a), LognormalSample(0.2, 0.7, b));
  }
}

TEST(QuantizeTest, RoundsAndClamps) {
  EXPECT_EQ(QuantizeReading(1.0, 500.0, 1000), 500u);
  EXPECT_EQ(QuantizeReading(0.0011, 500.0, 1000), 1u);
  EXPECT_EQ(QuantizeReading(0.0009, 500.0, 1000), 0u);
  EXPECT_EQ(QuantizeReading(10.0, 500.0, 1000), 1000u);
}

TEST(InjectFaultsTest, Boundaries) {
  RandomSource rng(4);
  EXPECT_TRUE(InjectFaults(NoFaults{}, 100, 10, rng).empty());
  EXPECT_TRUE(InjectFaults(FixedCount{0}, 100, 10, rng).empty());
  auto all = InjectFaults(FixedCount{100}, 100, 10, rng);
  ASSERT_EQ(all.size(), 100u);
  for (uint64_t i = 0; i < 100; ++i) EXPECT_EQ(all[i], i);
  EXPECT_THROW(InjectFaults(FixedCount{101}, 100, 10, rng), Error);
}

TEST(InjectFaultsTest, FixedCountIsDeterministicAndDistinct) {
  RandomSource a(5), b(5);
  auto x = InjectFaults(FixedCount{3}, 1000, 10, a);
  auto y = InjectFaults(FixedCount{3}, 1000, 10, b);
  EXPECT_EQ(x, y);
  EXPECT_EQ(std::set<uint64_t>(x.begin(), x.end()).size(), 3u);
  for (uint64_t id : x) EXPECT_LT(id, 1000u);
}

TEST(InjectFaultsTest, FixedCountIsRoughlyUniform) {
  RandomSource rng(6);
  std::vector<int> hits(20, 0);
  const int kTrials = 20000;
  for (int i = 0; i < kTrials; ++i) {
    for (uint64_t id : InjectFaults(FixedCount{2}, 20, 5, rng)) ++hits[id];
  }
  // Each meter expects 2000 hits; 5 sigma is about 210.
  for (int h : hits) EXPECT_NEAR(h, 2000, 250);
}

TEST(InjectFaultsTest, PerGroupProbability) {
  RandomSource rng(7);
  EXPECT_TRUE(InjectFaults(PerGroupProbability{0.0}, 100, 10, rng).empty());
  auto dead = InjectFaults(PerGroupProbability{1.0}, 100, 10, rng);
  ASSERT_EQ(dead.size(), 10u);
  for (size_t g = 0; g < 10; ++g) EXPECT_EQ(dead[g] / 10, g);
}

TEST(ConfigTest, ParsesKeyValueText) {
  ScenarioConfig c = ParseScenarioConfig(
      "# scenario\nN=100\nd = 10\nrounds=3\nfaults=fixed:5\nseed=7\n"
      "mu=0.1\nsigma=0.4\nscale=250\nbits=256\nthreads=2\n");
  EXPECT_EQ(c.meters, 100u);
  EXPECT_EQ(c.group_size, 10u);
  EXPECT_EQ(c.rounds, 3u);
  EXPECT_EQ(c.faults, FaultModel(FixedCount{5}));
  EXPECT_EQ(c.seed, 7u);
  EXPECT_DOUBLE_EQ(c.mu, 0.1);
  EXPECT_DOUBLE_EQ(c.sigma, 0.4);
  EXPECT_DOUBLE_EQ(c.scale, 250);
  EXPECT_EQ(c.modulus_bits, 256u);
  EXPECT_EQ(c.threads, 2u);
  EXPECT_EQ(ParseScenarioConfig(FormatScenarioConfig(c)).faults, c.faults);
  EXPECT_EQ(ParseFaultModel("group_rate:0.25"), FaultModel(PerGroupProbability{0.25}));
  EXPECT_EQ(ParseFaultModel("none"), FaultModel(NoFaults{}));
}

TEST(ConfigTest, RejectsInvalidConfigs) {
  auto code = [](const std::string& text) {
    try {
      ParseScenarioConfig(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kNotInvertible;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code("N=101\nd=10\n"), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code("N=100\nd=10\nsigma=-1\n"), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code("N=100\nd=10\nfaults=fixed:101\n"), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code("N=100\nd=10\nfaults=group_rate:2\n"), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code("N=100\ncolour=red\n"), ErrorCode::kParseError);
  EXPECT_EQ(code("N=ten\n"), ErrorCode::kParseError);
  EXPECT_EQ(code("N 100\n"), ErrorCode::kParseError);
  EXPECT_EQ(code("faults=sometimes\n"), ErrorCode::kParseError);
}

TEST(RunScenarioTest, NoFaultsRecoversExactly) {
  ScenarioConfig c = SmallConfig(60, 6, NoFaults{}, 8);
  c.rounds = 3;
  for (const RoundResult& r : RunScenario(c)) {
    EXPECT_EQ(r.true_sum, r.recovered_sum);
    EXPECT_EQ(r.rel_error, 0.0);
    EXPECT_TRUE(r.failures.empty());
    EXPECT_EQ(r.ops, OpCounters{});
    for (uint64_t m : r.readings) EXPECT_LE(m, kDefaultReadingCap);
  }
}

TEST(RunScenarioTest, ZeroFaultRoundsAcrossRandomConfigs) {
  RandomSource rng(9);
  const size_t group_sizes[] = {2, 4, 5, 10};
  for (int trial = 0; trial < 50; ++trial) {
    size_t d = group_sizes[trial % 4];
    uint64_t groups = 1 + rng.Below(200 / d).get_ui();
    ScenarioConfig c = SmallConfig(groups * d, d, NoFaults{}, 1000 + trial);
    c.modulus_bits = 512;
    c.sigma = 0.2 * (trial % 5);
    Simulator sim(c);
    RoundResult r = sim.RunRound();
    EXPECT_EQ(r.true_sum, r.recovered_sum) << FormatScenarioConfig(c);
  }
}

TEST(RunScenarioTest, SingleFaultMatchesSubstitutionIdentity) {
  ScenarioConfig c = SmallConfig(20, 5, FixedCount{1}, 10);
  Simulator sim(c);
  for (int round = 0; round < 4; ++round) {
    RoundResult r = sim.RunRound();
    ASSERT_EQ(r.dead.size(), 1u);
    ASSERT_TRUE(r.failures.empty());
    ASSERT_EQ(r.substitutions, 1u);
    const uint64_t dead = r.dead[0];
    const RoundAggregate& agg = r.aggregates[dead / 5];
    ASSERT_EQ(agg.substitutions.size(), 1u);
    const Substitution& sub = agg.substitutions[0];
    EXPECT_EQ(sub.donor_group, dead / 5 == 0 ? 1u : 0u);  // lowest complete id
    BigInt m_i = static_cast<unsigned long>(r.readings[dead]);
    BigInt m_j = static_cast<unsigned long>(r.readings[sub.donor_group * 5 + dead % 5]);
    EXPECT_EQ(r.recovered_sum, r.true_sum - m_i + (m_j - sub.m_bar));
    EXPECT_EQ(sub.m_bar, r.m_bar);
    if (round == 0) EXPECT_EQ(r.m_bar, 0);
  }
}

TEST(RunScenarioTest, MultipleFaultsTelescope) {
  ScenarioConfig c = SmallConfig(200, 10, FixedCount{7}, 11);
  Simulator sim(c);
  for (int round = 0; round < 5; ++round) {
    RoundResult r = sim.RunRound();
    ASSERT_TRUE(r.failures.empty());
    EXPECT_EQ(r.substitutions, 7u);
    EXPECT_EQ(r.true_sum - r.recovered_sum, ExpectedError(sim, r));
  }
}

TEST(RunScenarioTest, AllGroupsBrokenAreRecordedNotThrown) {
  ScenarioConfig c = SmallConfig(20, 5, PerGroupProbability{1.0}, 12);
  RoundResult r = Simulator(c).RunRound();
  EXPECT_EQ(r.failures.size(), 4u);
  EXPECT_EQ(r.recovered_sum, 0);
  EXPECT_EQ(r.rel_error, 1.0);
  EXPECT_EQ(r.failures[0].code, ErrorCode::kNoReferenceGroup);
}

TEST(RunScenarioTest, DeterministicAcrossRunsAndThreads) {
  ScenarioConfig c = SmallConfig(100, 10, FixedCount{5}, 7);
  c.rounds = 3;
  auto render = [](const std::vector<RoundResult>& rs) {
    std::string out = RoundCsvHeader() + "\n";
    for (const RoundResult& r : rs) {
      out += FormatRoundLine(r) + "\n";
      for (const RoundAggregate& a : r.aggregates) out += a.ToRecord();
    }
    return out;
  };
  std::string first = render(RunScenario(c));
  EXPECT_EQ(first, render(RunScenario(c)));
  c.threads = 4;
  EXPECT_EQ(first, render(RunScenario(c)));
}

TEST(RunScenarioTest, RejectsMismatchedDeployment) {
  ScenarioConfig c = SmallConfig(20, 5, NoFaults{}, 13);
  RandomSource rng(13);
  Deployment dep = KicSetup(128, 4, 5, rng);
  EXPECT_THROW(Simulator(c, std::move(dep)), Error);
}

TEST(FormatTest, RoundLine) {
  RoundResult r;
  r.t = 2;
  r.true_sum = 1000;
  r.recovered_sum = 990;
  r.rel_error = 0.01;
  r.dead = {3};
  r.substitutions = 1;
  EXPECT_EQ(FormatRoundLine(r), "2,1000,990,0.01,1,1,0");
  EXPECT_EQ(RoundCsvHeader(),
            "round,S,S_prime,rel_error,faults,substitutions,failed_groups");
}

}  // namespace
}  // namespace smartagg
