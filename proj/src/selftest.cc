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

#include "smartagg/selftest.h"

#include <functional>

#include "smartagg/error.h"
#include "smartagg/experiments.h"

namespace smartagg {
namespace {

struct CheckFailed {
  std::string detail;
};

void Require(bool condition, const std::string& detail) {
  if (!condition) throw CheckFailed{detail};
}

BigNat ProductOfMasks(const std::vector<MaskEntry>& table, const BigNat& n_sq) {
  BigNat product = 1;
  for (const MaskEntry& e : table) product = product * e.mask % n_sq;
  return product;
}

void CheckToyVector(std::ostream& log) {
  PaillierKeys keys = KeysFromFactors(5, 7, 36);
  Require(keys.priv.lambda == 12, "lambda != 12");
  Ciphertext c = Encrypt(keys.pub, 3, 2);
  Require(c.value() == 683, "Enc(3; r=2) != 683");
  Require(Decrypt(keys.priv, keys.pub, c) == 3, "Dec(683) != 3");
  log << "toy Enc(3;r=2)=683 Dec=3\n";
}

void CheckToyTranscript(std::ostream& log) {
  Deployment dep = ToyDeployment(2);
  Aggregator da(dep.params, dep.aggregator);
  RandomSource rng(7);
  const uint64_t t = 1;
  std::vector<MeterReport> reports;
  reports.push_back(MakeReport(dep.meters[0][0], dep.params, 3, t, rng));
  reports.push_back(MakeReport(dep.meters[0][1], dep.params, 4, t, rng));
  reports.push_back(MakeReport(dep.meters[1][0], dep.params, 1, t, rng));
  reports.push_back(MakeReport(dep.meters[1][1], dep.params, 2, t, rng));
  RoundOutcome round = da.ProcessRound(reports, t);
  Require(round.failures.empty() && round.aggregates.size() == 2,
          "toy round did not aggregate both groups");
  Require(round.aggregates[0].m_sum == 7, "toy group 0 M_sum != 7");
  Require(round.aggregates[1].m_sum == 3, "toy group 1 M_sum != 3");
  log << "toy M_sum=7\n";

  // Group 0 loses position 2; group 1's position-2 reading is 4, m_bar = 3.
  da.set_previous_total(12);  // round(12 / 4) = 3
  std::vector<MeterReport> faulty;
  faulty.push_back(MakeReport(dep.meters[0][0], dep.params, 3, 2, rng));
  faulty.push_back(MakeReport(dep.meters[1][0], dep.params, 2, 2, rng));
  faulty.push_back(MakeReport(dep.meters[1][1], dep.params, 4, 2, rng));
  RoundOutcome sub = da.ProcessRound(faulty, 2);
  Require(sub.m_bar == 3, "toy m_bar != 3");
  Require(sub.aggregates.size() == 2 && sub.aggregates[0].m_sum == 4,
          "toy substituted M_sum != 3 + (4 - 3)");
  log << "toy substituted M_sum=4\n";
}

void CheckRandomInvariants(std::ostream& log) {
  RandomSource rng(20261016);
  Deployment dep = KicSetup(128, 4, 3, rng);
  const BigInt& p = dep.keys.factors.p;
  BigInt sum_s = 0;
  for (const BigInt& s : dep.weights.s_list) sum_s += s;
  Require(sum_s == dep.weights.delta * p, "sum of s_i != Delta * p");
  Require(ModPow(ProductOfMasks(dep.aggregator.mask_table, dep.params.n_sq),
                 dep.keys.priv.lambda, dep.params.n_sq) == 1,
          "mask product is not annihilated by lambda");

  Aggregator da(dep.params, dep.aggregator);
  std::vector<MeterReport> reports;
  std::vector<BigNat> readings;
  BigInt expected = 0;
  for (const auto& group : dep.meters) {
    for (const MeterKey& key : group) {
      readings.push_back(rng.Below(1000));
      if (key.group_id == 0) expected += readings.back();
      reports.push_back(MakeReport(key, dep.params, readings.back(), 1, rng));
    }
  }
  RoundOutcome round = da.ProcessRound(reports, 1);
  Require(round.failures.empty(), "random-key round had failures");
  Require(round.aggregates[0].m_sum == expected, "random-key M_sum != sum");

  // d-1 reports of group 0 keep a residual mask.
  BigNat partial = 1;
  BigInt subset_sum = 0;
  for (size_t i = 0; i + 1 < dep.params.d; ++i) {
    partial = partial * reports[i].c.value() % dep.params.n_sq;
    subset_sum += readings[i];
  }
  Require(Decrypt(dep.keys.priv, dep.keys.pub, Ciphertext::Unchecked(partial)) !=
              subset_sum,
          "partial product decrypted to the subset sum");

  MeterReport tampered = reports[0];
  tampered.c = Ciphertext::Unchecked(tampered.c.value() ^ 1);
  Require(!da.Verify(tampered, 1), "tampered report verified");
  log << "random-key invariants ok\n";
}

void CheckCalibrationReport(std::ostream& log) {
  CalibrationReport report = CompareCalibrations(SweepSpec{}, ErrorCurveParams{});
  std::string text = report.Format();
  Require(text.find("fig2_calibration.crossover=") != std::string::npos &&
              text.find("crossover_calibration.scale=") != std::string::npos,
          "calibration report missing a calibration");
  Require(report.inconsistent, "calibration discrepancy not reported");
  Require(report.fig2_max < 0.0007, "fig2 max exceeds 0.0007");
  log << "calibration discrepancy reported: fig2 crossover="
      << (report.fig2_crossover ? FormatDouble(*report.fig2_crossover) : "none")
      << " vs target " << FormatDouble(report.crossover_target) << "\n";
}

void CheckProvisioned(std::ostream& log, const ProvisionedKeys& keys) {
  const SystemParams& p = keys.params;
  Require(p.d >= 2, "params: d < 2");
  Require(p.n > 1 && p.n_sq == p.n * p.n, "params: n_sq != n^2");
  Require(Gcd(p.g1, p.n) == 1, "params: g1 not a unit");
  Require(Gcd(p.h, p.n) == 1, "params: h not a unit");
  Require(static_cast<unsigned long>(p.meter_count()) * p.reading_cap < p.n,
          "params: reading cap overflows plaintext space");
  Require(keys.aggregator.mask_table.size() == p.d,
          "aggregator: mask table size != d");
  for (const MaskEntry& e : keys.aggregator.mask_table) {
    Require(MaskValue(p.h, e.s, p.n_sq) == e.mask, "aggregator: mask != h^s");
  }
  Require(ModPow(ProductOfMasks(keys.aggregator.mask_table, p.n_sq),
                 keys.aggregator.priv.lambda, p.n_sq) == 1,
          "aggregator: mask product is not an n-th residue");
  BigNat l = PaillierL(ModPow(p.g1, keys.aggregator.priv.lambda, p.n_sq), p.n);
  Require(l * keys.aggregator.priv.mu % p.n == 1,
          "aggregator: mu is not the inverse of L(g1^lambda)");
  for (const MeterKey& key : keys.meters) {
    Require(MaskValue(p.h, key.s, p.n_sq) == key.mask, "meter key: mask != h^s");
    Require(key.group_id < p.num_groups, "meter key: group id out of range");
    bool known = false;
    for (const MaskEntry& e : keys.aggregator.mask_table) known |= e.s == key.s;
    Require(known, "meter key: exponent not in aggregator table");
  }

  Aggregator da(p, keys.aggregator);
  RandomSource rng(1);
  std::vector<MeterReport> reports;
  std::vector<BigInt> expected(p.num_groups, 0);
  for (const MeterKey& key : keys.meters) {
    BigNat m = rng.Below(p.reading_cap + 1);
    expected[key.group_id] += m;
    reports.push_back(MakeReport(key, p, m, 1, rng));
  }
  RoundOutcome round = da.ProcessRound(reports, 1);
  Require(round.rejected == 0, "provisioned round: reports rejected");
  for (const RoundAggregate& agg : round.aggregates) {
    Require(agg.m_sum == expected[agg.group_id], "provisioned round: M_sum != sum");
  }
  log << "provisioned keys ok (" << keys.meters.size() << " meters)\n";
}

}  // namespace

SelfTestResult RunSelfTest(std::ostream& log,
                           const std::optional<ProvisionedKeys>& provisioned) {
  std::vector<std::pair<std::string, std::function<void()>>> checks = {
      {"toy_vector", [&] { CheckToyVector(log); }},
      {"toy_transcript", [&] { CheckToyTranscript(log); }},
      {"random_invariants", [&] { CheckRandomInvariants(log); }},
      {"calibration_report", [&] { CheckCalibrationReport(log); }},
  };
  if (provisioned) {
    checks.emplace_back("provisioned_keys", [&] { CheckProvisioned(log, *provisioned); });
  }
  SelfTestResult result;
  for (const auto& [name, run] : checks) {
    ++result.checks_run;
    try {
      run();
      log << "PASS " << name << "\n";
    } catch (const CheckFailed& f) {
      result.ok = false;
      result.failed_check = name + ": " + f.detail;
    } catch (const std::exception& e) {
      result.ok = false;
      result.failed_check = name + ": " + e.what();
    }
    if (!result.ok) {
      log << "FAIL " << result.failed_check << "\n";
      break;
    }
  }
  return result;
}

}  // namespace smartagg
