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

#include "smartagg/experiments.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smartagg/error.h"

namespace smartagg {

double ErrorCurveParams::Scale() const { return std::pow(g_cal, m_cal); }

void ErrorCurveParams::Validate() const {
  if (!(g_cal > 1.0)) throw Error(ErrorCode::kInvalidArgument, "g_cal must exceed 1");
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "d must be positive");
}

double Eos(double faults, double meters, const ErrorCurveParams& params) {
  if (faults == 0.0) return 0.0;
  return faults / (meters * params.Scale());
}

double Edgaped(double rate, int d) {
  return 1.0 - std::pow(1.0 - rate, d) - std::pow(rate, d);
}

void SweepSpec::Validate() const {
  auto fail = [](const char* msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
  if (n_step == 0 || m_step == 0) fail("steps must be positive");
  if (n_min == 0 || n_min > n_max) fail("empty N range");
  if (m_min > m_max) fail("empty M range");
  if (m_max > n_min) fail("M range exceeds N");
}

Fig2Table SweepFig2(const SweepSpec& spec, const ErrorCurveParams& params) {
  spec.Validate();
  params.Validate();
  Fig2Table table;
  double sum = 0.0;
  for (uint64_t n = spec.n_min; n <= spec.n_max; n += spec.n_step) {
    for (uint64_t m = spec.m_min; m <= spec.m_max; m += spec.m_step) {
      double e = Eos(static_cast<double>(m), static_cast<double>(n), params);
      table.rows.push_back(Fig2Row{n, m, e});
      table.max = std::max(table.max, e);
      sum += e;
    }
  }
  table.mean = sum / static_cast<double>(table.rows.size());
  return table;
}

std::string Fig2Table::Csv() const {
  std::ostringstream out;
  out << "N,M,e_os\n";
  for (const Fig2Row& r : rows) {
    out << r.n << "," << r.m << "," << FormatDouble(r.e_os) << "\n";
  }
  return out.str();
}

std::string Fig2Table::Summary() const {
  return "cells=" + std::to_string(rows.size()) + "\nmax=" + FormatDouble(max) +
         "\nmean=" + FormatDouble(mean) + "\n";
}

std::vector<double> DefaultRateGrid() {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  return grid;
}

std::vector<Fig4Row> SweepFig4(const std::vector<double>& grid,
                               const ErrorCurveParams& params) {
  params.Validate();
  constexpr double kReferenceMeters = 10000.0;
  std::vector<Fig4Row> rows;
  rows.reserve(grid.size());
  for (double x : grid) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "rate grid must lie in [0, 1]");
    }
    rows.push_back(Fig4Row{x, Eos(x * kReferenceMeters, kReferenceMeters, params),
                           Edgaped(x, params.d)});
  }
  return rows;
}

std::string Fig4Csv(const std::vector<Fig4Row>& rows) {
  std::ostringstream out;
  out << "x,e_os,e_dgaped\n";
  for (const Fig4Row& r : rows) {
    out << FormatDouble(r.x) << "," << FormatDouble(r.e_os) << ","
        << FormatDouble(r.e_dgaped) << "\n";
  }
  return out.str();
}

std::optional<double> FindCrossover(const ErrorCurveParams& params,
                                    double tolerance) {
  params.Validate();
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  auto gap = [&params](double x) {
    return Edgaped(x, params.d) - Eos(x, 1.0, params);
  };
  // Coarse scan for the last +/- sign change, then bisect inside it.
  constexpr int kScanSteps = 100000;
  constexpr double kLo = 0.5;
  constexpr double kHi = 1.0;
  std::optional<std::pair<double, double>> bracket;
  double prev_x = kLo;
  double prev = gap(kLo);
  for (int i = 1; i <= kScanSteps; ++i) {
    double x = kLo + (kHi - kLo) * i / kScanSteps;
    double cur = gap(x);
    if (prev > 0.0 && cur < 0.0) bracket = {prev_x, x};
    prev_x = x;
    prev = cur;
  }
  if (!bracket) return std::nullopt;
  auto [lo, hi] = *bracket;
  while (hi - lo > tolerance) {
    double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ScaleForCrossover(double target, int d) {
  return target / Edgaped(target, d);
}

CalibrationReport CompareCalibrations(const SweepSpec& spec,
                                      const ErrorCurveParams& params,
                                      double crossover_target) {
  CalibrationReport report;
  report.fig2_params = params;
  Fig2Table fig2 = SweepFig2(spec, params);
  report.fig2_max = fig2.max;
  report.fig2_mean = fig2.mean;
  report.fig2_crossover = FindCrossover(params);

  report.crossover_target = crossover_target;
  report.crossover_scale = ScaleForCrossover(crossover_target, params.d);
  report.crossover_m_cal = std::log(report.crossover_scale) / std::log(params.g_cal);
  ErrorCurveParams alt = params;
  alt.m_cal = report.crossover_m_cal;
  report.crossover_fig2_max = SweepFig2(spec, alt).max;
  report.crossover_check = FindCrossover(alt);

  constexpr double kAgreement = 1e-3;
  report.inconsistent =
      !report.fig2_crossover ||
      std::abs(*report.fig2_crossover - crossover_target) > kAgreement;
  return report;
}

std::string CalibrationReport::Format() const {
  auto opt = [](const std::optional<double>& v) {
    return v ? FormatDouble(*v) : std::string("none");
  };
  std::ostringstream out;
  out << "fig2_calibration.g_cal=" << FormatDouble(fig2_params.g_cal) << "\n"
      << "fig2_calibration.m_cal=" << FormatDouble(fig2_params.m_cal) << "\n"
      << "fig2_calibration.scale=" << FormatDouble(fig2_params.Scale()) << "\n"
      << "fig2_calibration.fig2_max=" << FormatDouble(fig2_max) << "\n"
      << "fig2_calibration.fig2_mean=" << FormatDouble(fig2_mean) << "\n"
      << "fig2_calibration.crossover=" << opt(fig2_crossover) << "\n"
      << "crossover_calibration.target=" << FormatDouble(crossover_target) << "\n"
      << "crossover_calibration.scale=" << FormatDouble(crossover_scale) << "\n"
      << "crossover_calibration.m_cal=" << FormatDouble(crossover_m_cal) << "\n"
      << "crossover_calibration.fig2_max=" << FormatDouble(crossover_fig2_max) << "\n"
      << "crossover_calibration.crossover=" << opt(crossover_check) << "\n"
      << "calibrations_consistent=" << (inconsistent ? "false" : "true") << "\n";
  return out.str();
}

EmpiricalSummary EmpiricalError(const ScenarioConfig& config) {
  EmpiricalSummary summary;
  summary.rounds = RunScenario(config);
  double sum = 0.0;
  for (const RoundResult& r : summary.rounds) {
    double a = std::abs(r.rel_error);
    sum += a;
    summary.max_abs = std::max(summary.max_abs, a);
    summary.failed_groups += r.failures.size();
  }
  summary.mean_abs = sum / static_cast<double>(summary.rounds.size());
  return summary;
}

std::string EmpiricalSummary::Csv() const {
  std::ostringstream out;
  out << "round,S,S_prime,rel_error\n";
  for (const RoundResult& r : rounds) {
    out << r.t << "," << ToDecimal(r.true_sum) << "," << ToDecimal(r.recovered_sum)
        << "," << FormatDouble(r.rel_error) << "\n";
  }
  return out.str();
}

std::string EmpiricalSummary::Summary() const {
  std::ostringstream out;
  out << "rounds=" << rounds.size() << "\n"
      << "rel_error_mean_abs=" << FormatDouble(mean_abs) << "\n"
      << "rel_error_max=" << FormatDouble(max_abs) << "\n"
      << "failed_groups=" << failed_groups << "\n";
  return out.str();
}

OpCountReport OpcountReport(const std::vector<RoundResult>& rounds) {
  OpCountReport report;
  report.rounds = rounds.size();
  for (const RoundResult& r : rounds) {
    report.faults += r.dead.size();
    report.totals.substitutions += r.ops.substitutions;
    report.totals.mod_exp += r.ops.mod_exp;
    report.totals.mod_inv += r.ops.mod_inv;
    report.totals.mod_mul += r.ops.mod_mul;
    report.totals.tag_comparisons += r.ops.tag_comparisons;
  }
  return report;
}

std::string OpCountReport::Format() const {
  std::ostringstream out;
  out << "rounds=" << rounds << "\n"
      << "faults=" << faults << "\n"
      << "substitutions=" << totals.substitutions << "\n"
      << "mod_exp=" << totals.mod_exp << "\n"
      << "mod_inv=" << totals.mod_inv << "\n"
      << "mod_mul=" << totals.mod_mul << "\n"
      << "tag_comparisons=" << totals.tag_comparisons << "\n";
  return out.str();
}

}  // namespace smartagg
