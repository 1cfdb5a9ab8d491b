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

// Analytic error-rate curves and the empirical comparison harness.
//
// The approximation for the substitution scheme is e_os = M / (N * g^m),
// where g and m are calibration constants (g_cal = 13 by default). The
// baseline that drops any group containing a dead meter has
// e_D = 1 - (1 - x)^d - x^d with x = M / N.
//
// No single calibration reproduces both the 0.07% worst case over the
// N in [4000, 10000], M in [0, 200] grid and a crossover at x = 0.97.
// CalibrationReport carries both side by side.

#ifndef SMARTAGG_EXPERIMENTS_H_
#define SMARTAGG_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smartagg/simnet.h"

namespace smartagg {

inline constexpr double kDefaultGCal = 13.0;
inline constexpr double kDefaultMCal = 1.666;
inline constexpr int kDefaultBaselineGroupSize = 10;

struct ErrorCurveParams {
  double g_cal = kDefaultGCal;
  double m_cal = kDefaultMCal;
  int d = kDefaultBaselineGroupSize;

  // g_cal^m_cal
  double Scale() const;
  void Validate() const;
};

double Eos(double faults, double meters, const ErrorCurveParams& params);
double Edgaped(double rate, int d);

struct SweepSpec {
  uint64_t n_min = 4000;
  uint64_t n_max = 10000;
  uint64_t n_step = 1000;
  uint64_t m_min = 0;
  uint64_t m_max = 200;
  uint64_t m_step = 20;

  // Throws kInvalidArgument on empty ranges, zero steps or M > N.
  void Validate() const;
};

struct Fig2Row {
  uint64_t n;
  uint64_t m;
  double e_os;
};

struct Fig2Table {
  std::vector<Fig2Row> rows;
  double max = 0.0;
  double mean = 0.0;

  std::string Csv() const;      // N,M,e_os
  std::string Summary() const;  // key=value
};

Fig2Table SweepFig2(const SweepSpec& spec, const ErrorCurveParams& params);

struct Fig4Row {
  double x;
  double e_os;
  double e_dgaped;
};

// {0, 0.01, ..., 1}
std::vector<double> DefaultRateGrid();

// e_os is evaluated at M = x * N; the approximation depends on x only, so
// any positive N gives the same row.
std::vector<Fig4Row> SweepFig4(const std::vector<double>& grid,
                               const ErrorCurveParams& params);
std::string Fig4Csv(const std::vector<Fig4Row>& rows);  // x,e_os,e_dgaped

// Largest x in (0.5, 1) where e_dgaped(x) - e_os(x) changes sign from
// positive to negative, refined by bisection to `tolerance`.
std::optional<double> FindCrossover(const ErrorCurveParams& params,
                                    double tolerance = 1e-9);

// g^m such that the crossover lands at `target`.
double ScaleForCrossover(double target, int d);

struct CalibrationReport {
  ErrorCurveParams fig2_params;
  double fig2_max = 0.0;
  double fig2_mean = 0.0;
  std::optional<double> fig2_crossover;

  double crossover_target = 0.97;
  double crossover_scale = 0.0;  // g^m reproducing the target crossover
  double crossover_m_cal = 0.0;  // same, expressed as an exponent of g_cal
  double crossover_fig2_max = 0.0;
  std::optional<double> crossover_check;

  // True when the two calibrations disagree (they always do for d = 10).
  bool inconsistent = false;

  std::string Format() const;  // key=value block
};

CalibrationReport CompareCalibrations(const SweepSpec& spec,
                                      const ErrorCurveParams& params,
                                      double crossover_target = 0.97);

struct EmpiricalSummary {
  double mean_abs = 0.0;
  double max_abs = 0.0;
  size_t failed_groups = 0;
  std::vector<RoundResult> rounds;

  std::string Csv() const;      // round,S,S_prime,rel_error
  std::string Summary() const;  // key=value
};

EmpiricalSummary EmpiricalError(const ScenarioConfig& config);

struct OpCountReport {
  OpCounters totals;
  size_t rounds = 0;
  size_t faults = 0;

  std::string Format() const;
};

OpCountReport OpcountReport(const std::vector<RoundResult>& rounds);

}  // namespace smartagg

#endif  // SMARTAGG_EXPERIMENTS_H_
