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

#ifndef SMARTAGG_SELFTEST_H_
#define SMARTAGG_SELFTEST_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "smartagg/entities.h"

namespace smartagg {

// Key material as written by `smartagg keygen`.
struct ProvisionedKeys {
  SystemParams params;
  AggregatorProvision aggregator;
  std::vector<MeterKey> meters;
};

struct SelfTestResult {
  bool ok = true;
  std::string failed_check;  // empty when ok
  size_t checks_run = 0;
};

// Runs the p=5, q=7 transcript, a small random-key invariant suite and the
// calibration report check, then (if given) consistency checks on
// provisioned key material. Logs one line per check and stops at the first
// failure.
SelfTestResult RunSelfTest(std::ostream& log,
                           const std::optional<ProvisionedKeys>& provisioned = {});

}  // namespace smartagg

#endif  // SMARTAGG_SELFTEST_H_
