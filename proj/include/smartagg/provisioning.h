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

// Plain-text key material files. Each file starts with a format-version line
// ("smartagg-<kind> v1") followed by key=value lines; integers are hex.

#ifndef SMARTAGG_PROVISIONING_H_
#define SMARTAGG_PROVISIONING_H_

#include <map>
#include <string>

#include "smartagg/entities.h"

namespace smartagg {

inline constexpr char kParamsKind[] = "params";
inline constexpr char kMeterKeyKind[] = "meter-key";
inline constexpr char kAggregatorKind[] = "aggregator";
inline constexpr char kFactorsKind[] = "factors";

struct KeyValueFile {
  std::string kind;
  std::map<std::string, std::string> entries;

  std::string Format() const;
  // Throws kParseError on a missing/foreign header or malformed lines.
  static KeyValueFile Parse(const std::string& text, const std::string& kind);

  const std::string& Get(const std::string& key) const;
  BigInt GetInt(const std::string& key) const;
  uint64_t GetU64(const std::string& key) const;
};

std::string FormatParams(const SystemParams& params);
SystemParams ParseParams(const std::string& text);

std::string FormatMeterKey(const MeterKey& key);
MeterKey ParseMeterKey(const std::string& text);

std::string FormatAggregator(const AggregatorProvision& provision);
AggregatorProvision ParseAggregator(const std::string& text);

std::string FormatFactors(const Factors& factors);
Factors ParseFactors(const std::string& text);

}  // namespace smartagg

#endif  // SMARTAGG_PROVISIONING_H_
