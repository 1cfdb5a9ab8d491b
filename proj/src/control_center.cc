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

#include "smartagg/entities.h"

namespace smartagg {

NetworkTotals CcCollect(const std::vector<RoundAggregate>& aggregates) {
  NetworkTotals totals;
  totals.total = 0;
  for (const RoundAggregate& agg : aggregates) {
    totals.total += agg.recovered;
    totals.per_group.emplace_back(agg.group_id, agg.recovered);
  }
  return totals;
}

}  // namespace smartagg
