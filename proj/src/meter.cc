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
#include "smartagg/error.h"

namespace smartagg {

MeterReport MakeReport(const MeterKey& key, const SystemParams& params,
                       const BigNat& reading, uint64_t t, RandomSource& rng) {
  if (reading < 0 || reading > params.reading_cap) {
    throw Error(ErrorCode::kReadingRange,
                "reading " + ToDecimal(reading) + " outside [0, cap]");
  }
  PaillierPublic pub = params.paillier();
  Ciphertext base = Encrypt(pub, reading, rng);
  BigNat c = base.value() * key.mask % params.n_sq;

  MeterReport report;
  report.t = t;
  report.group_id = key.group_id;
  report.tag1 = Tag1(t, key.s);
  report.tag2 = Tag2(t, c, key.mask);
  report.c = Ciphertext::Unchecked(std::move(c));
  return report;
}

}  // namespace smartagg
