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

// Protocol roles: key initialization center (setup), smart meter (report
// generation), data aggregator (verification, fault handling, aggregation)
// and control center (totals).

#ifndef SMARTAGG_ENTITIES_H_
#define SMARTAGG_ENTITIES_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smartagg/error.h"
#include "smartagg/masking.h"
#include "smartagg/numtheory.h"
#include "smartagg/paillier.h"

namespace smartagg {

using Tag = std::array<uint8_t, 32>;

inline constexpr char kHashAlgorithm[] = "sha256";
inline constexpr uint64_t kDefaultReadingCap = 0xffffffffULL;

// Public parameters published by the KIC.
struct SystemParams {
  BigNat n;
  BigNat n_sq;
  BigNat g1;
  BigNat g2;
  BigNat h;
  size_t d = 0;
  size_t num_groups = 0;
  std::string hash_alg = kHashAlgorithm;
  BigNat reading_cap = static_cast<unsigned long>(kDefaultReadingCap);

  PaillierPublic paillier() const { return PaillierPublic{n, n_sq, g1}; }
  size_t meter_count() const { return d * num_groups; }
};

struct MeterKey {
  uint32_t group_id = 0;
  BigNat x;            // share index; never serialized into a report
  BigNat share;        // G(x)
  BigInt scaled_beta;  // Delta * beta_x
  BigInt s;            // Delta * beta_x * G(x)
  BigNat mask;         // h^s mod n^2
};

// H1(t | s) and H2(t | C | h^s), SHA-256 with domain-separation bytes 0x01
// and 0x02 over canonical integer encodings.
Tag Tag1(uint64_t t, const BigInt& s);
Tag Tag2(uint64_t t, const BigNat& c, const BigNat& mask);
std::string TagHex(const Tag& tag);

struct MeterReport {
  uint64_t t = 0;
  uint32_t group_id = 0;
  Ciphertext c = Ciphertext::Unchecked(1);
  Tag tag1{};
  Tag tag2{};

  // t (8 bytes BE) | y (4 bytes BE) | C (canonical) | tag1 | tag2.
  Bytes Serialize() const;
  static MeterReport Parse(std::span<const uint8_t> bytes);
};

// C = g1^m * r^n * h^s mod n^2 with a fresh r drawn from rng.
// Throws kReadingRange when m is negative or above params.reading_cap.
MeterReport MakeReport(const MeterKey& key, const SystemParams& params,
                       const BigNat& reading, uint64_t t, RandomSource& rng);

struct MaskEntry {
  BigInt s;
  BigNat mask;
};

struct AggregatorProvision {
  PaillierPrivate priv;
  std::vector<MaskEntry> mask_table;  // one entry per share position
};

struct Deployment {
  SystemParams params;
  std::vector<std::vector<MeterKey>> meters;  // [group][position]
  AggregatorProvision aggregator;
  // Held by the KIC only; exposed for test oracles.
  PaillierKeys keys;
  MaskPolynomial polynomial;
  ScaledWeights weights;
  SharePolicy policy;
};

struct KicOptions {
  GeneratorChoice generator = GeneratorChoice::kRandom;
  BigNat reading_cap = static_cast<unsigned long>(kDefaultReadingCap);
  std::optional<SharePolicy> policy;  // default {1..d}
};

// Full setup: Paillier keys, one global mask polynomial with secret p, the
// same share set in every group. Throws kInvalidArgument when
// meter_count * reading_cap >= n.
Deployment KicSetup(unsigned bits, size_t d, size_t num_groups,
                    RandomSource& rng, const KicOptions& options = {});

// Setup from fixed material, bypassing prime generation. Used for the
// p=5, q=7 fixture.
Deployment KicSetupFromMaterial(const PaillierKeys& keys, const BigNat& g2,
                                const MaskPolynomial& polynomial,
                                const SharePolicy& policy, size_t num_groups,
                                const BigNat& reading_cap);

// p=5, q=7, g1=36, g2=2, G(x) = 5 + 3x, d=2, reading cap 8.
Deployment ToyDeployment(size_t num_groups = 2);

struct Substitution {
  Tag missing_tag1{};
  uint32_t donor_group = 0;
  BigNat m_bar;
};

struct RoundAggregate {
  uint32_t group_id = 0;
  uint64_t t = 0;
  Ciphertext c_sum = Ciphertext::Unchecked(1);
  BigNat m_sum;
  // m_sum lifted to (-n/2, n/2]. Differs from m_sum only when a substitution
  // drove the group total negative, which sets `wrapped`.
  BigInt recovered;
  bool wrapped = false;
  std::vector<Substitution> substitutions;

  // key=value lines: group, t, M_sum (decimal), substitutions.
  std::string ToRecord() const;
};

// One ciphertext entering a group product, tagged with its share position.
struct Contribution {
  Tag tag1{};
  Ciphertext c = Ciphertext::Unchecked(1);
  std::optional<Substitution> substitution;
};

// Operation counts on the fault-handling path only.
struct OpCounters {
  uint64_t substitutions = 0;
  uint64_t mod_exp = 0;
  uint64_t mod_inv = 0;
  uint64_t mod_mul = 0;
  uint64_t tag_comparisons = 0;

  friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

// Verified reports for one round, keyed by group id.
using GroupedReports = std::map<uint32_t, std::vector<MeterReport>>;

struct GroupFailure {
  uint32_t group_id = 0;
  ErrorCode code = ErrorCode::kIncompleteGroup;
  std::string message;
};

struct RoundOutcome {
  uint64_t t = 0;
  std::vector<RoundAggregate> aggregates;
  std::vector<GroupFailure> failures;
  size_t rejected = 0;
  BigNat m_bar;
};

// The data aggregator. Holds lambda, mu and the per-position mask table.
// Mutated once per round by a single writer.
class Aggregator {
 public:
  Aggregator(SystemParams params, AggregatorProvision provision);

  // Accepts iff tag1 matches H1(t | s) for some table entry and tag2 matches
  // that entry's H2(t | C | h^s), with t the current round.
  bool Verify(const MeterReport& report, uint64_t t) const;

  // Tags of a complete reference group that are absent from `group`. The
  // reference is the lowest-id group holding d distinct tags. Throws
  // kNoReferenceGroup when no group is complete.
  std::vector<Tag> DetectFaults(const GroupedReports& round,
                                uint32_t group) const;

  // Report with the given tag1 from the lowest-id complete group other than
  // `exclude_group`. Throws kNoDonor.
  const MeterReport& FindDonor(const GroupedReports& round, const Tag& tag1,
                               uint32_t exclude_group) const;

  // donor.C / g1^m_bar mod n^2.
  Ciphertext Substitute(const MeterReport& donor, const BigNat& m_bar);

  // Product and decryption of exactly d contributions, one per position.
  // Throws kDuplicatePosition or kIncompleteGroup.
  RoundAggregate Aggregate(uint32_t group, uint64_t t,
                           const std::vector<Contribution>& contributions) const;

  // Detect, substitute and aggregate one group.
  RoundAggregate ProcessGroup(const GroupedReports& round, uint32_t group,
                              uint64_t t);

  // Verifies every report, processes every group that sent at least one
  // valid report, records failures, then advances m_bar from the recovered
  // network total.
  RoundOutcome ProcessRound(const std::vector<MeterReport>& reports,
                            uint64_t t);

  // round(previous_total / meter_count); 0 before the first round.
  BigNat MBar() const;
  void set_previous_total(const BigInt& total) { previous_total_ = total; }
  const std::vector<BigInt>& total_history() const { return total_history_; }

  const OpCounters& counters() const { return counters_; }
  void ResetCounters() { counters_ = {}; }
  const SystemParams& params() const { return params_; }

 private:
  std::optional<size_t> PositionOf(const Tag& tag1, uint64_t t) const;
  bool IsComplete(const std::vector<MeterReport>& reports) const;

  SystemParams params_;
  PaillierPublic pub_;
  AggregatorProvision provision_;
  // Cached H1 values for the round last seen.
  mutable uint64_t cached_t_ = ~uint64_t{0};
  mutable std::vector<Tag> cached_tag1_;
  BigInt previous_total_ = 0;
  std::vector<BigInt> total_history_;
  OpCounters counters_;
};

struct NetworkTotals {
  BigInt total;
  std::vector<std::pair<uint32_t, BigInt>> per_group;
};

// Plain integer sum of the decrypted group totals.
NetworkTotals CcCollect(const std::vector<RoundAggregate>& aggregates);

}  // namespace smartagg

#endif  // SMARTAGG_ENTITIES_H_
