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

#include <algorithm>
#include <set>
#include <sstream>

#include "smartagg/entities.h"
#include "smartagg/error.h"

namespace smartagg {

Aggregator::Aggregator(SystemParams params, AggregatorProvision provision)
    : params_(std::move(params)),
      pub_(params_.paillier()),
      provision_(std::move(provision)) {
  if (provision_.mask_table.size() != params_.d) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask table must hold exactly d entries");
  }
}

std::optional<size_t> Aggregator::PositionOf(const Tag& tag1,
                                             uint64_t t) const {
  if (cached_t_ != t) {
    cached_tag1_.clear();
    for (const MaskEntry& entry : provision_.mask_table) {
      cached_tag1_.push_back(Tag1(t, entry.s));
    }
    cached_t_ = t;
  }
  auto it = std::find(cached_tag1_.begin(), cached_tag1_.end(), tag1);
  if (it == cached_tag1_.end()) return std::nullopt;
  return static_cast<size_t>(it - cached_tag1_.begin());
}

bool Aggregator::Verify(const MeterReport& report, uint64_t t) const {
  if (report.t != t) return false;
  const BigNat& c = report.c.value();
  if (c < 1 || c >= params_.n_sq) return false;
  std::optional<size_t> position = PositionOf(report.tag1, t);
  if (!position) return false;
  const MaskEntry& entry = provision_.mask_table[*position];
  return Tag2(t, c, entry.mask) == report.tag2;
}

bool Aggregator::IsComplete(const std::vector<MeterReport>& reports) const {
  if (reports.size() != params_.d) return false;
  std::set<Tag> tags;
  for (const MeterReport& r : reports) tags.insert(r.tag1);
  return tags.size() == params_.d;
}

std::vector<Tag> Aggregator::DetectFaults(const GroupedReports& round,
                                          uint32_t group) const {
  const std::vector<MeterReport>* reference = nullptr;
  for (const auto& [id, reports] : round) {
    if (IsComplete(reports)) {
      reference = &reports;
      break;
    }
  }
  if (reference == nullptr) {
    throw Error(ErrorCode::kNoReferenceGroup, "every group is incomplete");
  }
  std::set<Tag> present;
  if (auto it = round.find(group); it != round.end()) {
    for (const MeterReport& r : it->second) present.insert(r.tag1);
  }
  std::vector<Tag> missing;
  for (const MeterReport& r : *reference) {
    if (!present.contains(r.tag1)) missing.push_back(r.tag1);
  }
  return missing;
}

const MeterReport& Aggregator::FindDonor(const GroupedReports& round,
                                         const Tag& tag1,
                                         uint32_t exclude_group) const {
  for (const auto& [id, reports] : round) {
    if (id == exclude_group || !IsComplete(reports)) continue;
    for (const MeterReport& r : reports) {
      if (r.tag1 == tag1) return r;
    }
  }
  throw Error(ErrorCode::kNoDonor, "no complete group holds tag " + TagHex(tag1));
}

Ciphertext Aggregator::Substitute(const MeterReport& donor,
                                  const BigNat& m_bar) {
  ++counters_.substitutions;
  ++counters_.mod_exp;
  ++counters_.mod_inv;
  ++counters_.mod_mul;
  return RemoveKnown(pub_, donor.c, m_bar);
}

RoundAggregate Aggregator::Aggregate(
    uint32_t group, uint64_t t,
    const std::vector<Contribution>& contributions) const {
  std::vector<bool> covered(params_.d, false);
  size_t covered_count = 0;
  RoundAggregate agg;
  agg.group_id = group;
  agg.t = t;
  BigNat product = 1;
  for (const Contribution& contribution : contributions) {
    std::optional<size_t> position = PositionOf(contribution.tag1, t);
    if (!position) {
      throw Error(ErrorCode::kIncompleteGroup,
                  "contribution with unknown tag " + TagHex(contribution.tag1));
    }
    if (covered[*position]) {
      throw Error(ErrorCode::kDuplicatePosition,
                  "group " + std::to_string(group) + " has two reports for tag " +
                      TagHex(contribution.tag1));
    }
    covered[*position] = true;
    ++covered_count;
    product = product * contribution.c.value() % params_.n_sq;
    if (contribution.substitution) {
      agg.substitutions.push_back(*contribution.substitution);
    }
  }
  if (covered_count != params_.d) {
    throw Error(ErrorCode::kIncompleteGroup,
                "group " + std::to_string(group) + " covers " +
                    std::to_string(covered_count) + " of " +
                    std::to_string(params_.d) + " positions");
  }
  agg.c_sum = Ciphertext::Unchecked(std::move(product));
  agg.m_sum = Decrypt(provision_.priv, pub_, agg.c_sum);
  agg.recovered = agg.m_sum;
  if (2 * agg.m_sum > params_.n) agg.recovered -= params_.n;
  agg.wrapped = agg.recovered < 0;
  return agg;
}

RoundAggregate Aggregator::ProcessGroup(const GroupedReports& round,
                                        uint32_t group, uint64_t t) {
  static const std::vector<MeterReport> kNone;
  auto it = round.find(group);
  const std::vector<MeterReport>& own = it == round.end() ? kNone : it->second;

  std::vector<Contribution> contributions;
  contributions.reserve(params_.d);
  for (const MeterReport& r : own) {
    contributions.push_back(Contribution{r.tag1, r.c, std::nullopt});
  }
  if (!IsComplete(own)) {
    std::vector<Tag> missing = DetectFaults(round, group);
    counters_.tag_comparisons += params_.d;
    BigNat m_bar = MBar();
    for (const Tag& tag : missing) {
      const MeterReport& donor = FindDonor(round, tag, group);
      contributions.push_back(Contribution{
          tag, Substitute(donor, m_bar), Substitution{tag, donor.group_id, m_bar}});
    }
  }
  return Aggregate(group, t, contributions);
}

RoundOutcome Aggregator::ProcessRound(const std::vector<MeterReport>& reports,
                                      uint64_t t) {
  RoundOutcome outcome;
  outcome.t = t;
  outcome.m_bar = MBar();
  GroupedReports round;
  for (const MeterReport& r : reports) {
    if (r.group_id < params_.num_groups && Verify(r, t)) {
      round[r.group_id].push_back(r);
    } else {
      ++outcome.rejected;
    }
  }
  BigInt total = 0;
  for (uint32_t g = 0; g < params_.num_groups; ++g) {
    try {
      RoundAggregate agg = ProcessGroup(round, g, t);
      total += agg.recovered;
      outcome.aggregates.push_back(std::move(agg));
    } catch (const Error& e) {
      outcome.failures.push_back(GroupFailure{g, e.code(), e.what()});
    }
  }
  previous_total_ = total;
  total_history_.push_back(total);
  return outcome;
}

BigNat Aggregator::MBar() const {
  if (previous_total_ <= 0) return 0;
  BigNat meters = static_cast<unsigned long>(params_.meter_count());
  return (2 * previous_total_ + meters) / (2 * meters);
}

std::string RoundAggregate::ToRecord() const {
  std::ostringstream out;
  out << "group=" << group_id << "\n"
      << "t=" << t << "\n"
      << "M_sum=" << ToDecimal(m_sum) << "\n"
      << "recovered=" << ToDecimal(recovered) << "\n"
      << "wrapped=" << (wrapped ? 1 : 0) << "\n"
      << "substitutions=";
  for (size_t i = 0; i < substitutions.size(); ++i) {
    const Substitution& s = substitutions[i];
    if (i > 0) out << ";";
    out << TagHex(s.missing_tag1) << ":" << s.donor_group << ":"
        << ToDecimal(s.m_bar);
  }
  out << "\n";
  return out.str();
}

}  // namespace smartagg
