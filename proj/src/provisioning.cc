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

#include "smartagg/provisioning.h"

#include <charconv>
#include <sstream>

#include "smartagg/error.h"

namespace smartagg {
namespace {

constexpr char kHeaderPrefix[] = "smartagg-";
constexpr char kVersion[] = " v1";

std::string Header(const std::string& kind) {
  return std::string(kHeaderPrefix) + kind + kVersion;
}

}  // namespace

std::string KeyValueFile::Format() const {
  std::ostringstream out;
  out << Header(kind) << "\n";
  for (const auto& [key, value] : entries) out << key << "=" << value << "\n";
  return out.str();
}

KeyValueFile KeyValueFile::Parse(const std::string& text,
                                 const std::string& kind) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != Header(kind)) {
    throw Error(ErrorCode::kParseError, "expected header '" + Header(kind) + "'");
  }
  KeyValueFile file{kind, {}};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::kParseError, "malformed line '" + line + "'");
    }
    if (!file.entries.emplace(line.substr(0, eq), line.substr(eq + 1)).second) {
      throw Error(ErrorCode::kParseError, "duplicate key " + line.substr(0, eq));
    }
  }
  return file;
}

const std::string& KeyValueFile::Get(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) {
    throw Error(ErrorCode::kParseError, kind + " file lacks key " + key);
  }
  return it->second;
}

BigInt KeyValueFile::GetInt(const std::string& key) const {
  const std::string& v = Get(key);
  if (!v.empty() && v[0] == '-') return -FromHex(v.substr(1));
  return FromHex(v);
}

uint64_t KeyValueFile::GetU64(const std::string& key) const {
  const std::string& v = Get(key);
  uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::kParseError, "bad integer for " + key);
  }
  return out;
}

std::string FormatParams(const SystemParams& p) {
  KeyValueFile f{kParamsKind, {}};
  f.entries["n"] = ToHex(p.n);
  f.entries["n_sq"] = ToHex(p.n_sq);
  f.entries["g1"] = ToHex(p.g1);
  f.entries["g2"] = ToHex(p.g2);
  f.entries["h"] = ToHex(p.h);
  f.entries["d"] = std::to_string(p.d);
  f.entries["num_groups"] = std::to_string(p.num_groups);
  f.entries["hash_alg"] = p.hash_alg;
  f.entries["reading_cap"] = ToHex(p.reading_cap);
  return f.Format();
}

SystemParams ParseParams(const std::string& text) {
  KeyValueFile f = KeyValueFile::Parse(text, kParamsKind);
  SystemParams p;
  p.n = f.GetInt("n");
  p.n_sq = f.GetInt("n_sq");
  p.g1 = f.GetInt("g1");
  p.g2 = f.GetInt("g2");
  p.h = f.GetInt("h");
  p.d = f.GetU64("d");
  p.num_groups = f.GetU64("num_groups");
  p.hash_alg = f.Get("hash_alg");
  p.reading_cap = f.GetInt("reading_cap");
  if (p.hash_alg != kHashAlgorithm) {
    throw Error(ErrorCode::kParseError, "unsupported hash " + p.hash_alg);
  }
  return p;
}

namespace {

std::string SignedHex(const BigInt& v) {
  return v < 0 ? "-" + ToHex(-v) : ToHex(v);
}

}  // namespace

std::string FormatMeterKey(const MeterKey& k) {
  KeyValueFile f{kMeterKeyKind, {}};
  f.entries["group_id"] = std::to_string(k.group_id);
  f.entries["x"] = ToHex(k.x);
  f.entries["share"] = ToHex(k.share);
  f.entries["scaled_beta"] = SignedHex(k.scaled_beta);
  f.entries["s"] = SignedHex(k.s);
  f.entries["mask"] = ToHex(k.mask);
  return f.Format();
}

MeterKey ParseMeterKey(const std::string& text) {
  KeyValueFile f = KeyValueFile::Parse(text, kMeterKeyKind);
  MeterKey k;
  k.group_id = static_cast<uint32_t>(f.GetU64("group_id"));
  k.x = f.GetInt("x");
  k.share = f.GetInt("share");
  k.scaled_beta = f.GetInt("scaled_beta");
  k.s = f.GetInt("s");
  k.mask = f.GetInt("mask");
  return k;
}

std::string FormatAggregator(const AggregatorProvision& a) {
  KeyValueFile f{kAggregatorKind, {}};
  f.entries["lambda"] = ToHex(a.priv.lambda);
  f.entries["mu"] = ToHex(a.priv.mu);
  f.entries["positions"] = std::to_string(a.mask_table.size());
  for (size_t i = 0; i < a.mask_table.size(); ++i) {
    f.entries["mask." + std::to_string(i) + ".s"] = SignedHex(a.mask_table[i].s);
    f.entries["mask." + std::to_string(i) + ".value"] = ToHex(a.mask_table[i].mask);
  }
  return f.Format();
}

AggregatorProvision ParseAggregator(const std::string& text) {
  KeyValueFile f = KeyValueFile::Parse(text, kAggregatorKind);
  AggregatorProvision a;
  a.priv.lambda = f.GetInt("lambda");
  a.priv.mu = f.GetInt("mu");
  uint64_t positions = f.GetU64("positions");
  for (uint64_t i = 0; i < positions; ++i) {
    a.mask_table.push_back(MaskEntry{f.GetInt("mask." + std::to_string(i) + ".s"),
                                     f.GetInt("mask." + std::to_string(i) + ".value")});
  }
  return a;
}

std::string FormatFactors(const Factors& factors) {
  KeyValueFile f{kFactorsKind, {}};
  f.entries["p"] = ToHex(factors.p);
  f.entries["q"] = ToHex(factors.q);
  return f.Format();
}

Factors ParseFactors(const std::string& text) {
  KeyValueFile f = KeyValueFile::Parse(text, kFactorsKind);
  return Factors{f.GetInt("p"), f.GetInt("q")};
}

}  // namespace smartagg
