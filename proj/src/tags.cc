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

#include <openssl/evp.h>

#include <cstdio>

#include "smartagg/entities.h"
#include "smartagg/error.h"

namespace smartagg {
namespace {

constexpr uint8_t kH1Domain = 0x01;
constexpr uint8_t kH2Domain = 0x02;

void AppendU64(uint64_t v, Bytes& out) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void AppendU32(uint32_t v, Bytes& out) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(v >> shift));
  }
}

Tag Sha256(const Bytes& input) {
  Tag digest{};
  unsigned int len = 0;
  if (EVP_Digest(input.data(), input.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != digest.size()) {
    throw std::runtime_error("SHA-256 evaluation failed");
  }
  return digest;
}

}  // namespace

Tag Tag1(uint64_t t, const BigInt& s) {
  Bytes input{kH1Domain};
  AppendU64(t, input);
  AppendCanonical(s, input);
  return Sha256(input);
}

Tag Tag2(uint64_t t, const BigNat& c, const BigNat& mask) {
  Bytes input{kH2Domain};
  AppendU64(t, input);
  AppendCanonical(c, input);
  AppendCanonical(mask, input);
  return Sha256(input);
}

std::string TagHex(const Tag& tag) {
  std::string out;
  out.reserve(tag.size() * 2);
  char buf[3];
  for (uint8_t b : tag) {
    std::snprintf(buf, sizeof(buf), "%02x", b);
    out += buf;
  }
  return out;
}

Bytes MeterReport::Serialize() const {
  Bytes out;
  AppendU64(t, out);
  AppendU32(group_id, out);
  AppendCanonical(c.value(), out);
  out.insert(out.end(), tag1.begin(), tag1.end());
  out.insert(out.end(), tag2.begin(), tag2.end());
  return out;
}

MeterReport MeterReport::Parse(std::span<const uint8_t> bytes) {
  if (bytes.size() < 12) throw Error(ErrorCode::kParseError, "truncated report");
  MeterReport report;
  for (int i = 0; i < 8; ++i) report.t = (report.t << 8) | bytes[i];
  for (int i = 8; i < 12; ++i) report.group_id = (report.group_id << 8) | bytes[i];
  bytes = bytes.subspan(12);
  BigInt c = DecodeCanonical(bytes);
  if (c <= 0) throw Error(ErrorCode::kParseError, "ciphertext must be positive");
  report.c = Ciphertext::Unchecked(std::move(c));
  if (bytes.size() != 64) {
    throw Error(ErrorCode::kParseError, "report tags must be exactly 64 bytes");
  }
  std::copy(bytes.begin(), bytes.begin() + 32, report.tag1.begin());
  std::copy(bytes.begin() + 32, bytes.end(), report.tag2.begin());
  return report;
}

}  // namespace smartagg
