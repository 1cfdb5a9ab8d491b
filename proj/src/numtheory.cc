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
#include "smartagg/numtheory.h"

#include <algorithm>
#include <array>

#include "smartagg/error.h"

namespace smartagg {

static_assert(sizeof(unsigned long) == 8, "mpz word conversions assume LP64");

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kNotLDomain: return "NotLDomain";
    case ErrorCode::kPlaintextRange: return "PlaintextRange";
    case ErrorCode::kBadRandomizer: return "BadRandomizer";
    case ErrorCode::kReadingRange: return "ReadingRange";
    case ErrorCode::kNoReferenceGroup: return "NoReferenceGroup";
    case ErrorCode::kNoDonor: return "NoDonor";
    case ErrorCode::kIncompleteGroup: return "IncompleteGroup";
    case ErrorCode::kDuplicatePosition: return "DuplicatePosition";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

RandomSource RandomSource::Derive(uint64_t master_seed,
                                  std::initializer_list<uint64_t> path) {
  std::vector<uint32_t> words;
  words.reserve(2 * (path.size() + 1));
  auto push = [&words](uint64_t v) {
    words.push_back(static_cast<uint32_t>(v));
    words.push_back(static_cast<uint32_t>(v >> 32));
  };
  push(master_seed);
  for (uint64_t v : path) push(v);
  std::seed_seq seq(words.begin(), words.end());
  std::array<uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return RandomSource((uint64_t{out[1]} << 32) | out[0]);
}

BigNat RandomSource::Bits(unsigned bits) {
  BigNat result = 0;
  unsigned remaining = bits;
  while (remaining >= 64) {
    result <<= 64;
    uint64_t word = engine_();
    result += static_cast<unsigned long>(word);
    remaining -= 64;
  }
  if (remaining > 0) {
    result <<= remaining;
    uint64_t word = engine_() >> (64 - remaining);
    result += static_cast<unsigned long>(word);
  }
  return result;
}

BigNat RandomSource::Below(const BigNat& bound) {
  if (bound <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "Below: bound must be positive");
  }
  unsigned bits = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
  for (;;) {
    BigNat candidate = Bits(bits);
    if (candidate < bound) return candidate;
  }
}

BigNat RandomSource::Range(const BigNat& lo, const BigNat& hi) {
  if (lo >= hi) {
    throw Error(ErrorCode::kInvalidArgument, "Range: empty interval");
  }
  return lo + Below(hi - lo);
}

std::span<const uint32_t> SmallPrimes(size_t count) {
  static const std::vector<uint32_t> table = [] {
    constexpr uint32_t kLimit = 8000;  // the 1000th prime is 7919
    std::vector<bool> composite(kLimit + 1, false);
    std::vector<uint32_t> primes;
    for (uint32_t i = 2; i <= kLimit; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (uint64_t j = uint64_t{i} * i; j <= kLimit; j += i) composite[j] = true;
    }
    primes.resize(1000);
    return primes;
  }();
  return std::span<const uint32_t>(table).first(std::min(count, table.size()));
}

namespace {

bool MillerRabinRound(const BigNat& n, const BigNat& n_minus_1,
                      const BigNat& odd_part, unsigned twos,
                      const BigNat& witness) {
  BigNat x = ModPow(witness, odd_part, n);
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned i = 1; i < twos; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

bool IsProbablePrime(const BigNat& candidate, int rounds, RandomSource& rng) {
  if (candidate < 2) return false;
  for (uint32_t p : SmallPrimes()) {
    if (candidate == p) return true;
    if (mpz_divisible_ui_p(candidate.get_mpz_t(), p)) return false;
  }
  BigNat n_minus_1 = candidate - 1;
  BigNat odd_part = n_minus_1;
  unsigned twos = static_cast<unsigned>(mpz_scan1(odd_part.get_mpz_t(), 0));
  odd_part >>= twos;
  for (int i = 0; i < rounds; ++i) {
    BigNat witness = rng.Range(2, n_minus_1);
    if (!MillerRabinRound(candidate, n_minus_1, odd_part, twos, witness)) {
      return false;
    }
  }
  return true;
}

BigNat GenPrime(unsigned bits, RandomSource& rng) {
  if (bits < 2) {
    throw Error(ErrorCode::kInvalidArgument, "GenPrime: bits must be >= 2");
  }
  constexpr int kRounds = 40;
  for (;;) {
    BigNat candidate = rng.Bits(bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    mpz_setbit(candidate.get_mpz_t(), 0);
    if (IsProbablePrime(candidate, kRounds, rng)) return candidate;
  }
}

BigNat Gcd(const BigInt& a, const BigInt& b) {
  BigNat g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigNat Lcm(const BigNat& a, const BigNat& b) {
  BigNat l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

BigNat Mod(const BigInt& a, const BigNat& m) {
  BigNat r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigNat ModInv(const BigInt& a, const BigNat& m) {
  if (m <= 1) {
    throw Error(ErrorCode::kInvalidArgument, "ModInv: modulus must exceed 1");
  }
  BigNat x;
  if (mpz_invert(x.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::kNotInvertible,
                ToDecimal(a) + " has no inverse mod " + ToDecimal(m));
  }
  return x;
}

BigNat ModPow(const BigInt& base, const BigInt& exp, const BigNat& m) {
  if (m <= 1) {
    throw Error(ErrorCode::kInvalidArgument, "ModPow: modulus must exceed 1");
  }
  BigNat b = Mod(base, m);
  BigInt e = exp;
  if (e < 0) {
    b = ModInv(b, m);
    e = -e;
  }
  BigNat r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigNat PaillierL(const BigNat& u, const BigNat& n) {
  BigNat numerator = u - 1;
  if (numerator < 0 || !mpz_divisible_p(numerator.get_mpz_t(), n.get_mpz_t())) {
    throw Error(ErrorCode::kNotLDomain, "u != 1 mod n");
  }
  BigNat q;
  mpz_divexact(q.get_mpz_t(), numerator.get_mpz_t(), n.get_mpz_t());
  return q;
}

void AppendCanonical(const BigInt& value, Bytes& out) {
  out.push_back(value < 0 ? 0x01 : 0x00);
  size_t count = 0;
  Bytes magnitude;
  if (value != 0) {
    magnitude.resize((mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8);
    mpz_export(magnitude.data(), &count, 1, 1, 1, 0, value.get_mpz_t());
    magnitude.resize(count);
  }
  uint32_t len = static_cast<uint32_t>(magnitude.size());
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(len >> shift));
  }
  out.insert(out.end(), magnitude.begin(), magnitude.end());
}

Bytes EncodeCanonical(const BigInt& value) {
  Bytes out;
  AppendCanonical(value, out);
  return out;
}

BigInt DecodeCanonical(std::span<const uint8_t>& in) {
  if (in.size() < 5) throw Error(ErrorCode::kParseError, "truncated integer");
  uint8_t sign = in[0];
  if (sign > 1) throw Error(ErrorCode::kParseError, "bad sign tag");
  uint32_t len = (uint32_t{in[1]} << 24) | (uint32_t{in[2]} << 16) |
                 (uint32_t{in[3]} << 8) | uint32_t{in[4]};
  in = in.subspan(5);
  if (in.size() < len) throw Error(ErrorCode::kParseError, "truncated integer");
  if (len > 0 && in[0] == 0) {
    throw Error(ErrorCode::kParseError, "non-minimal integer encoding");
  }
  BigInt value = 0;
  if (len > 0) mpz_import(value.get_mpz_t(), len, 1, 1, 1, 0, in.data());
  if (sign == 1) {
    if (value == 0) throw Error(ErrorCode::kParseError, "negative zero");
    value = -value;
  }
  in = in.subspan(len);
  return value;
}

std::string ToHex(const BigInt& value) { return value.get_str(16); }

BigInt FromHex(const std::string& text) {
  BigInt value;
  if (text.empty() || value.set_str(text, 16) != 0) {
    throw Error(ErrorCode::kParseError, "bad hex integer '" + text + "'");
  }
  return value;
}

std::string ToDecimal(const BigInt& value) { return value.get_str(10); }

}  // namespace smartagg
