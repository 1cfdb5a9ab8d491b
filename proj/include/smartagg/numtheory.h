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

// Arbitrary-precision integer helpers shared by every cryptographic layer.
//
// Integers are GMP `mpz_class` values. BigNat documents call sites where the
// value is known to be nonnegative; the two aliases are interchangeable.

#ifndef SMARTAGG_NUMTHEORY_H_
#define SMARTAGG_NUMTHEORY_H_

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace smartagg {

using BigInt = mpz_class;
using BigNat = mpz_class;

// Seeded random source. All randomness in the library is drawn from one of
// these; there is no ambient entropy.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : engine_(seed) {}

  // Derives an independent stream from a master seed and a path of indices
  // (e.g. {round, meter}). Same inputs always give the same stream.
  static RandomSource Derive(uint64_t master_seed,
                             std::initializer_list<uint64_t> path);

  uint64_t NextU64() { return engine_(); }

  // Uniform integer with exactly `bits` random bits (value < 2^bits).
  BigNat Bits(unsigned bits);

  // Uniform in [0, bound). bound must be positive.
  BigNat Below(const BigNat& bound);

  // Uniform in [lo, hi). Requires lo < hi.
  BigNat Range(const BigNat& lo, const BigNat& hi);

  double StandardNormal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Probable prime with exactly `bits` significant bits. A small-prime sieve
// runs before 40 Miller-Rabin rounds with rng-drawn witnesses.
BigNat GenPrime(unsigned bits, RandomSource& rng);

// Miller-Rabin with `rounds` random witnesses plus trial division by the
// small-prime table.
bool IsProbablePrime(const BigNat& candidate, int rounds, RandomSource& rng);

// First `count` primes, computed once.
std::span<const uint32_t> SmallPrimes(size_t count = 1000);

BigNat Lcm(const BigNat& a, const BigNat& b);
BigNat Gcd(const BigInt& a, const BigInt& b);

// x in (0, m) with a*x = 1 mod m. Throws kNotInvertible.
BigNat ModInv(const BigInt& a, const BigNat& m);

// base^exp mod m, result in [0, m). Negative exponents go through ModInv.
BigNat ModPow(const BigInt& base, const BigInt& exp, const BigNat& m);

// Reduces into [0, m) for any sign of a.
BigNat Mod(const BigInt& a, const BigNat& m);

// (u - 1) / n; throws kNotLDomain unless n divides u - 1.
BigNat PaillierL(const BigNat& u, const BigNat& n);

// Canonical encoding: sign byte (0x00 nonneg, 0x01 negative), 4-byte
// big-endian length, minimal big-endian magnitude (empty for zero).
using Bytes = std::vector<uint8_t>;
void AppendCanonical(const BigInt& value, Bytes& out);
Bytes EncodeCanonical(const BigInt& value);
// Decodes from the front of `in`, advancing it. Throws kParseError.
BigInt DecodeCanonical(std::span<const uint8_t>& in);

std::string ToHex(const BigInt& value);
BigInt FromHex(const std::string& text);
std::string ToDecimal(const BigInt& value);

}  // namespace smartagg

#endif  // SMARTAGG_NUMTHEORY_H_
