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

#include <gtest/gtest.h>

#include "smartagg/error.h"

namespace smartagg {
namespace {

// Independent oracles.
BigNat NaivePow(BigNat base, uint64_t exp, const BigNat& m) {
  BigNat acc = 1;
  for (uint64_t i = 0; i < exp; ++i) acc = acc * base % m;
  return acc;
}

bool TrialDivisionPrime(uint64_t v) {
  if (v < 2) return false;
  for (uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

// Extended Euclid over signed 64-bit integers.
int64_t ExtendedEuclidInverse(int64_t a, int64_t m) {
  int64_t old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) return -1;
  return ((old_s % m) + m) % m;
}

TEST(GenPrimeTest, TwoBitsForcesThree) {
  RandomSource rng(1);
  EXPECT_EQ(GenPrime(2, rng), 3);
}

TEST(GenPrimeTest, EightBitsMatchesTrialDivision) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    RandomSource rng(seed);
    BigNat p = GenPrime(8, rng);
    EXPECT_GE(p, 128);
    EXPECT_LE(p, 255);
    EXPECT_TRUE(TrialDivisionPrime(p.get_ui())) << p;
  }
}

TEST(GenPrimeTest, FixedSeedIsDeterministic) {
  RandomSource a(99), b(99);
  EXPECT_EQ(GenPrime(128, a), GenPrime(128, b));
}

TEST(GenPrimeTest, FiveTwelveBitsPassesIndependentTest) {
  RandomSource rng(512);
  BigNat p = GenPrime(512, rng);
  EXPECT_EQ(mpz_sizeinbase(p.get_mpz_t(), 2), 512u);
  // GMP's own test (Baillie-PSW + its own Miller-Rabin witnesses).
  EXPECT_GT(mpz_probab_prime_p(p.get_mpz_t(), 50), 0);
  for (uint32_t small : SmallPrimes(1000)) {
    EXPECT_NE(p % small, 0) << small;
  }
}

TEST(IsProbablePrimeTest, AgreesWithTrialDivisionBelowTenThousand) {
  RandomSource rng(3);
  for (uint64_t v = 0; v < 10000; ++v) {
    EXPECT_EQ(IsProbablePrime(v, 40, rng), TrialDivisionPrime(v)) << v;
  }
}

TEST(IsProbablePrimeTest, RejectsStrongPseudoprimes) {
  RandomSource rng(4);
  // The second value is a strong pseudoprime to every base up to 23.
  for (const char* c : {"9999109081", "3825123056546413051"}) {
    EXPECT_FALSE(IsProbablePrime(BigNat(c), 40, rng)) << c;
  }
}

TEST(SmallPrimesTest, ThousandthPrime) {
  auto primes = SmallPrimes(1000);
  ASSERT_EQ(primes.size(), 1000u);
  EXPECT_EQ(primes.front(), 2u);
  EXPECT_EQ(primes.back(), 7919u);
}

TEST(LcmTest, Examples) {
  EXPECT_EQ(Lcm(4, 6), 12);
  EXPECT_EQ(Lcm(1, 77), 77);
  EXPECT_EQ(Lcm(6, 8), 24);
}

TEST(ModInvTest, Examples) {
  EXPECT_EQ(ModInv(12, 35), 3);
  EXPECT_EQ(ModInv(1, 35), 1);
  try {
    ModInv(5, 35);
    FAIL() << "expected NotInvertible";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInvertible);
  }
}

TEST(ModInvTest, AgreesWithExtendedEuclid) {
  for (int64_t m = 2; m < 200; ++m) {
    for (int64_t a = 1; a < m; ++a) {
      int64_t expected = ExtendedEuclidInverse(a, m);
      if (expected < 0) {
        EXPECT_THROW(ModInv(a, m), Error);
      } else {
        EXPECT_EQ(ModInv(a, m), expected) << a << " mod " << m;
      }
    }
  }
}

TEST(ModInvTest, NegativeInputReducesFirst) {
  EXPECT_EQ(ModInv(-12, 35), 32);  // -12 = 23 mod 35, 23 * 32 = 736 = 1
}

TEST(ModPowTest, Examples) {
  EXPECT_EQ(ModPow(2, 35, 1225), 18);
  EXPECT_EQ(ModPow(2, 35, 1225), NaivePow(2, 35, 1225));
  EXPECT_EQ(ModPow(12345, 0, 1225), 1);
  EXPECT_EQ(ModPow(36, 12, 1225), 421);
  EXPECT_EQ(ModPow(36, 12, 1225), NaivePow(36, 12, 1225));
}

TEST(ModPowTest, NegativeExponentUsesInverse) {
  EXPECT_EQ(ModPow(2, -1, 35), 18);
  EXPECT_EQ(ModPow(2, -3, 1225) * ModPow(2, 3, 1225) % 1225, 1);
  EXPECT_THROW(ModPow(5, -1, 35), Error);
}

TEST(ModPowTest, AgreesWithNaivePowering) {
  RandomSource rng(11);
  for (int i = 0; i < 200; ++i) {
    BigNat m = rng.Range(2, 100000);
    BigNat base = rng.Below(m);
    uint64_t e = rng.Below(300).get_ui();
    EXPECT_EQ(ModPow(base, e, m), NaivePow(base, e, m));
  }
}

TEST(ModPowTest, ExponentsAdd) {
  RandomSource rng(12);
  for (int i = 0; i < 1000; ++i) {
    BigNat m = rng.Bits(256) | (BigNat(1) << 255);
    BigNat a = rng.Below(m), b = rng.Bits(256), c = rng.Bits(256);
    EXPECT_EQ(ModPow(a, b + c, m), ModPow(a, b, m) * ModPow(a, c, m) % m);
  }
}

TEST(ModInvTest, InverseProperty) {
  RandomSource rng(13);
  BigNat m = rng.Bits(256) | 1;
  for (int i = 0; i < 500; ++i) {
    BigNat a = rng.Below(m);
    if (Gcd(a, m) != 1) continue;
    EXPECT_EQ(ModInv(a, m) * a % m, 1);
  }
}

TEST(PaillierLTest, Examples) {
  EXPECT_EQ(PaillierL(1, 35), 0);
  EXPECT_EQ(PaillierL(36, 35), 1);
  EXPECT_EQ(PaillierL(421, 35), 12);
  try {
    PaillierL(37, 35);
    FAIL() << "expected NotLDomain";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotLDomain);
  }
}

TEST(PaillierLTest, InvertsOnePlusKN) {
  const BigNat n = 35;
  for (unsigned long k = 0; k < 35; ++k) EXPECT_EQ(PaillierL(1 + k * n, n), k);
  RandomSource rng(14);
  BigNat big = rng.Bits(512) | 1;
  for (int i = 0; i < 100; ++i) {
    BigNat k = rng.Below(big);
    EXPECT_EQ(PaillierL(1 + k * big, big), k);
  }
}

TEST(CanonicalEncodingTest, KnownBytes) {
  EXPECT_EQ(EncodeCanonical(0), (Bytes{0, 0, 0, 0, 0}));
  EXPECT_EQ(EncodeCanonical(1), (Bytes{0, 0, 0, 0, 1, 1}));
  EXPECT_EQ(EncodeCanonical(-258), (Bytes{1, 0, 0, 0, 2, 1, 2}));
}

TEST(CanonicalEncodingTest, RoundTripsRandomValues) {
  RandomSource rng(15);
  for (int i = 0; i < 300; ++i) {
    BigInt v = rng.Bits(1 + rng.Below(600).get_ui());
    if (i % 2) v = -v;
    Bytes enc = EncodeCanonical(v);
    std::span<const uint8_t> view(enc);
    EXPECT_EQ(DecodeCanonical(view), v);
    EXPECT_TRUE(view.empty());
  }
}

TEST(CanonicalEncodingTest, RejectsNonMinimalAndTruncated) {
  const Bytes padded{0, 0, 0, 0, 2, 0, 1};
  std::span<const uint8_t> v1(padded);
  EXPECT_THROW(DecodeCanonical(v1), Error);
  const Bytes short_body{0, 0, 0, 0, 3, 1};
  std::span<const uint8_t> v2(short_body);
  EXPECT_THROW(DecodeCanonical(v2), Error);
}

TEST(RandomSourceTest, DeriveIsStableAndSeparates) {
  RandomSource a = RandomSource::Derive(7, {1, 2, 3});
  RandomSource b = RandomSource::Derive(7, {1, 2, 3});
  RandomSource c = RandomSource::Derive(7, {1, 2, 4});
  uint64_t va = a.NextU64();
  EXPECT_EQ(va, b.NextU64());
  EXPECT_NE(va, c.NextU64());
}

TEST(RandomSourceTest, BelowStaysInRange) {
  RandomSource rng(16);
  for (int i = 0; i < 1000; ++i) {
    BigNat v = rng.Below(37);
    EXPECT_GE(v, 0);
    EXPECT_LT(v, 37);
  }
}

}  // namespace
}  // namespace smartagg
