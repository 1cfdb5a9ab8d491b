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

#include "smartagg/paillier.h"

#include <gtest/gtest.h>

#include "smartagg/error.h"

namespace smartagg {
namespace {

PaillierKeys Toy() { return KeysFromFactors(5, 7, 36); }

const PaillierKeys& Keys512() {
  static const PaillierKeys keys = [] {
    RandomSource rng(512);
    return Keygen(512, rng);
  }();
  return keys;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(KeygenTest, ToyFixture) {
  PaillierKeys keys = Toy();
  EXPECT_EQ(keys.pub.n, 35);
  EXPECT_EQ(keys.pub.n_sq, 1225);
  EXPECT_EQ(keys.priv.lambda, 12);
  // L(36^12 mod 1225) = L(421) = 12, inverse 3.
  EXPECT_EQ(keys.priv.mu, 3);
}

TEST(KeygenTest, NPlusOneAlwaysAccepted) {
  PaillierKeys keys = KeysFromFactors(5, 7, 36);  // 36 = n + 1
  EXPECT_EQ(PaillierL(ModPow(36, keys.priv.lambda, 1225), 35), 12);
  RandomSource rng(3);
  PaillierKeys big = Keygen(128, rng, GeneratorChoice::kNPlusOne);
  EXPECT_EQ(big.pub.g1, big.pub.n + 1);
}

TEST(KeygenTest, RejectsGeneratorFailingGcdCondition) {
  // 1 has L(1) = 0, gcd(0, n) = n.
  EXPECT_EQ(CodeOf([] { KeysFromFactors(5, 7, 1); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { KeysFromFactors(5, 5, 36); }), ErrorCode::kInvalidArgument);
}

TEST(KeygenTest, SixtyFourBitInvariantsHold) {
  RandomSource rng(64);
  PaillierKeys keys = Keygen(64, rng);
  const BigNat& p = keys.factors.p;
  const BigNat& q = keys.factors.q;
  EXPECT_NE(p, q);
  EXPECT_EQ(p * q, keys.pub.n);
  EXPECT_EQ(keys.pub.n_sq, keys.pub.n * keys.pub.n);
  EXPECT_GT(mpz_probab_prime_p(p.get_mpz_t(), 40), 0);
  EXPECT_GT(mpz_probab_prime_p(q.get_mpz_t(), 40), 0);
  EXPECT_EQ(keys.priv.lambda, Lcm(p - 1, q - 1));
  BigNat l = PaillierL(ModPow(keys.pub.g1, keys.priv.lambda, keys.pub.n_sq),
                       keys.pub.n);
  EXPECT_EQ(Gcd(l, keys.pub.n), 1);
  EXPECT_EQ(keys.priv.mu * l % keys.pub.n, 1);
  EXPECT_EQ(mpz_sizeinbase(keys.pub.n.get_mpz_t(), 2), 64u);

  RandomSource again(64);
  PaillierKeys replay = Keygen(64, again);
  EXPECT_EQ(replay.pub.g1, keys.pub.g1);
  EXPECT_EQ(replay.factors.p, p);
}

TEST(KeygenTest, RejectsOddOrSmallModulus) {
  RandomSource rng(1);
  EXPECT_THROW(Keygen(63, rng), Error);
  EXPECT_THROW(Keygen(32, rng), Error);
}

TEST(EncryptTest, ToyVector) {
  PaillierKeys keys = Toy();
  // 36^3 mod 1225 = 106, 2^35 mod 1225 = 18, 106 * 18 mod 1225 = 683.
  EXPECT_EQ(Encrypt(keys.pub, 3, 2).value(), 683);
  EXPECT_EQ(Encrypt(keys.pub, 0, 1).value(), 1);
}

TEST(EncryptTest, RangeErrors) {
  PaillierKeys keys = Toy();
  EXPECT_EQ(CodeOf([&] { Encrypt(keys.pub, 36, 2); }), ErrorCode::kPlaintextRange);
  EXPECT_EQ(CodeOf([&] { Encrypt(keys.pub, 35, 2); }), ErrorCode::kPlaintextRange);
  EXPECT_EQ(CodeOf([&] { Encrypt(keys.pub, 3, 7); }), ErrorCode::kBadRandomizer);
  EXPECT_EQ(CodeOf([&] { Encrypt(keys.pub, 3, 0); }), ErrorCode::kBadRandomizer);
}

TEST(DecryptTest, ToyVectors) {
  PaillierKeys keys = Toy();
  EXPECT_EQ(Decrypt(keys.priv, keys.pub, Ciphertext::FromValue(keys.pub, 683)), 3);
  EXPECT_EQ(Decrypt(keys.priv, keys.pub, Ciphertext::FromValue(keys.pub, 1)), 0);
}

TEST(DecryptTest, ExhaustiveToyRoundTrip) {
  PaillierKeys keys = Toy();
  for (unsigned long m = 0; m < 35; ++m) {
    for (unsigned long r = 1; r < 35; ++r) {
      if (Gcd(r, 35) != 1) continue;
      EXPECT_EQ(Decrypt(keys.priv, keys.pub, Encrypt(keys.pub, m, r)), m);
    }
  }
}

TEST(DecryptTest, RandomRoundTrip512) {
  const PaillierKeys& keys = Keys512();
  RandomSource rng(1);
  for (int i = 0; i < 200; ++i) {
    BigNat m = rng.Below(keys.pub.n);
    EXPECT_EQ(Decrypt(keys.priv, keys.pub, Encrypt(keys.pub, m, rng)), m);
  }
}

TEST(DecryptTest, MalformedCiphertextLeavesLDomain) {
  // Toy fixture has lambda = 12 and every unit satisfies c^12 = 1 mod 35, so
  // use a non-unit to leave the L domain.
  PaillierKeys keys = Toy();
  EXPECT_EQ(CodeOf([&] {
              Decrypt(keys.priv, keys.pub, Ciphertext::Unchecked(5));
            }),
            ErrorCode::kNotLDomain);
  EXPECT_THROW(Ciphertext::FromValue(keys.pub, 5), Error);
  EXPECT_THROW(Ciphertext::FromValue(keys.pub, 1225), Error);
}

TEST(HomCombineTest, ToyExamples) {
  PaillierKeys keys = Toy();
  Ciphertext c = Encrypt(keys.pub, 9, 4);
  EXPECT_EQ(HomCombine(keys.pub, c, Ciphertext::FromValue(keys.pub, 1)), c);
  auto sum = HomCombine(keys.pub, Encrypt(keys.pub, 2, 3), Encrypt(keys.pub, 3, 8));
  EXPECT_EQ(Decrypt(keys.priv, keys.pub, sum), 5);
  auto wrap = HomCombine(keys.pub, Encrypt(keys.pub, 34, 3), Encrypt(keys.pub, 3, 8));
  EXPECT_EQ(Decrypt(keys.priv, keys.pub, wrap), 2);
}

TEST(HomCombineTest, RandomVectorsSumModN) {
  const PaillierKeys& keys = Keys512();
  RandomSource rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    size_t len = 1 + rng.Below(20).get_ui();
    Ciphertext acc = Ciphertext::Unchecked(1);
    BigNat expected = 0;
    for (size_t i = 0; i < len; ++i) {
      BigNat m = rng.Below(keys.pub.n);
      expected = (expected + m) % keys.pub.n;
      acc = HomCombine(keys.pub, acc, Encrypt(keys.pub, m, rng));
    }
    EXPECT_EQ(Decrypt(keys.priv, keys.pub, acc), expected);
  }
}

TEST(EncryptTest, RandomizersGiveDistinctCiphertexts) {
  const PaillierKeys& keys = Keys512();
  RandomSource rng(3);
  for (int i = 0; i < 20; ++i) {
    BigNat m = rng.Below(keys.pub.n);
    BigNat r1 = SampleRandomizer(keys.pub, rng);
    BigNat r2 = SampleRandomizer(keys.pub, rng);
    ASSERT_NE(r1, r2);
    Ciphertext c1 = Encrypt(keys.pub, m, r1);
    Ciphertext c2 = Encrypt(keys.pub, m, r2);
    EXPECT_NE(c1, c2);
    EXPECT_EQ(Decrypt(keys.priv, keys.pub, c1), Decrypt(keys.priv, keys.pub, c2));
  }
}

TEST(RemoveKnownTest, ToyExamples) {
  PaillierKeys keys = Toy();
  Ciphertext five = Encrypt(keys.pub, 5, 2);
  EXPECT_EQ(Decrypt(keys.priv, keys.pub, RemoveKnown(keys.pub, five, 5)), 0);
  EXPECT_EQ(RemoveKnown(keys.pub, five, 0), five);
  Ciphertext two = Encrypt(keys.pub, 2, 3);
  EXPECT_EQ(Decrypt(keys.priv, keys.pub, RemoveKnown(keys.pub, two, 5)), 32);
  EXPECT_EQ(CodeOf([&] { RemoveKnown(keys.pub, two, 35); }),
            ErrorCode::kPlaintextRange);
}

TEST(RemoveKnownTest, SubtractsModN) {
  const PaillierKeys& keys = Keys512();
  RandomSource rng(4);
  for (int i = 0; i < 100; ++i) {
    BigNat m = rng.Below(keys.pub.n);
    BigNat k = rng.Below(keys.pub.n);
    Ciphertext c = RemoveKnown(keys.pub, Encrypt(keys.pub, m, rng), k);
    EXPECT_EQ(Decrypt(keys.priv, keys.pub, c), Mod(m - k, keys.pub.n));
  }
}

}  // namespace
}  // namespace smartagg
