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

#include "smartagg/error.h"

namespace smartagg {

PaillierPrivate DerivePrivate(const PaillierPublic& pub, const BigNat& lambda) {
  BigNat l = PaillierL(ModPow(pub.g1, lambda, pub.n_sq), pub.n);
  if (Gcd(l, pub.n) != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "generator fails gcd(L(g1^lambda mod n^2), n) = 1");
  }
  return PaillierPrivate{lambda, ModInv(l, pub.n)};
}

PaillierKeys KeysFromFactors(const BigNat& p, const BigNat& q,
                             const BigNat& g1) {
  if (p == q || p < 2 || q < 2) {
    throw Error(ErrorCode::kInvalidArgument, "p and q must be distinct primes");
  }
  PaillierPublic pub;
  pub.n = p * q;
  pub.n_sq = pub.n * pub.n;
  pub.g1 = g1;
  if (g1 <= 0 || g1 >= pub.n_sq || Gcd(g1, pub.n) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "g1 not in Z*_{n^2}");
  }
  BigNat lambda = Lcm(p - 1, q - 1);
  PaillierPrivate priv = DerivePrivate(pub, lambda);
  return PaillierKeys{std::move(pub), std::move(priv), Factors{p, q}};
}

PaillierKeys Keygen(unsigned bits, RandomSource& rng, GeneratorChoice choice) {
  if (bits < 64 || bits % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "modulus bits must be even and >= 64");
  }
  for (;;) {
    BigNat p = GenPrime(bits / 2, rng);
    BigNat q = GenPrime(bits / 2, rng);
    BigNat n = p * q;
    // Two bits/2-bit primes can multiply to bits-1 bits; keep |n| exact.
    if (p == q || mpz_sizeinbase(n.get_mpz_t(), 2) != bits) continue;
    if (Gcd(n, (p - 1) * (q - 1)) != 1) continue;
    BigNat n_sq = n * n;
    if (choice == GeneratorChoice::kNPlusOne) {
      return KeysFromFactors(p, q, n + 1);
    }
    for (;;) {
      BigNat g1 = rng.Range(2, n_sq);
      if (Gcd(g1, n) != 1) continue;
      try {
        return KeysFromFactors(p, q, g1);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInvalidArgument) throw;
      }
    }
  }
}

Ciphertext Ciphertext::FromValue(const PaillierPublic& pub, BigNat value) {
  if (value < 1 || value >= pub.n_sq || Gcd(value, pub.n) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "ciphertext outside Z*_{n^2}");
  }
  return Ciphertext(std::move(value));
}

BigNat SampleRandomizer(const PaillierPublic& pub, RandomSource& rng) {
  for (;;) {
    BigNat r = rng.Range(1, pub.n);
    if (Gcd(r, pub.n) == 1) return r;
  }
}

Ciphertext Encrypt(const PaillierPublic& pub, const BigNat& m, const BigNat& r) {
  if (m < 0 || m >= pub.n) {
    throw Error(ErrorCode::kPlaintextRange, "plaintext must lie in [0, n)");
  }
  if (r <= 0 || r >= pub.n || Gcd(r, pub.n) != 1) {
    throw Error(ErrorCode::kBadRandomizer, "randomizer must be a unit in [1, n)");
  }
  BigNat c = ModPow(pub.g1, m, pub.n_sq) * ModPow(r, pub.n, pub.n_sq) % pub.n_sq;
  return Ciphertext::Unchecked(std::move(c));
}

Ciphertext Encrypt(const PaillierPublic& pub, const BigNat& m,
                   RandomSource& rng) {
  return Encrypt(pub, m, SampleRandomizer(pub, rng));
}

BigNat Decrypt(const PaillierPrivate& priv, const PaillierPublic& pub,
               const Ciphertext& c) {
  BigNat l = PaillierL(ModPow(c.value(), priv.lambda, pub.n_sq), pub.n);
  return l * priv.mu % pub.n;
}

Ciphertext HomCombine(const PaillierPublic& pub, const Ciphertext& c1,
                      const Ciphertext& c2) {
  return Ciphertext::Unchecked(c1.value() * c2.value() % pub.n_sq);
}

Ciphertext RemoveKnown(const PaillierPublic& pub, const Ciphertext& c,
                       const BigNat& k) {
  if (k < 0 || k >= pub.n) {
    throw Error(ErrorCode::kPlaintextRange, "known offset must lie in [0, n)");
  }
  BigNat factor = ModInv(ModPow(pub.g1, k, pub.n_sq), pub.n_sq);
  return Ciphertext::Unchecked(c.value() * factor % pub.n_sq);
}

}  // namespace smartagg
