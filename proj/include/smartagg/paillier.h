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

#ifndef SMARTAGG_PAILLIER_H_
#define SMARTAGG_PAILLIER_H_

#include "smartagg/numtheory.h"

namespace smartagg {

struct PaillierPublic {
  BigNat n;
  BigNat n_sq;
  BigNat g1;
};

struct PaillierPrivate {
  BigNat lambda;
  // Inverse of L(g1^lambda mod n^2) mod n.
  BigNat mu;
};

// The two primes. p doubles as the secret constant term of the mask
// polynomial.
struct Factors {
  BigNat p;
  BigNat q;
};

struct PaillierKeys {
  PaillierPublic pub;
  PaillierPrivate priv;
  Factors factors;
};

enum class GeneratorChoice {
  kRandom,       // uniform over Z*_{n^2}, resampled until the gcd condition holds
  kNPlusOne,     // g1 = n + 1
};

// Generates p, q of bits/2 each. bits must be even and >= 64.
PaillierKeys Keygen(unsigned bits, RandomSource& rng,
                    GeneratorChoice choice = GeneratorChoice::kRandom);

// Builds and validates keys from known primes and generator. Used for fixed
// fixtures (p=5, q=7, g1=36) and for reloading provisioned keys. Throws
// kInvalidArgument when p == q or gcd(L(g1^lambda mod n^2), n) != 1.
PaillierKeys KeysFromFactors(const BigNat& p, const BigNat& q,
                             const BigNat& g1);

// Recomputes mu and checks the generator condition; throws kInvalidArgument.
PaillierPrivate DerivePrivate(const PaillierPublic& pub, const BigNat& lambda);

class Ciphertext {
 public:
  // Validates 1 <= value < n^2 and gcd(value, n) = 1; throws kInvalidArgument.
  static Ciphertext FromValue(const PaillierPublic& pub, BigNat value);
  static Ciphertext Unchecked(BigNat value) { return Ciphertext(std::move(value)); }

  const BigNat& value() const { return value_; }

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;

 private:
  explicit Ciphertext(BigNat value) : value_(std::move(value)) {}
  BigNat value_;
};

// Fresh r in [1, n) with gcd(r, n) = 1.
BigNat SampleRandomizer(const PaillierPublic& pub, RandomSource& rng);

// g1^m * r^n mod n^2. Throws kPlaintextRange or kBadRandomizer.
Ciphertext Encrypt(const PaillierPublic& pub, const BigNat& m, const BigNat& r);
Ciphertext Encrypt(const PaillierPublic& pub, const BigNat& m, RandomSource& rng);

// L(c^lambda mod n^2) * mu mod n. Throws kNotLDomain on malformed input.
BigNat Decrypt(const PaillierPrivate& priv, const PaillierPublic& pub,
               const Ciphertext& c);

// c1 * c2 mod n^2; decrypts to m1 + m2 mod n.
Ciphertext HomCombine(const PaillierPublic& pub, const Ciphertext& c1,
                      const Ciphertext& c2);

// c * (g1^k)^-1 mod n^2; decrypts to m - k mod n. Requires 0 <= k < n.
Ciphertext RemoveKnown(const PaillierPublic& pub, const Ciphertext& c,
                       const BigNat& k);

}  // namespace smartagg

#endif  // SMARTAGG_PAILLIER_H_
