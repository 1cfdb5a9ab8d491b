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

// Shamir-style mask exponents over the integers.
//
// The KIC hides the Paillier prime p as the constant term of a degree d-1
// polynomial G. Each of the d share positions x_i receives
//   s_i = Delta * beta_i * G(x_i)
// where beta_i is the Lagrange weight at zero and Delta clears the weight
// denominators. The s_i sum to exactly Delta * p, so the product of the d
// masks h^{s_i} is h^{Delta p} = (g2^Delta)^n when h = g2^q: an n-th residue
// that vanishes under Paillier decryption. Any proper subset of positions
// leaves a residual mask.

#ifndef SMARTAGG_MASKING_H_
#define SMARTAGG_MASKING_H_

#include <gmpxx.h>

#include <vector>

#include "smartagg/numtheory.h"

namespace smartagg {

using Rational = mpq_class;

struct SharePolicy {
  std::vector<BigNat> x_points;

  size_t d() const { return x_points.size(); }

  // x_points = {1, ..., d}.
  static SharePolicy Contiguous(size_t d);
  // Throws kInvalidArgument unless the points are distinct and positive.
  void Validate() const;
};

struct MaskPolynomial {
  BigNat secret;
  std::vector<BigNat> coefficients;  // a_1 .. a_{d-1}

  size_t degree() const { return coefficients.size(); }
};

// Coefficients uniform in [1, n). Requires d >= 2.
MaskPolynomial PolyGen(const BigNat& secret, size_t d, const BigNat& n,
                       RandomSource& rng);

// Horner evaluation over the integers.
BigNat Eval(const MaskPolynomial& poly, const BigNat& x);

// beta_i = prod_{j != i} x_j / (x_j - x_i), exact.
std::vector<Rational> LagrangeWeights(const SharePolicy& policy);

struct ScaledWeights {
  BigNat delta;
  std::vector<BigInt> scaled_betas;  // Delta * beta_i, integral
  std::vector<BigInt> s_list;        // Delta * beta_i * G(x_i)
};

ScaledWeights ScaleExponents(const std::vector<Rational>& weights,
                             const std::vector<BigNat>& shares);

// h^s mod n^2 for signed s.
BigNat MaskValue(const BigNat& h, const BigInt& s, const BigNat& n_sq);

struct MaskPublicSet {
  BigNat h;
  std::vector<BigNat> masks;  // h^{s_i} mod n^2, one per share position
};

MaskPublicSet BuildMaskSet(const BigNat& h, const std::vector<BigInt>& s_list,
                           const BigNat& n_sq);

}  // namespace smartagg

#endif  // SMARTAGG_MASKING_H_
