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

#include "smartagg/masking.h"

#include <set>

#include "smartagg/error.h"

namespace smartagg {

SharePolicy SharePolicy::Contiguous(size_t d) {
  SharePolicy policy;
  for (size_t i = 1; i <= d; ++i) policy.x_points.emplace_back(static_cast<unsigned long>(i));
  return policy;
}

void SharePolicy::Validate() const {
  if (x_points.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "share policy has no points");
  }
  std::set<BigNat> seen;
  for (const BigNat& x : x_points) {
    if (x <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "share points must be positive");
    }
    if (!seen.insert(x).second) {
      throw Error(ErrorCode::kInvalidArgument, "share points must be distinct");
    }
  }
}

MaskPolynomial PolyGen(const BigNat& secret, size_t d, const BigNat& n,
                       RandomSource& rng) {
  if (d < 2) {
    throw Error(ErrorCode::kInvalidArgument, "group size must be at least 2");
  }
  MaskPolynomial poly{secret, {}};
  poly.coefficients.reserve(d - 1);
  for (size_t k = 1; k < d; ++k) poly.coefficients.push_back(rng.Range(1, n));
  return poly;
}

BigNat Eval(const MaskPolynomial& poly, const BigNat& x) {
  BigNat acc = 0;
  for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) {
    acc = (acc + *it) * x;
  }
  return acc + poly.secret;
}

std::vector<Rational> LagrangeWeights(const SharePolicy& policy) {
  policy.Validate();
  const auto& xs = policy.x_points;
  std::vector<Rational> weights;
  weights.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    Rational beta = 1;
    for (size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      Rational factor(xs[j], BigInt(xs[j] - xs[i]));
      factor.canonicalize();
      beta *= factor;
    }
    weights.push_back(beta);
  }
  return weights;
}

ScaledWeights ScaleExponents(const std::vector<Rational>& weights,
                             const std::vector<BigNat>& shares) {
  if (weights.size() != shares.size()) {
    throw Error(ErrorCode::kInvalidArgument, "weights and shares differ in length");
  }
  ScaledWeights out;
  out.delta = 1;
  for (const Rational& w : weights) out.delta = Lcm(out.delta, w.get_den());
  for (size_t i = 0; i < weights.size(); ++i) {
    BigInt scaled = out.delta / weights[i].get_den() * weights[i].get_num();
    out.s_list.push_back(scaled * shares[i]);
    out.scaled_betas.push_back(std::move(scaled));
  }
  return out;
}

BigNat MaskValue(const BigNat& h, const BigInt& s, const BigNat& n_sq) {
  return ModPow(h, s, n_sq);
}

MaskPublicSet BuildMaskSet(const BigNat& h, const std::vector<BigInt>& s_list,
                           const BigNat& n_sq) {
  MaskPublicSet set{h, {}};
  set.masks.reserve(s_list.size());
  for (const BigInt& s : s_list) set.masks.push_back(MaskValue(h, s, n_sq));
  return set;
}

}  // namespace smartagg
