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

#include "smartagg/entities.h"
#include "smartagg/error.h"

namespace smartagg {

Deployment KicSetupFromMaterial(const PaillierKeys& keys, const BigNat& g2,
                                const MaskPolynomial& polynomial,
                                const SharePolicy& policy, size_t num_groups,
                                const BigNat& reading_cap) {
  policy.Validate();
  const size_t d = policy.d();
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "group size must be >= 2");
  if (num_groups < 1) throw Error(ErrorCode::kInvalidArgument, "need a group");
  if (polynomial.degree() != d - 1 || polynomial.secret != keys.factors.p) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask polynomial must have degree d-1 and secret p");
  }
  const BigNat& n = keys.pub.n;
  if (g2 < 2 || g2 >= n || Gcd(g2, n) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "g2 must be a unit in [2, n)");
  }
  BigNat meters = static_cast<unsigned long>(d * num_groups);
  if (reading_cap < 0 || meters * reading_cap >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                "meter_count * reading_cap must stay below n");
  }

  Deployment dep;
  dep.keys = keys;
  dep.polynomial = polynomial;
  dep.policy = policy;

  SystemParams& params = dep.params;
  params.n = n;
  params.n_sq = keys.pub.n_sq;
  params.g1 = keys.pub.g1;
  params.g2 = g2;
  params.h = ModPow(g2, keys.factors.q, params.n_sq);
  params.d = d;
  params.num_groups = num_groups;
  params.reading_cap = reading_cap;

  std::vector<BigNat> shares;
  shares.reserve(d);
  for (const BigNat& x : policy.x_points) shares.push_back(Eval(polynomial, x));
  dep.weights = ScaleExponents(LagrangeWeights(policy), shares);
  MaskPublicSet masks = BuildMaskSet(params.h, dep.weights.s_list, params.n_sq);

  dep.aggregator.priv = keys.priv;
  for (size_t i = 0; i < d; ++i) {
    dep.aggregator.mask_table.push_back(
        MaskEntry{dep.weights.s_list[i], masks.masks[i]});
  }

  dep.meters.resize(num_groups);
  for (size_t g = 0; g < num_groups; ++g) {
    dep.meters[g].reserve(d);
    for (size_t i = 0; i < d; ++i) {
      dep.meters[g].push_back(MeterKey{static_cast<uint32_t>(g),
                                       policy.x_points[i], shares[i],
                                       dep.weights.scaled_betas[i],
                                       dep.weights.s_list[i], masks.masks[i]});
    }
  }
  return dep;
}

Deployment KicSetup(unsigned bits, size_t d, size_t num_groups,
                    RandomSource& rng, const KicOptions& options) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "group size must be >= 2");
  if (num_groups < 1) throw Error(ErrorCode::kInvalidArgument, "need a group");
  PaillierKeys keys = Keygen(bits, rng, options.generator);
  SharePolicy policy = options.policy.value_or(SharePolicy::Contiguous(d));
  if (policy.d() != d) {
    throw Error(ErrorCode::kInvalidArgument, "policy size differs from d");
  }
  MaskPolynomial poly = PolyGen(keys.factors.p, d, keys.pub.n, rng);
  BigNat g2;
  do {
    g2 = rng.Range(2, keys.pub.n);
  } while (Gcd(g2, keys.pub.n) != 1);
  return KicSetupFromMaterial(keys, g2, poly, policy, num_groups,
                              options.reading_cap);
}

Deployment ToyDeployment(size_t num_groups) {
  PaillierKeys keys = KeysFromFactors(5, 7, 36);
  MaskPolynomial poly{5, {3}};
  BigNat cap = (keys.pub.n - 1) / static_cast<unsigned long>(2 * num_groups);
  return KicSetupFromMaterial(keys, 2, poly, SharePolicy::Contiguous(2),
                              num_groups, cap);
}

}  // namespace smartagg
