// Copyright 2026 The OxPure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Closed-form single-round maps for the three purification protocols.
//
// ox1: unconditional bilateral x rotation, bilateral CNOT, keep the source
//      pair when the target pair's z readouts coincide.
// ox2: same circuit, but the rotations are chosen per state by
//      canonical_order, so already well-ordered states skip them.
// ox3: bilateral CCNOT across three pairs (pairs 1 and 2 control, pair 3
//      target), projection measurement of the control pairs, keep pair 3.
//      No rotations.
//
// These maps are pure weight/correlation algebra with no density matrices;
// the oracle implements the same rounds as explicit circuits, and the test
// suite holds the two within 1e-9 of each other on random states.

#ifndef OXPURE_PROTOCOLS_HPP_
#define OXPURE_PROTOCOLS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oxpure/bell.hpp"

namespace oxpure {

enum class ProtocolId : int { kOx1 = 0, kOx2 = 1, kOx3 = 2 };

inline const char* protocol_name(ProtocolId p) {
  switch (p) {
    case ProtocolId::kOx1: return "ox1";
    case ProtocolId::kOx2: return "ox2";
    case ProtocolId::kOx3: return "ox3";
  }
  throw std::invalid_argument("protocol_name: unknown protocol");
}

inline ProtocolId protocol_from_name(const std::string& s) {
  if (s == "ox1") return ProtocolId::kOx1;
  if (s == "ox2") return ProtocolId::kOx2;
  if (s == "ox3") return ProtocolId::kOx3;
  throw std::invalid_argument("unknown protocol name: " + s);
}

// Source pairs consumed per round.
inline int pairs_per_round(ProtocolId p) {
  return p == ProtocolId::kOx3 ? 3 : 2;
}

struct StepOutcome {
  BellWeights state;
  double probability = 0.0;
  std::vector<RotationAxis> rotations_applied;
};

inline constexpr double kDegenerateProbability = 1e-15;

// Coincidence branch of the bilateral CNOT on two source pairs.  Success
// probability is (1 + cz cz') / 2; the kept pair's correlations pick up the
// usual bilinear combinations over that denominator.
inline std::pair<CorrelationVector, double> cnot_coincidence_map(
    const CorrelationVector& a, const CorrelationVector& b) {
  const double denom = 1.0 + a.cz * b.cz;
  const double p = 0.5 * denom;
  if (p < kDegenerateProbability) {
    throw std::runtime_error("cnot_coincidence_map: branch probability below 1e-15");
  }
  return {{(a.cx * b.cx + a.cy * b.cy) / denom,
           (a.cx * b.cy + a.cy * b.cx) / denom,
           (a.cz + b.cz) / denom},
          p};
}

inline StepOutcome ox1_step(const BellWeights& w) {
  validate(w);
  const std::vector<RotationAxis> rotations = {RotationAxis::kX};
  const CorrelationVector c = apply_rotations(to_correlations(w), rotations);
  auto [out, p] = cnot_coincidence_map(c, c);
  return {to_weights(out), p, rotations};
}

inline StepOutcome ox2_step(const BellWeights& w) {
  validate(w);
  const CanonicalForm canon = canonical_order(to_correlations(w));
  auto [out, p] = cnot_coincidence_map(canon.c, canon.c);
  return {to_weights(out), p, canon.rotations};
}

// Trilinear weight map of the three-pair round.  The projection measurement
// keeps matched phi-family or matched psi-family content on the control
// pairs; u, v, s, t collect those four combinations.
inline StepOutcome ox3_step_hetero(const BellWeights& w1, const BellWeights& w2,
                                   const BellWeights& w3) {
  validate(w1);
  validate(w2);
  validate(w3);
  const double u = w1.A * w2.A + w1.D * w2.D;
  const double v = w1.B * w2.B + w1.C * w2.C;
  const double s = w1.A * w2.D + w2.A * w1.D;
  const double t = w1.B * w2.C + w2.B * w1.C;
  const double a = 0.5 * (u * w3.A + v * w3.C);
  const double b = 0.5 * (s * w3.B + t * w3.D);
  const double c = 0.5 * (u * w3.C + v * w3.A);
  const double d = 0.5 * (s * w3.D + t * w3.B);
  const double p = a + b + c + d;
  if (p < kDegenerateProbability) {
    throw std::runtime_error("ox3_step_hetero: branch probability below 1e-15");
  }
  return {{a / p, b / p, c / p, d / p}, p, {}};
}

inline StepOutcome ox3_step(const BellWeights& w) {
  return ox3_step_hetero(w, w, w);
}

inline StepOutcome protocol_step(ProtocolId protocol, const BellWeights& w) {
  switch (protocol) {
    case ProtocolId::kOx1: return ox1_step(w);
    case ProtocolId::kOx2: return ox2_step(w);
    case ProtocolId::kOx3: return ox3_step(w);
  }
  throw std::invalid_argument("protocol_step: unknown protocol");
}

}  // namespace oxpure

#endif  // OXPURE_PROTOCOLS_HPP_
