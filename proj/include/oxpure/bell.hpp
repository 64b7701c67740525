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

// Bell-diagonal state space.
//
// A two-qubit Bell-diagonal state is a mixture of the four Bell states with
// weights (A, B, C, D) attached, in order, to phi+, psi-, psi+, phi-.  The
// same state is described by the correlation triple (cx, cy, cz), where
// cx = <XX>, cy = -<YY>, cz = <ZZ>.  The sign flip on the YY expectation
// makes the Bell basis diagonalize all three components simultaneously:
//
//   phi+ -> (+1, +1, +1)    psi- -> (-1, +1, -1)
//   psi+ -> (+1, -1, -1)    phi- -> (-1, -1, +1)
//
// Weight <-> correlation maps, fidelity (weight of phi+), Werner states,
// bilateral rotations acting on either description, and the canonical
// correlation ordering used by the adaptive two-pair protocol live here.

#ifndef OXPURE_BELL_HPP_
#define OXPURE_BELL_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace oxpure {

inline constexpr double kWeightTol = 1e-12;

// Index order of the Bell basis throughout the library.
enum class BellIndex : int { kPhiPlus = 0, kPsiMinus = 1, kPsiPlus = 2, kPhiMinus = 3 };

inline const char* bell_label(BellIndex i) {
  switch (i) {
    case BellIndex::kPhiPlus: return "phi+";
    case BellIndex::kPsiMinus: return "psi-";
    case BellIndex::kPsiPlus: return "psi+";
    case BellIndex::kPhiMinus: return "phi-";
  }
  throw std::invalid_argument("bell_label: index out of range");
}

struct BellWeights {
  double A = 1.0;  // phi+
  double B = 0.0;  // psi-
  double C = 0.0;  // psi+
  double D = 0.0;  // phi-
};

struct CorrelationVector {
  double cx = 1.0;
  double cy = 1.0;
  double cz = 1.0;
};

enum class RotationAxis : int { kX = 0, kY = 1, kZ = 2 };

inline char axis_name(RotationAxis a) {
  switch (a) {
    case RotationAxis::kX: return 'x';
    case RotationAxis::kY: return 'y';
    case RotationAxis::kZ: return 'z';
  }
  throw std::invalid_argument("axis_name: axis out of range");
}

// Compact token such as "x" or "zx"; "none" when empty.  Single characters
// concatenate, so the token stays delimiter-free for CSV cells.
inline std::string rotation_names(const std::vector<RotationAxis>& rs) {
  if (rs.empty()) return "none";
  std::string out;
  for (RotationAxis r : rs) out += axis_name(r);
  return out;
}

inline std::array<double, 4> to_array(const BellWeights& w) {
  return {w.A, w.B, w.C, w.D};
}

inline BellWeights weights_from_array(const std::array<double, 4>& a) {
  return {a[0], a[1], a[2], a[3]};
}

inline double fidelity(const BellWeights& w) { return w.A; }

inline double weight_sum(const BellWeights& w) { return w.A + w.B + w.C + w.D; }

inline bool is_valid(const BellWeights& w, double tol = kWeightTol) {
  for (double v : to_array(w)) {
    if (!(v >= -tol && v <= 1.0 + tol)) return false;
  }
  return std::abs(weight_sum(w) - 1.0) <= 4.0 * tol;
}

inline void validate(const BellWeights& w, double tol = kWeightTol) {
  if (!is_valid(w, tol)) {
    throw std::invalid_argument(
        "BellWeights out of range or not normalized: A=" + std::to_string(w.A) +
        " B=" + std::to_string(w.B) + " C=" + std::to_string(w.C) +
        " D=" + std::to_string(w.D));
  }
}

inline CorrelationVector to_correlations(const BellWeights& w) {
  return {w.A - w.B + w.C - w.D,
          w.A + w.B - w.C - w.D,
          w.A - w.B - w.C + w.D};
}

namespace detail {
// Weights derived from correlations carry rounding dust; tiny negatives are
// clamped to zero, genuine negatives are left for validation to reject.
inline double clamp_dust(double v, double tol = kWeightTol) {
  return (v < 0.0 && v >= -tol) ? 0.0 : v;
}
}  // namespace detail

inline BellWeights to_weights(const CorrelationVector& c) {
  return {detail::clamp_dust(0.25 * (1.0 + c.cx + c.cy + c.cz)),
          detail::clamp_dust(0.25 * (1.0 - c.cx + c.cy - c.cz)),
          detail::clamp_dust(0.25 * (1.0 + c.cx - c.cy - c.cz)),
          detail::clamp_dust(0.25 * (1.0 - c.cx - c.cy + c.cz))};
}

// A correlation triple is physical iff all four induced weights are
// nonnegative (the Bell tetrahedron).
inline bool is_physical(const CorrelationVector& c, double tol = kWeightTol) {
  const BellWeights w = to_weights(c);
  return is_valid(w, tol);
}

inline double fidelity(const CorrelationVector& c) {
  return 0.25 * (1.0 + c.cx + c.cy + c.cz);
}

inline BellWeights werner(double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw std::invalid_argument("werner: fidelity must lie in [0, 1]");
  }
  const double rest = (1.0 - f) / 3.0;
  return {f, rest, rest, rest};
}

inline BellWeights phi_plus() { return {1.0, 0.0, 0.0, 0.0}; }

inline BellWeights maximally_mixed() { return {0.25, 0.25, 0.25, 0.25}; }

// Bilateral rotation: one side turns by +pi/2 about the axis, the other by
// -pi/2.  On correlations each axis acts as a signed permutation; on weights
// each is a transposition, so both views stay exact.
inline CorrelationVector apply_rotation(const CorrelationVector& c, RotationAxis axis) {
  switch (axis) {
    case RotationAxis::kX: return {c.cx, c.cz, c.cy};
    case RotationAxis::kY: return {-c.cz, c.cy, -c.cx};
    case RotationAxis::kZ: return {c.cy, c.cx, c.cz};
  }
  throw std::invalid_argument("apply_rotation: axis out of range");
}

inline BellWeights apply_rotation(const BellWeights& w, RotationAxis axis) {
  switch (axis) {
    case RotationAxis::kX: return {w.A, w.D, w.C, w.B};
    case RotationAxis::kY: return {w.B, w.A, w.C, w.D};
    case RotationAxis::kZ: return {w.A, w.C, w.B, w.D};
  }
  throw std::invalid_argument("apply_rotation: axis out of range");
}

inline CorrelationVector apply_rotations(CorrelationVector c,
                                         const std::vector<RotationAxis>& rs) {
  for (RotationAxis a : rs) c = apply_rotation(c, a);
  return c;
}

inline BellWeights apply_rotations(BellWeights w, const std::vector<RotationAxis>& rs) {
  for (RotationAxis a : rs) w = apply_rotation(w, a);
  return w;
}

struct CanonicalForm {
  CorrelationVector c;
  std::vector<RotationAxis> rotations;  // applied in order to reach c
};

// Moves the smallest-magnitude correlation into the z slot using at most two
// bilateral rotations.  Ties resolve toward fewer rotations, so states that
// already satisfy |cz| <= min(|cx|, |cy|) are returned untouched.
inline CanonicalForm canonical_order(const CorrelationVector& c) {
  const double ax = std::abs(c.cx), ay = std::abs(c.cy), az = std::abs(c.cz);
  if (az <= ax && az <= ay) {
    return {c, {}};
  }
  if (ay <= ax) {
    return {apply_rotation(c, RotationAxis::kX), {RotationAxis::kX}};
  }
  CorrelationVector out = apply_rotation(c, RotationAxis::kZ);
  out = apply_rotation(out, RotationAxis::kX);
  return {out, {RotationAxis::kZ, RotationAxis::kX}};
}

inline void to_json(nlohmann::json& j, const BellWeights& w) {
  j = nlohmann::json{{"A", w.A}, {"B", w.B}, {"C", w.C}, {"D", w.D}};
}

inline void from_json(const nlohmann::json& j, BellWeights& w) {
  j.at("A").get_to(w.A);
  j.at("B").get_to(w.B);
  j.at("C").get_to(w.C);
  j.at("D").get_to(w.D);
}

inline void to_json(nlohmann::json& j, const CorrelationVector& c) {
  j = nlohmann::json{{"cx", c.cx}, {"cy", c.cy}, {"cz", c.cz}};
}

inline void from_json(const nlohmann::json& j, CorrelationVector& c) {
  j.at("cx").get_to(c.cx);
  j.at("cy").get_to(c.cy);
  j.at("cz").get_to(c.cz);
}

}  // namespace oxpure

#endif  // OXPURE_BELL_HPP_
