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

// Density-matrix oracle.
//
// Every protocol step is also implemented here as an explicit circuit on the
// full register: build the product state, conjugate by the actual gate
// unitaries, project on the actual measurement operators, trace out and
// renormalize.  No closed-form recurrences are used, so this path serves as
// the independent reference the fast weight-space recurrences are tested
// against.  Intermediate normalized states are wrapped in DensityMatrix,
// which enforces the Hermiticity, trace, and positivity invariants at every
// stage of every circuit.

#ifndef OXPURE_ORACLE_HPP_
#define OXPURE_ORACLE_HPP_

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oxpure/bell.hpp"
#include "oxpure/density.hpp"
#include "oxpure/gates.hpp"

namespace oxpure {

// Variant choice for the three-pair protocol: which two pairs are consumed
// by the projection measurement.  Measuring pairs 1 and 2 (the gate
// controls) keeps the state Bell-diagonal and is the default; measuring
// pairs 2 and 3 keeps pair 1 but leaves coherences between phi+ and phi-,
// which only a twirl removes.  See docs/discrepancies.md for the comparison.
enum class Ox3Variant : int { kMeasureControls = 0, kMeasureTargetSide = 1 };

namespace oracle {

struct MeasurementOutcome {
  double probability = 0.0;
  DensityMatrix post_state;
};

struct BellDecomposition {
  BellWeights weights;
  double residual = 0.0;  // largest off-diagonal magnitude in the Bell basis
};

struct OracleStep {
  BellWeights state;
  double probability = 0.0;
  std::vector<RotationAxis> rotations;
  double bell_residual = 0.0;
};

inline constexpr double kDegenerateProbability = 1e-15;

inline Vector bell_state_vector(BellIndex i) {
  const double s = std::sqrt(0.5);
  Vector v = Vector::Zero(4);
  switch (i) {
    case BellIndex::kPhiPlus: v(0) = s; v(3) = s; break;
    case BellIndex::kPsiMinus: v(1) = s; v(2) = -s; break;
    case BellIndex::kPsiPlus: v(1) = s; v(2) = s; break;
    case BellIndex::kPhiMinus: v(0) = s; v(3) = -s; break;
  }
  return v;
}

inline Matrix bell_projector(BellIndex i) {
  const Vector v = bell_state_vector(i);
  return v * v.adjoint();
}

inline Matrix bell_density(const BellWeights& w) {
  validate(w);
  Matrix rho = Matrix::Zero(4, 4);
  const auto a = to_array(w);
  for (int i = 0; i < 4; ++i) {
    rho += a[i] * bell_projector(static_cast<BellIndex>(i));
  }
  return rho;
}

// Product of pair states, pair-major: qubits (A1, B1, A2, B2, ...).
inline Matrix pair_product_density(const std::vector<BellWeights>& ws) {
  Matrix rho = Matrix::Identity(1, 1);
  for (const BellWeights& w : ws) rho = kron(rho, bell_density(w));
  return rho;
}

inline double pauli_expectation(const Matrix& rho4, int i, int j) {
  return (rho4 * kron(pauli(i), pauli(j))).trace().real();
}

// cy carries the sign flip that diagonalizes all three correlation
// components in the Bell basis.
inline CorrelationVector correlations_of(const Matrix& rho4) {
  return {pauli_expectation(rho4, 1, 1),
          -pauli_expectation(rho4, 2, 2),
          pauli_expectation(rho4, 3, 3)};
}

inline BellDecomposition bell_decomposition(const Matrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4) {
    throw std::invalid_argument("bell_decomposition: expected a 4x4 matrix");
  }
  BellDecomposition out;
  std::array<double, 4> w{};
  Matrix residual = rho4;
  for (int i = 0; i < 4; ++i) {
    const Vector v = bell_state_vector(static_cast<BellIndex>(i));
    w[i] = (v.adjoint() * rho4 * v)(0, 0).real();
    residual -= w[i] * bell_projector(static_cast<BellIndex>(i));
  }
  out.weights = weights_from_array(w);
  out.residual = residual.cwiseAbs().maxCoeff();
  return out;
}

inline BellWeights bell_decompose(const Matrix& rho4, double residual_tol = 1e-9) {
  const BellDecomposition d = bell_decomposition(rho4);
  if (d.residual > residual_tol) {
    throw std::runtime_error(
        "bell_decompose: state is not Bell-diagonal, off-diagonal residual " +
        std::to_string(d.residual));
  }
  return d.weights;
}

// Bilateral rotation of a single pair: Alice turns by +pi/2, Bob by -pi/2.
inline Matrix bilateral_rotate(const Matrix& rho_pair, RotationAxis axis) {
  const Matrix u = kron(bilateral_rotation_factor(axis, Party::kAlice),
                        bilateral_rotation_factor(axis, Party::kBob));
  return u * rho_pair * u.adjoint();
}

// Both parties apply CNOT from their half of pair 1 onto their half of
// pair 2, on the 4-qubit register (A1, B1, A2, B2).
inline Matrix bilateral_cnot_unitary() {
  return embed(cnot_matrix(), {0, 2}, 4) * embed(cnot_matrix(), {1, 3}, 4);
}

// Both parties apply CCNOT with pairs 1 and 2 as controls and pair 3 as
// target, on the 6-qubit register (A1, B1, A2, B2, A3, B3).
inline Matrix bilateral_ccnot_unitary() {
  return embed(ccnot_matrix(), {0, 2, 4}, 6) * embed(ccnot_matrix(), {1, 3, 5}, 6);
}

// Projects pair 2 of a two-pair register onto z-basis coincidence (both
// parties read the same bit), traces it out, renormalizes.
inline MeasurementOutcome measure_zz_coincidence(const Matrix& rho16) {
  if (rho16.rows() != 16 || rho16.cols() != 16) {
    throw std::invalid_argument("measure_zz_coincidence: expected a 16x16 matrix");
  }
  Matrix proj = Matrix::Zero(16, 16);
  for (int s = 0; s < 16; ++s) {
    const int a2 = (s >> 1) & 1, b2 = s & 1;
    if (a2 == b2) proj(s, s) = 1.0;
  }
  const Matrix cut = proj * rho16 * proj;
  const double p = cut.trace().real();
  if (p < kDegenerateProbability) {
    throw std::runtime_error("measure_zz_coincidence: branch probability below 1e-15");
  }
  Matrix post = partial_trace(cut, {0, 1}, 4) / p;
  return {p, DensityMatrix(std::move(post))};
}

// Projects two named pairs of a three-pair register onto matched maximal
// correlation: each party's two measured qubits land together in phi+ or
// together in phi-.  The remaining pair is kept and renormalized.
inline MeasurementOutcome bell_projection_measure(const Matrix& rho64, int pair_u,
                                                  int pair_v) {
  if (rho64.rows() != 64 || rho64.cols() != 64) {
    throw std::invalid_argument("bell_projection_measure: expected a 64x64 matrix");
  }
  if (pair_u == pair_v || pair_u < 1 || pair_u > 3 || pair_v < 1 || pair_v > 3) {
    throw std::invalid_argument("bell_projection_measure: pairs must be distinct, 1..3");
  }
  const std::vector<int> alice = {qubit_index(pair_u, Party::kAlice),
                                  qubit_index(pair_v, Party::kAlice)};
  const std::vector<int> bob = {qubit_index(pair_u, Party::kBob),
                                qubit_index(pair_v, Party::kBob)};
  const Matrix plus =
      embed(bell_projector(BellIndex::kPhiPlus), alice, 6) *
      embed(bell_projector(BellIndex::kPhiPlus), bob, 6);
  const Matrix minus =
      embed(bell_projector(BellIndex::kPhiMinus), alice, 6) *
      embed(bell_projector(BellIndex::kPhiMinus), bob, 6);
  const Matrix proj = plus + minus;
  const Matrix cut = proj * rho64 * proj;
  const double p = cut.trace().real();
  if (p < kDegenerateProbability) {
    throw std::runtime_error("bell_projection_measure: branch probability below 1e-15");
  }
  int kept_pair = 6 - pair_u - pair_v;
  Matrix post = partial_trace(cut,
                              {qubit_index(kept_pair, Party::kAlice),
                               qubit_index(kept_pair, Party::kBob)},
                              6) /
                p;
  return {p, DensityMatrix(std::move(post))};
}

// One two-pair round as an explicit circuit: bilateral rotations on both
// source pairs, bilateral CNOT, z-coincidence readout of pair 2.
inline OracleStep cnot_step(const BellWeights& w,
                            const std::vector<RotationAxis>& rotations) {
  Matrix pair = bell_density(w);
  for (RotationAxis axis : rotations) {
    pair = DensityMatrix(bilateral_rotate(pair, axis)).mat();
  }
  Matrix rho = kron(pair, pair);
  const Matrix u = bilateral_cnot_unitary();
  rho = DensityMatrix(u * rho * u.adjoint()).mat();
  const MeasurementOutcome m = measure_zz_coincidence(rho);
  const BellDecomposition d = bell_decomposition(m.post_state.mat());
  return {d.weights, m.probability, rotations, d.residual};
}

inline OracleStep ox1_step(const BellWeights& w) {
  return cnot_step(w, {RotationAxis::kX});
}

inline OracleStep ox2_step(const BellWeights& w) {
  const CanonicalForm canon = canonical_order(to_correlations(w));
  return cnot_step(w, canon.rotations);
}

// One three-pair round as an explicit circuit: bilateral CCNOT, projection
// measurement of two pairs.  No rotations are part of this protocol.  With
// the kMeasureTargetSide variant the kept pair is not Bell-diagonal; its
// diagonal weights are returned and the discarded coherence is reported in
// bell_residual.
inline OracleStep ox3_step_hetero(const BellWeights& w1, const BellWeights& w2,
                                  const BellWeights& w3,
                                  Ox3Variant variant = Ox3Variant::kMeasureControls) {
  Matrix rho = pair_product_density({w1, w2, w3});
  const Matrix u = bilateral_ccnot_unitary();
  rho = DensityMatrix(u * rho * u.adjoint()).mat();
  const bool controls = variant == Ox3Variant::kMeasureControls;
  const MeasurementOutcome m =
      bell_projection_measure(rho, controls ? 1 : 2, controls ? 2 : 3);
  const BellDecomposition d = bell_decomposition(m.post_state.mat());
  return {d.weights, m.probability, {}, d.residual};
}

inline OracleStep ox3_step(const BellWeights& w,
                           Ox3Variant variant = Ox3Variant::kMeasureControls) {
  return ox3_step_hetero(w, w, w, variant);
}

// Heisenberg image of sigma_mu (control qubit) x sigma_nu (target qubit)
// under CNOT conjugation.  The image of a Pauli product is always a signed
// Pauli product; found by exact matching.
struct PauliImage {
  int sign = 1;
  int control = 0;  // Pauli index on the control slot
  int target = 0;   // Pauli index on the target slot
};

inline PauliImage cnot_heisenberg_image(int mu, int nu) {
  const Matrix u = cnot_matrix();
  const Matrix image = u * kron(pauli(mu), pauli(nu)) * u.adjoint();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Matrix candidate = kron(pauli(a), pauli(b));
      if ((image - candidate).cwiseAbs().maxCoeff() == 0.0) return {1, a, b};
      if ((image + candidate).cwiseAbs().maxCoeff() == 0.0) return {-1, a, b};
    }
  }
  throw std::logic_error("cnot_heisenberg_image: image is not a signed Pauli product");
}

}  // namespace oracle
}  // namespace oxpure

#endif  // OXPURE_ORACLE_HPP_
