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

// Gate matrices and their embedding into multi-qubit registers.
//
// Multi-qubit gates are given in the tensor order of their target list; the
// first listed target is the most significant bit of the gate's own index.
// CNOT flips its second target when the first is set.  CCN flips its third
// target when the first two are both set.

#ifndef OXPURE_GATES_HPP_
#define OXPURE_GATES_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "oxpure/bell.hpp"
#include "oxpure/density.hpp"

namespace oxpure {

inline Matrix identity_matrix(Eigen::Index dim) {
  return Matrix::Identity(dim, dim);
}

// 0 = I, 1 = X, 2 = Y, 3 = Z.
inline Matrix pauli(int i) {
  Matrix m(2, 2);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be 0..3");
  }
  return m;
}

inline Matrix pauli(RotationAxis a) { return pauli(static_cast<int>(a) + 1); }

inline const char* pauli_label(int i) {
  switch (i) {
    case 0: return "I";
    case 1: return "X";
    case 2: return "Y";
    case 3: return "Z";
    default: throw std::invalid_argument("pauli_label: index must be 0..3");
  }
}

// Quarter-turn rotation factor for a bilateral rotation: one party applies
// exp(-i pi/4 sigma), the other exp(+i pi/4 sigma), so the turns cancel on
// the symmetric subspace up to the intended correlation permutation.
inline Matrix bilateral_rotation_factor(RotationAxis axis, Party p) {
  const double s = (p == Party::kAlice) ? -1.0 : 1.0;
  const double c = std::sqrt(0.5);
  return c * identity_matrix(2) + Complex(0, s * c) * pauli(axis);
}

inline Matrix cnot_matrix() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

inline Matrix ccnot_matrix() {
  Matrix m = identity_matrix(8);
  m(6, 6) = 0;
  m(7, 7) = 0;
  m(6, 7) = 1;
  m(7, 6) = 1;
  return m;
}

inline bool is_unitary(const Matrix& u, double tol = 1e-12) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - identity_matrix(u.rows())).cwiseAbs().maxCoeff() <= tol;
}

// Expands gate (2^k x 2^k) to the full register.  targets lists the global
// qubits the gate acts on, most significant gate bit first.
inline Matrix embed(const Matrix& gate, const std::vector<int>& targets, int n_qubits) {
  const int k = static_cast<int>(targets.size());
  if (gate.rows() != (Eigen::Index(1) << k) || gate.rows() != gate.cols()) {
    throw std::invalid_argument("embed: gate dimension does not match target count");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const int q = targets[i];
    if (q < 0 || q >= n_qubits) throw std::invalid_argument("embed: target out of range");
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[j] == q) throw std::invalid_argument("embed: duplicate target");
    }
  }
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Matrix out = Matrix::Zero(dim, dim);
  std::vector<int> rest;
  for (int q = 0; q < n_qubits; ++q) {
    bool used = false;
    for (int t : targets) used = used || (t == q);
    if (!used) rest.push_back(q);
  }
  const int nr = static_cast<int>(rest.size());
  const auto assemble = [&](std::uint64_t gate_bits, std::uint64_t rest_bits) {
    std::uint64_t idx = 0;
    for (int i = 0; i < k; ++i) {
      idx |= ((gate_bits >> (k - 1 - i)) & 1u) << (n_qubits - 1 - targets[i]);
    }
    for (int i = 0; i < nr; ++i) {
      idx |= ((rest_bits >> (nr - 1 - i)) & 1u) << (n_qubits - 1 - rest[i]);
    }
    return idx;
  };
  for (std::uint64_t gr = 0; gr < std::uint64_t(gate.rows()); ++gr) {
    for (std::uint64_t gc = 0; gc < std::uint64_t(gate.cols()); ++gc) {
      const Complex v = gate(gr, gc);
      if (v == Complex(0.0, 0.0)) continue;
      for (std::uint64_t t = 0; t < (std::uint64_t(1) << nr); ++t) {
        out(assemble(gr, t), assemble(gc, t)) = v;
      }
    }
  }
  return out;
}

// Conjugates rho by the embedded gate.  The gate must be unitary to 1e-12.
inline Matrix apply_gate(const Matrix& rho, const Matrix& gate,
                         const std::vector<int>& targets) {
  if (!is_unitary(gate)) throw std::invalid_argument("apply_gate: gate is not unitary");
  const int n = qubit_count_for_dim(rho.rows());
  const Matrix u = embed(gate, targets, n);
  return u * rho * u.adjoint();
}

}  // namespace oxpure

#endif  // OXPURE_GATES_HPP_
