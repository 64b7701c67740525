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

// Dense density matrices for up to six qubits.
//
// Qubit 0 is the most significant bit of a basis index.  Entangled pairs are
// laid out pair-major: pair k (1-based) occupies qubits 2(k-1) and 2(k-1)+1,
// with one party holding the even qubit and the other the odd one.
//
// DensityMatrix enforces its invariants on construction: power-of-two
// dimension at most 64, Hermitian and unit trace to 1e-12, and eigenvalues
// no lower than -1e-10.  Intermediate unnormalized operators are handled as
// raw matrices; only normalized states get wrapped.

#ifndef OXPURE_DENSITY_HPP_
#define OXPURE_DENSITY_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace oxpure {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Party : int { kAlice = 0, kBob = 1 };

// Global qubit index of one party's half of a 1-based pair.
inline int qubit_index(int pair, Party p) {
  if (pair < 1 || pair > 3) throw std::invalid_argument("qubit_index: pair must be 1..3");
  return 2 * (pair - 1) + (p == Party::kBob ? 1 : 0);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline int qubit_count_for_dim(Eigen::Index dim) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim && n <= 6) {
    d *= 2;
    ++n;
  }
  if (d != dim || n > 6) {
    throw std::invalid_argument("dimension must be a power of two at most 64");
  }
  return n;
}

struct DensityCheckOptions {
  double hermitian_tol = 1e-12;
  double trace_tol = 1e-12;
  double eigenvalue_floor = -1e-10;
};

struct DensityCheck {
  bool dims_ok = false;
  double hermitian_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;

  bool ok() const { return dims_ok && hermitian && unit_trace && positive; }

  std::string describe() const {
    if (ok()) return "ok";
    std::string s = "density check failed:";
    if (!dims_ok) s += " bad-dimension";
    if (!hermitian) s += " hermitian-deviation=" + std::to_string(hermitian_deviation);
    if (!unit_trace) s += " trace-deviation=" + std::to_string(trace_deviation);
    if (!positive) s += " min-eigenvalue=" + std::to_string(min_eigenvalue);
    return s;
  }
};

inline DensityCheck check_density(const Matrix& m,
                                  const DensityCheckOptions& opt = {}) {
  DensityCheck r;
  if (m.rows() != m.cols()) return r;
  try {
    qubit_count_for_dim(m.rows());
  } catch (const std::invalid_argument&) {
    return r;
  }
  r.dims_ok = true;
  r.hermitian_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  r.hermitian = r.hermitian_deviation <= opt.hermitian_tol;
  r.trace_deviation = std::abs(m.trace() - Complex(1.0, 0.0));
  r.unit_trace = r.trace_deviation <= opt.trace_tol;
  if (r.hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = solver.eigenvalues().minCoeff();
  } else {
    r.min_eigenvalue = -1.0;
  }
  r.positive = r.min_eigenvalue >= opt.eigenvalue_floor;
  return r;
}

// A density matrix that has passed its invariant checks.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, const DensityCheckOptions& opt = {})
      : m_(std::move(m)) {
    const DensityCheck r = check_density(m_, opt);
    if (!r.ok()) throw std::invalid_argument(r.describe());
    n_qubits_ = qubit_count_for_dim(m_.rows());
  }

  const Matrix& mat() const { return m_; }
  int qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
  int n_qubits_ = 0;
};

// Traces out every qubit not listed in keep.  Output index bits follow the
// order of the keep list.
inline Matrix partial_trace(const Matrix& rho, const std::vector<int>& keep,
                            int n_qubits) {
  if (rho.rows() != rho.cols() || rho.rows() != (Eigen::Index(1) << n_qubits)) {
    throw std::invalid_argument("partial_trace: dimension mismatch");
  }
  std::vector<int> traced;
  for (int q = 0; q < n_qubits; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  const int nk = static_cast<int>(keep.size());
  const int nt = static_cast<int>(traced.size());
  const auto assemble = [&](std::uint64_t kept_bits, std::uint64_t traced_bits) {
    std::uint64_t idx = 0;
    for (int i = 0; i < nk; ++i) {
      const int q = keep[i];
      const std::uint64_t bit = (kept_bits >> (nk - 1 - i)) & 1u;
      idx |= bit << (n_qubits - 1 - q);
    }
    for (int i = 0; i < nt; ++i) {
      const int q = traced[i];
      const std::uint64_t bit = (traced_bits >> (nt - 1 - i)) & 1u;
      idx |= bit << (n_qubits - 1 - q);
    }
    return idx;
  };
  const Eigen::Index out_dim = Eigen::Index(1) << nk;
  Matrix out = Matrix::Zero(out_dim, out_dim);
  for (std::uint64_t r = 0; r < std::uint64_t(out_dim); ++r) {
    for (std::uint64_t c = 0; c < std::uint64_t(out_dim); ++c) {
      Complex sum = 0.0;
      for (std::uint64_t t = 0; t < (std::uint64_t(1) << nt); ++t) {
        sum += rho(assemble(r, t), assemble(c, t));
      }
      out(r, c) = sum;
    }
  }
  return out;
}

inline void to_json(nlohmann::json& j, const DensityMatrix& rho) {
  nlohmann::json data = nlohmann::json::array();
  const Matrix& m = rho.mat();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  j = nlohmann::json{{"dim", m.rows()}, {"data", data}};
}

inline void from_json(const nlohmann::json& j, DensityMatrix& rho) {
  const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (data.size() != static_cast<std::size_t>(dim * dim)) {
    throw std::invalid_argument("DensityMatrix json: data length mismatch");
  }
  Matrix m(dim, dim);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c, ++k) {
      m(r, c) = Complex(data[k][0].get<double>(), data[k][1].get<double>());
    }
  }
  rho = DensityMatrix(std::move(m));
}

}  // namespace oxpure

#endif  // OXPURE_DENSITY_HPP_
