// Copyright 2026 The cipec developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support/reference.hpp"

#include "cipec/rng.hpp"

namespace cipec::testing {

CMat pauli_i() { return CMat::Identity(2, 2); }
CMat pauli_x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
CMat pauli_y() {
  CMat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
CMat pauli_z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
CMat gate_h() {
  CMat m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}
CMat gate_s() {
  CMat m(2, 2);
  m << 1, 0, 0, cplx(0, 1);
  return m;
}
CMat gate_t() {
  CMat m(2, 2);
  m << 1, 0, 0, std::polar(1.0, 0.7853981633974483);
  return m;
}
CMat gate_cnot() {
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat choi_from_kraus(const std::vector<CMat>& kraus) {
  Eigen::Index d = kraus.at(0).rows();
  CMat j = CMat::Zero(d * d, d * d);
  for (const auto& k : kraus) {
    CVec v = vec(k);
    j += v * v.adjoint();
  }
  return j;
}

QuantumChannel random_cptp(int n_qubits, int kraus_rank, std::uint64_t seed) {
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  RngStream rng(seed, 0xC7);
  Eigen::Index big = d * kraus_rank;
  CMat g(big, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < big; ++i)
      g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  // Orthonormalize the columns: Haar-random isometry.
  Eigen::HouseholderQR<CMat> qr(g);
  CMat v = CMat(qr.householderQ()).leftCols(d);
  std::vector<CMat> kraus;
  for (int k = 0; k < kraus_rank; ++k) kraus.push_back(v.block(k * d, 0, d, d));
  return QuantumChannel(n_qubits, choi_from_kraus(kraus), ChannelKind::cptp,
                        "random_cptp");
}

DensityMatrix random_density(int n_qubits, std::uint64_t seed) {
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  RngStream rng(seed, 0xD5);
  CMat g(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i)
      g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

}  // namespace cipec::testing
