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

#include "support/diamond_oracle.hpp"

#include "cipec/rng.hpp"

namespace cipec::testing {

namespace {

// (id (x) Delta)(psi psi^dag) for |psi> on ref (x) sys, Delta on sys given by
// Choi j (input factor first).
CMat stabilized_output(const CMat& j, const CVec& psi, Eigen::Index d) {
  Eigen::Index dd = d * d;
  CMat m = CMat::Zero(dd, dd);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index rp = 0; rp < d; ++rp)
      for (Eigen::Index s = 0; s < d; ++s)
        for (Eigen::Index sp = 0; sp < d; ++sp) {
          cplx coeff = psi[r * d + s] * std::conj(psi[rp * d + sp]);
          if (coeff == cplx(0, 0)) continue;
          for (Eigen::Index k = 0; k < d; ++k)
            for (Eigen::Index kp = 0; kp < d; ++kp)
              m(r * d + k, rp * d + kp) +=
                  coeff * j(s * d + k, sp * d + kp);
        }
  return m;
}

}  // namespace

double diamond_norm_bruteforce(const CMat& j, Eigen::Index d, int n_starts,
                               int n_iters, std::uint64_t seed) {
  Eigen::Index dd = d * d;
  double best = 0.0;
  for (int start = 0; start < n_starts; ++start) {
    RngStream rng(seed, std::uint64_t(start));
    CVec psi(dd);
    for (Eigen::Index i = 0; i < dd; ++i)
      psi[i] = cplx(rng.gaussian(), rng.gaussian());
    psi /= psi.norm();

    double value = 0.0;
    for (int it = 0; it < n_iters; ++it) {
      CMat m = stabilized_output(j, psi, d);
      Eigen::SelfAdjointEigenSolver<CMat> es(m);
      double f = es.eigenvalues().cwiseAbs().sum();
      // Sign operator of m.
      CMat t = CMat::Zero(dd, dd);
      for (Eigen::Index i = 0; i < dd; ++i) {
        double sgn = es.eigenvalues()[i] >= 0 ? 1.0 : -1.0;
        t += sgn * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      }
      // K[(r',s'),(r,s)] = sum_{k,k'} T[(r',k'),(r,k)] J[(s,k),(s',k')]
      CMat kmat = CMat::Zero(dd, dd);
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index rp = 0; rp < d; ++rp)
          for (Eigen::Index s = 0; s < d; ++s)
            for (Eigen::Index sp = 0; sp < d; ++sp) {
              cplx acc = 0;
              for (Eigen::Index k = 0; k < d; ++k)
                for (Eigen::Index kp = 0; kp < d; ++kp)
                  acc += t(rp * d + kp, r * d + k) * j(s * d + k, sp * d + kp);
              kmat(rp * d + sp, r * d + s) = acc;
            }
      kmat = 0.5 * (kmat + kmat.adjoint().eval());
      Eigen::SelfAdjointEigenSolver<CMat> ek(kmat);
      CVec next = ek.eigenvectors().col(dd - 1);
      double improvement = ek.eigenvalues()[dd - 1] - f;
      psi = next;
      if (it > 4 && improvement < 1e-12) break;
    }
    CMat m = stabilized_output(j, psi, d);
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    value = es.eigenvalues().cwiseAbs().sum();
    best = std::max(best, value);
  }
  return best;
}

}  // namespace cipec::testing
