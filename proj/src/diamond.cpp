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

#include "cipec/diamond.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cipec/sdp.hpp"

namespace cipec {

namespace {

// Hermitian basis element index helpers for the subspace constraints. The
// upper-left block of the SDP variable must equal rho (x) I_out; its
// orthogonal complement inside Herm(in (x) out) is spanned by F (x) G with F
// any Hermitian basis element on the input factor and G traceless Hermitian
// on the output factor.
struct HermElem {
  // entries of a d x d Hermitian basis element
  std::vector<SparseHerm::Entry> entries;
};

std::vector<HermElem> hermitian_basis(Eigen::Index d, bool traceless) {
  std::vector<HermElem> out;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (!traceless) {
    for (Eigen::Index a = 0; a < d; ++a) out.push_back({{{a, a, 1.0}}});
  } else {
    for (Eigen::Index a = 0; a + 1 < d; ++a)
      out.push_back({{{a, a, inv_sqrt2}, {a + 1, a + 1, -inv_sqrt2}}});
  }
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = a + 1; b < d; ++b) {
      out.push_back({{{a, b, inv_sqrt2}, {b, a, inv_sqrt2}}});
      out.push_back({{{a, b, cplx(0, inv_sqrt2)}, {b, a, cplx(0, -inv_sqrt2)}}});
    }
  return out;
}

}  // namespace

double diamond_norm_hermitian(const CMat& j, Eigen::Index dim_in,
                              Eigen::Index dim_out) {
  // Maximize Re tr(J X) over the off-diagonal block X of
  //   W = [[P, X], [X^dag, Q]] >= 0,  P = rho0 (x) I, Q = rho1 (x) I,
  //   tr rho0 = tr rho1 = 1,
  // which equals ||Delta||_diamond for the Hermiticity-preserving map Delta
  // with Choi matrix J (input factor first). Passed to the minimizing solver
  // with C = -(1/2)[[0, J], [J, 0]].
  const Eigen::Index db = dim_in * dim_out;  // block size
  SdpProblem p;
  p.dim = 2 * db;
  p.objective = CMat::Zero(2 * db, 2 * db);
  p.objective.block(0, db, db, db) = -0.5 * j;
  p.objective.block(db, 0, db, db) = -0.5 * j.adjoint();

  auto fs = hermitian_basis(dim_in, false);
  auto gs = hermitian_basis(dim_out, true);
  std::vector<double> rhs;
  for (Eigen::Index blk = 0; blk < 2; ++blk) {
    Eigen::Index off = blk * db;
    for (const auto& f : fs)
      for (const auto& g : gs) {
        SparseHerm a;
        for (const auto& fe : f.entries)
          for (const auto& ge : g.entries)
            a.add(off + fe.row * dim_out + ge.row,
                  off + fe.col * dim_out + ge.col, fe.value * ge.value);
        p.constraints.push_back(std::move(a));
        rhs.push_back(0.0);
      }
    SparseHerm tr;
    for (Eigen::Index i = 0; i < db; ++i) tr.add(off + i, off + i, 1.0);
    p.constraints.push_back(std::move(tr));
    rhs.push_back(double(dim_out));  // tr(rho (x) I_out) = dim_out
  }
  p.rhs = Eigen::Map<RVec>(rhs.data(), Eigen::Index(rhs.size()));

  SdpResult r = solve_sdp(p, 1e-9, 200);
  return -r.primal_objective;
}

double unitary_diamond_distance(const CMat& u, const CMat& v) {
  if (u.rows() != v.rows() || !is_unitary(u, 1e-8) || !is_unitary(v, 1e-8))
    throw validation_error("unitary_diamond_distance: inputs must be unitary");
  CMat w = u.adjoint() * v;
  Eigen::ComplexEigenSolver<CMat> es(w);
  std::vector<double> phases;
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    phases.push_back(std::arg(es.eigenvalues()[i]));
  std::sort(phases.begin(), phases.end());
  // Smallest arc containing all eigenphases = 2*pi minus the largest gap.
  const double two_pi = 6.283185307179586476925287;
  double max_gap = phases.front() + two_pi - phases.back();
  for (size_t i = 1; i < phases.size(); ++i)
    max_gap = std::max(max_gap, phases[i] - phases[i - 1]);
  double arc = two_pi - max_gap;
  if (arc >= 3.141592653589793238463) return 2.0;
  return 2.0 * std::sin(arc / 2.0);
}

double diamond_distance(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.dim() != b.dim())
    throw validation_error("diamond_distance: dimension mismatch");
  if (a.kind() == ChannelKind::unitary && b.kind() == ChannelKind::unitary) {
    // Recover the unitaries from the rank-1 Choi matrices.
    auto ka = a.kraus_operators(1e-9);
    auto kb = b.kraus_operators(1e-9);
    if (ka.size() == 1 && kb.size() == 1)
      return unitary_diamond_distance(ka[0], kb[0]);
  }
  return diamond_norm_hermitian(a.choi() - b.choi(), a.dim(), a.dim());
}

}  // namespace cipec
