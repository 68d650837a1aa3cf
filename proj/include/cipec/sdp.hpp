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

#ifndef CIPEC_SDP_HPP
#define CIPEC_SDP_HPP

#include <vector>

#include "cipec/channel.hpp"

namespace cipec {

/// Hermitian constraint matrix stored as an explicit list of nonzero entries
/// (both triangles). The diamond-norm constraints have at most four nonzeros
/// each, which keeps the Schur complement assembly cheap.
struct SparseHerm {
  struct Entry {
    Eigen::Index row, col;
    cplx value;
  };
  std::vector<Entry> entries;

  void add(Eigen::Index r, Eigen::Index c, cplx v) {
    entries.push_back({r, c, v});
  }
  /// Re tr(A X) for dense Hermitian X.
  double inner(const CMat& x) const {
    cplx s = 0;
    for (const auto& e : entries) s += e.value * x(e.col, e.row);
    return s.real();
  }
  void add_scaled_to(CMat& x, double w) const {
    for (const auto& e : entries) x(e.row, e.col) += w * e.value;
  }
};

/// Standard-form semidefinite program over one Hermitian block:
///   minimize    Re tr(C X)
///   subject to  Re tr(A_i X) = b_i,  X >= 0.
struct SdpProblem {
  Eigen::Index dim = 0;
  CMat objective;  // C
  std::vector<SparseHerm> constraints;
  RVec rhs;  // b
};

struct SdpResult {
  CMat x;
  RVec y;
  CMat z;
  double primal_objective = 0;
  double dual_objective = 0;
  double gap = 0;         // |primal - dual| / (1 + |primal| + |dual|)
  double primal_resid = 0;
  double dual_resid = 0;
  int iterations = 0;
};

/// Dense primal-dual interior-point solve (HKM direction, Mehrotra
/// predictor-corrector). Throws numerical_error with the residuals if the
/// target tolerance is not reached within max_iters.
SdpResult solve_sdp(const SdpProblem& problem, double tol = 1e-9,
                    int max_iters = 200);

}  // namespace cipec

#endif
