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

#ifndef CIPEC_LP_HPP
#define CIPEC_LP_HPP

#include <string>

#include "cipec/channel.hpp"

namespace cipec {

struct L1MinResult {
  enum class Status { optimal, infeasible, iteration_limit, numerical };
  Status status = Status::numerical;
  RVec x;              // signed coefficients over the columns of A
  RVec dual;           // equality multipliers at the optimum
  double objective = 0;  // sum_j |x_j|
  double residual = 0;   // ||A x - t||_inf
  int iterations = 0;
  std::string message;
};

/// min ||x||_1 subject to A x = t, dense A with full row rank.
///
/// Revised primal simplex on the split form [A, -A] with a two-phase start,
/// Dantzig pricing over round-robin column blocks, explicit basis inverse
/// with periodic refactorization, and a Bland fallback against cycling.
/// Tolerances target primal feasibility ~1e-9 relative to ||t||.
L1MinResult l1_minimize(const RMat& a, const RVec& t, double tol = 1e-9,
                        int max_iters = 200000);

/// Column-generation wrapper for heavily overcomplete programs: solves the
/// restricted problem on initial_columns, prices the remaining columns
/// against the restricted duals (optimality certificate |a_j . y| <= 1), and
/// grows the active set until no violations remain. Falls back to the full
/// dense solve when the problem is small or a restricted solve misbehaves,
/// so the result is always the exact optimum.
L1MinResult l1_minimize_column_generation(
    const RMat& a, const RVec& t, const std::vector<int>& initial_columns,
    double tol = 1e-9, int max_rounds = 60);

}  // namespace cipec

#endif
