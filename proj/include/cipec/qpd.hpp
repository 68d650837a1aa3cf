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

#ifndef CIPEC_QPD_HPP
#define CIPEC_QPD_HPP

#include <utility>
#include <vector>

#include "cipec/basis.hpp"
#include "cipec/rng.hpp"

namespace cipec {

/// Quasi-probability decomposition of a target channel over a basis, with an
/// optional fixed compensation term of coefficient one:
///
///   target = compensation + sum_j b_j basis_j.
///
/// gamma = 1 + ||b||_1 when a compensation term is present (the program's
/// objective); without one the program computes the basis norm ||target||_B
/// directly and gamma = ||b||_1. The sampling distribution covers the nonzero
/// coefficients plus (with compensation) the compensation term itself, with
/// p = |b_j| / gamma and p_comp = 1 / gamma.
struct QuasiProbDecomposition {
  std::string basis_hash;
  std::string target_label;
  bool has_compensation = false;
  std::vector<std::pair<int, double>> coeffs;  // (element index, b_j), sparse
  double l1 = 0;
  double gamma = 0;
  double residual = 0;  // Frobenius norm of the Choi reconstruction error

  // Sampling tables: index -1 denotes the compensation term.
  std::vector<int> sample_support;
  std::vector<int> sample_sign;
  std::vector<double> sample_cdf;
};

/// Solves the l1-minimal decomposition by linear program in split variables
/// over the 256 real Choi constraints (projected to the basis span; the
/// off-span component of the target must vanish). Throws validation_error
/// with the achieved rank when the basis does not span the target, and
/// numerical_error on solver failure.
QuasiProbDecomposition l1_min_decompose(
    const QuantumChannel& target, const ChannelBasis& basis,
    const QuantumChannel* compensation = nullptr);

/// Frobenius norm of target_choi - (compensation_choi + sum_j b_j choi_j),
/// recomputed from scratch. Throws validation_error on basis hash mismatch
/// and numerical_error when it disagrees with the stored residual by more
/// than 1e-10.
double verify_decomposition(const QuasiProbDecomposition& qpd,
                            const QuantumChannel& target,
                            const ChannelBasis& basis,
                            const QuantumChannel* compensation = nullptr);

/// One draw from the decomposition's sampling distribution:
/// (element index, sign), with index -1 for the compensation term (sign +1).
std::pair<int, int> sample_index(const QuasiProbDecomposition& qpd,
                                 RngStream& rng);

/// Real vectorization of a Hermitian matrix: the n diagonal entries followed
/// by sqrt(2)*Re and sqrt(2)*Im of the upper off-diagonal entries in
/// row-major order. An isometry onto R^(n^2): norms equal Frobenius norms,
/// and the redundant lower-triangle constraint rows are never formed.
RVec real_vectorize_hermitian(const CMat& m);

}  // namespace cipec

#endif
