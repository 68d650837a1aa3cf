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

#ifndef CIPEC_DIAMOND_HPP
#define CIPEC_DIAMOND_HPP

#include "cipec/channel.hpp"

namespace cipec {

/// Diamond-norm distance ||a - b||_diamond via the semidefinite
/// characterization (Watrous primal form), solved with the dense
/// interior-point method to absolute accuracy ~1e-6 certified by the duality
/// gap. Pairs of unitary channels short-circuit to the exact spectral formula
/// (see unitary_diamond_distance), which agrees with the SDP and stays
/// accurate below the SDP tolerance; everything else takes the SDP path.
/// Non-convergence raises numerical_error carrying the residuals.
double diamond_distance(const QuantumChannel& a, const QuantumChannel& b);

/// Diamond norm of the difference of a Hermiticity-preserving map with Choi
/// matrix `j` (input factor first), by SDP.
double diamond_norm_hermitian(const CMat& j, Eigen::Index dim_in,
                              Eigen::Index dim_out);

/// Exact diamond distance between two unitary CHANNELS:
/// 2*sin(theta/2) where theta (<= pi) is the smallest arc containing the
/// spectrum of U^dag V, or 2 when no such arc shorter than pi exists (the
/// origin then lies in the convex hull of the eigenvalues).
double unitary_diamond_distance(const CMat& u, const CMat& v);

}  // namespace cipec

#endif
