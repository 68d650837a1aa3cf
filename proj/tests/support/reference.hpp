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

#ifndef CIPEC_TESTS_REFERENCE_HPP
#define CIPEC_TESTS_REFERENCE_HPP

#include <vector>

#include "cipec/channel.hpp"

namespace cipec::testing {

// Single-qubit constants used all over the tests.
CMat pauli_i();
CMat pauli_x();
CMat pauli_y();
CMat pauli_z();
CMat gate_h();
CMat gate_s();
CMat gate_t();
CMat gate_cnot();  // control = qubit 0 (most significant)

CMat kron(const CMat& a, const CMat& b);

/// Random CPTP channel from a Haar-random isometry with the given Kraus rank.
QuantumChannel random_cptp(int n_qubits, int kraus_rank, std::uint64_t seed);

/// Choi matrix of rho -> sum_k K_k rho K_k^dag under the library convention.
CMat choi_from_kraus(const std::vector<CMat>& kraus);

/// Random density matrix (mixed, full rank almost surely).
DensityMatrix random_density(int n_qubits, std::uint64_t seed);

}  // namespace cipec::testing

#endif
