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

#ifndef CIPEC_NOISE_HPP
#define CIPEC_NOISE_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cipec/channel.hpp"

namespace cipec {

/// Native operation names of the logical device. The universal gate set is
/// {I,H,S,Sdg,X,Y,Z,T} on each wire plus CNOT; the non-unitary operations are
/// state preparations and the z projector.
enum class OpName {
  I,
  H,
  S,
  Sdg,
  X,
  Y,
  Z,
  T,
  CNOT,
  PREP_0,
  PREP_PLUS,
  PREP_PLUSY,
  PROJ_Z
};

const char* to_string(OpName n);
OpName op_name_from_string(const std::string& s);
bool op_is_unitary(OpName n);
int op_arity(OpName n);

/// 2x2 matrix of a single-qubit unitary gate name.
CMat gate_matrix_1q(OpName n);
/// Single-qubit channel of any 1-wire op (gates, preparations, projector).
QuantumChannel op_channel_1q(OpName n);

/// One implementable operation placed on the two-qubit tile. The device
/// alphabet consists of
///   - pairs of single-wire operations (gates or preparations, one per wire),
///   - CNOT in either orientation.
/// Each DeviceOp is one noise event: a pair gets a local depolarizing factor
/// per wire, CNOT gets a two-qubit depolarizing channel on its support.
struct DeviceOp {
  enum class Kind { pair, cnot };
  Kind kind = Kind::pair;
  OpName a = OpName::I;  // wire 0 (most significant)
  OpName b = OpName::I;  // wire 1
  int control = 0;       // cnot: control wire index (0 or 1)

  static DeviceOp make_pair(OpName a, OpName b) {
    return DeviceOp{Kind::pair, a, b, 0};
  }
  static DeviceOp make_cnot(int control) {
    return DeviceOp{Kind::cnot, OpName::CNOT, OpName::CNOT, control};
  }

  bool is_identity() const {
    return kind == Kind::pair && a == OpName::I && b == OpName::I;
  }
  bool unitary() const {
    return kind == Kind::cnot || (op_is_unitary(a) && op_is_unitary(b));
  }
  bool trace_preserving() const {
    return kind == Kind::cnot ||
           (a != OpName::PROJ_Z && b != OpName::PROJ_Z);
  }
  std::string name() const;
  static DeviceOp parse(const std::string& s);

  bool operator==(const DeviceOp& o) const {
    return kind == o.kind && a == o.a && b == o.b && control == o.control;
  }
};

using DeviceWord = std::vector<DeviceOp>;

std::string word_name(const DeviceWord& w);
DeviceWord word_parse(const std::vector<std::string>& ops);

/// Depolarizing parameters of the device. strength_1q applies per wire to
/// single-qubit gates, idles, and state preparations; strength_2q to CNOT
/// (two-qubit depolarizing on its support) and to the T gate (magic-state
/// cost). Per-op overrides are keyed by operation name.
struct NoiseSpec {
  double strength_1q = 0.0;
  double strength_2q = 0.0;
  std::map<std::string, double> overrides;

  NoiseSpec() = default;
  NoiseSpec(double s1, double s2, std::map<std::string, double> ov = {});

  double strength_for(OpName n) const;
  std::string content_hash() const;
};

/// rho -> (1-p) rho + p I/2^n as a CPTP channel.
QuantumChannel depolarizing(double p, int n_qubits);

struct ImplementableOp {
  DeviceOp op;
  QuantumChannel ideal;   // A_j on the two-qubit tile
  QuantumChannel noise;   // E_j
  QuantumChannel noisy;   // E_j o A_j
  double error_diamond = 0.0;  // ||noisy - ideal||_diamond
};

/// The noisy logical device: every implementable operation with its noise
/// channel, and the worst-case diamond error over the set. Immutable after
/// construction; safe for concurrent reads.
struct ImplementableSet {
  NoiseSpec spec;
  bool with_projectors = false;
  std::vector<ImplementableOp> ops;
  double epsilon_q = 0.0;
  std::string worst_op;  // name of the op attaining epsilon_q
  std::string hash;      // content hash used to tag bases and decompositions

  const ImplementableOp& lookup(const DeviceOp& op) const;
  int index_of(const DeviceOp& op) const;

  /// Noisy channel of a word (composition right-to-left: word[0] acts first).
  QuantumChannel word_channel(const DeviceWord& w, bool noisy = true) const;
  /// Superoperator variant used by the hot paths.
  CMat word_superoperator(const DeviceWord& w, bool noisy = true) const;
};

/// Builds the implementable set: all 64 single-wire gate pairs, both CNOT
/// orientations, the 15 nontrivial state-preparation pairs, and (optionally)
/// the z-projector placements. epsilon_q is computed from the diamond
/// distances, reusing the unitary-invariance reduction
/// ||E o A - A||_d = ||E - id||_d whenever A is unitary.
ImplementableSet build_implementable_set(const NoiseSpec& spec,
                                         bool with_projectors = false);

/// Replace every noise channel E_j by E'_j = (1-w) E_j + w P_j with P_j a
/// seeded random Pauli channel on the op support, w scaled so that the
/// measured diamond distance ||E'_j - E_j||_d lands in [0.5 eta, eta].
/// Deterministic per seed. Throws validation_error if eta cannot be realized
/// while keeping E'_j completely positive.
ImplementableSet perturb(const ImplementableSet& set, double eta,
                         std::uint64_t seed);

}  // namespace cipec

#endif
