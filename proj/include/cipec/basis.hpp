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

#ifndef CIPEC_BASIS_HPP
#define CIPEC_BASIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "cipec/noise.hpp"

namespace cipec {

/// One element of a channel basis: a word of implementable operations and its
/// noisy channel. depth == word.size(); the empty word is the noiseless
/// identity.
struct BasisElement {
  DeviceWord word;
  int depth = 0;
  QuantumChannel choi_noisy = identity_channel(2);
};

enum class BasisKind { B1, B2, B3, custom };
const char* to_string(BasisKind k);
BasisKind basis_kind_from_string(const std::string& s);

struct CstarEstimate {
  double value = 0;
  int n_samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t argmax_stream = 0;  // stream id of the worst-case unitary
};

/// An ordered channel basis with the solver-side data precomputed: the real
/// vectorization of every element's Choi matrix, an orthonormal basis of the
/// spanned subspace, and the projected constraint matrix used by the l1
/// program.
struct ChannelBasis {
  BasisKind kind = BasisKind::custom;
  int max_depth = 0;  // D
  std::string noise_hash;
  std::vector<BasisElement> elements;
  int span_dim = 0;
  std::optional<CstarEstimate> c_star;
  std::string hash;

  RMat columns;    // 256 x N real-vectorized noisy Choi matrices
  RMat span_q;     // 256 x span_dim orthonormal basis of the column span
  RMat projected;  // span_q^T * columns
  std::vector<int> core_columns;  // spanning subset used to seed the solver

  /// Computes columns/span/projection, span_dim and the content hash.
  void finalize(double rank_tol = 1e-8);
  bool trace_preserving_only() const;
};

/// Two-qubit Clifford group enumeration by breadth-first closure over the
/// implementable Clifford generators (the 48 nontrivial single-qubit-gate
/// pairs and both CNOT orientations), with phase-stripped canonical hashing.
/// Yields 11520 elements, each with the first (shortest) word found and the
/// 4x4 unitary; deterministic order.
struct CliffordElement {
  CMat unitary;
  DeviceWord word;
  int depth = 0;
};
const std::vector<CliffordElement>& enumerate_clifford_2q();

/// The 16 tensor-product state-preparation channels {I, P+, P+y, P0}^2,
/// noisy per the implementable set. The all-identity element is the noisy
/// idle pair. Order: row-major over (wire0, wire1) factors.
std::vector<BasisElement> state_prep_channels(const ImplementableSet& set);

/// Greedy linearly-independent subset of the given size: candidates are
/// scanned in order (pre-sorted by depth, then canonical order) and kept when
/// their incremental Gram-Schmidt residual exceeds tol (relative to the
/// candidate norm). The default is the square root of the Gram-rank
/// tolerance, so a selected direction at amplitude tol contributes a Gram
/// eigenvalue at the rank threshold: selections stay above noise-created
/// ghost directions and the selected set passes gram_rank at its own size.
/// Throws validation_error carrying the achieved rank when the candidates do
/// not span target_dim dimensions.
std::vector<BasisElement> greedy_independent_subset(
    const std::vector<BasisElement>& candidates, int target_dim,
    double tol = 1e-4);

/// Builds one of the Table-style bases from the implementable set:
///  B1 = full Clifford group + the 15 nontrivial preparations (overcomplete),
///  B2 = greedy minimal 241-element CPTP-spanning basis from depth <= 4
///       Clifford words and preparations,
///  B3 = greedy minimal 256-element CP-spanning basis from Clifford words and
///       z-projector conjugations.
ChannelBasis build_basis(BasisKind kind, const ImplementableSet& set);

/// Worst-case negativity estimate: max over n_samples Haar-random two-qubit
/// unitaries of the l1-minimal decomposition value ||U||_B (no compensation
/// term). Deterministic per seed; sample s uses stream (seed, s), so the
/// result is independent of the thread count.
CstarEstimate estimate_cstar(const ChannelBasis& basis, int n_samples,
                             std::uint64_t seed, int threads = 1);

/// Basis file round trip. Choi matrices are recomputed from the words on
/// load and verified against the stored checksum.
void save_basis(const ChannelBasis& basis, const std::string& path);
ChannelBasis load_basis(const std::string& path, const ImplementableSet& set);

}  // namespace cipec

#endif
