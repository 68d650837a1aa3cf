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

#ifndef CIPEC_CHANNEL_HPP
#define CIPEC_CHANNEL_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cipec/rng.hpp"

namespace cipec {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using cplx = std::complex<double>;

/// Raised when an input fails a structural precondition (non-unitary matrix,
/// dimension mismatch, out-of-range parameter).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an iterative numerical routine fails to converge; the message
/// carries the residual it stopped at.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_unitary(const CMat& u, double tol = 1e-10);
bool is_hermitian(const CMat& m, double tol = 1e-10);

/// A density matrix together with its trace. The trace may drop below one
/// downstream of trace-non-increasing maps; it never exceeds one.
struct DensityMatrix {
  CMat matrix;

  explicit DensityMatrix(CMat m, bool validate = true);

  double trace() const { return matrix.trace().real(); }
  Eigen::Index dim() const { return matrix.rows(); }

  static DensityMatrix pure(const CVec& ket);
  static DensityMatrix maximally_mixed(Eigen::Index dim);
};

enum class ChannelKind { unitary, cptp, cp_trace_nonincreasing };

const char* to_string(ChannelKind k);
ChannelKind channel_kind_from_string(const std::string& s);

/// A completely positive map on n qubits stored as a Choi matrix.
///
/// Choi convention (fixed once, tested by the apply-vs-direct oracle):
/// column-stacking with the unnormalized maximally entangled vector
/// |Omega> = sum_i |i>|i>, i.e.
///
///   choi = (id (x) Phi)(|Omega><Omega|) = sum_ij |i><j| (x) Phi(|i><j|),
///
/// so the FIRST tensor factor is the input (reference) system and the second
/// is the output. Under this convention a map is trace-preserving iff the
/// partial trace over the output factor equals the identity, and the action
/// on a state is rho' = tr_in[(rho^T (x) I) choi].
class QuantumChannel {
 public:
  QuantumChannel(int n_qubits, CMat choi, ChannelKind kind,
                 std::string label = {}, bool validate = true);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_qubits_; }
  const CMat& choi() const { return choi_; }
  ChannelKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// The channel as a superoperator on column-stacked density matrices,
  /// S vec(rho) = vec(Phi(rho)). Composition of channels is multiplication
  /// of superoperators; the two representations are index reshuffles of one
  /// another.
  CMat superoperator() const;
  static QuantumChannel from_superoperator(int n_qubits, const CMat& superop,
                                           ChannelKind kind,
                                           std::string label = {});

  /// Kraus operators from the eigendecomposition of the Choi matrix.
  /// Eigenvalues below `tol` (relative to the largest) are dropped.
  std::vector<CMat> kraus_operators(double tol = 1e-12) const;

  bool is_trace_preserving(double tol = 1e-8) const;

 private:
  int n_qubits_;
  CMat choi_;
  ChannelKind kind_;
  std::string label_;
};

/// Channel of the unitary map rho -> U rho U^dagger. Rejects non-unitary input.
QuantumChannel choi_from_unitary(const CMat& u, std::string label = {});

/// Identity channel on n qubits.
QuantumChannel identity_channel(int n_qubits);

/// Choi of second o first; the kind is the weakest of the two
/// (unitary < cptp < cp_trace_nonincreasing).
QuantumChannel compose(const QuantumChannel& second,
                       const QuantumChannel& first);

/// Choi of a (x) b, with a acting on the leading (most significant) qubits.
/// Wire convention: qubit 0 is the most significant bit of the basis index,
/// so tensor(X, I) applied to |00><00| yields |10><10|.
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

/// Apply the channel to a state via the Choi action.
DensityMatrix apply(const QuantumChannel& c, const DensityMatrix& rho);

/// Hilbert-Schmidt inner product tr(choi_x choi_y). The imaginary residue of
/// the trace (at most ~1e-12 for Hermitian Choi matrices) is discarded.
double hs_inner(const QuantumChannel& x, const QuantumChannel& y);

/// Numerical rank of the Gram matrix of the channels under hs_inner:
/// singular values above tol times the largest one. Computed from the
/// 256x256 (for two qubits) frame operator sum_i v_i v_i^dag when the list is
/// large; its nonzero spectrum coincides with the Gram matrix spectrum.
int gram_rank(const std::vector<QuantumChannel>& channels, double tol = 1e-8);
int gram_rank_of_vectors(const std::vector<CVec>& vecs, double tol = 1e-8);

/// Haar-distributed unitary on n qubits via QR of a complex Ginibre matrix
/// with the phase-fixed R diagonal. Deterministic for a given seed.
CMat haar_random_unitary(int n_qubits, std::uint64_t seed);
CMat haar_random_unitary(int n_qubits, RngStream& rng);

/// Partial trace over the output (second) factor of a Choi-ordered matrix on
/// dim*dim; returns a dim x dim matrix. Used for the trace-preservation test
/// tr_out(choi) = I_in.
CMat partial_trace_output(const CMat& choi, Eigen::Index dim_in,
                          Eigen::Index dim_out);
CMat partial_trace_input(const CMat& choi, Eigen::Index dim_in,
                         Eigen::Index dim_out);

/// Column-stacking vectorization and its inverse.
CVec vec(const CMat& m);
CMat unvec(const CVec& v, Eigen::Index rows, Eigen::Index cols);

}  // namespace cipec

#endif
