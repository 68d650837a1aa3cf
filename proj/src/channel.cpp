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

#include "cipec/channel.hpp"

#include <cmath>

namespace cipec {

bool is_unitary(const CMat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  CMat d = u.adjoint() * u - CMat::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(CMat m, bool validate) : matrix(std::move(m)) {
  if (!validate) return;
  if (matrix.rows() != matrix.cols())
    throw validation_error("density matrix must be square");
  if (!is_hermitian(matrix, 1e-10))
    throw validation_error("density matrix not Hermitian within 1e-10");
  Eigen::SelfAdjointEigenSolver<CMat> es(matrix,
                                         Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw validation_error("density matrix not PSD within 1e-10");
  double tr = matrix.trace().real();
  if (tr < -1e-10 || tr > 1.0 + 1e-10)
    throw validation_error("density matrix trace outside [0, 1]");
}

DensityMatrix DensityMatrix::pure(const CVec& ket) {
  CVec k = ket / ket.norm();
  return DensityMatrix(k * k.adjoint(), false);
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(CMat::Identity(dim, dim) / double(dim), false);
}

const char* to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::unitary: return "unitary";
    case ChannelKind::cptp: return "cptp";
    case ChannelKind::cp_trace_nonincreasing: return "cp_trace_nonincreasing";
  }
  return "?";
}

ChannelKind channel_kind_from_string(const std::string& s) {
  if (s == "unitary") return ChannelKind::unitary;
  if (s == "cptp") return ChannelKind::cptp;
  if (s == "cp_trace_nonincreasing") return ChannelKind::cp_trace_nonincreasing;
  throw validation_error("unknown channel kind: " + s);
}

QuantumChannel::QuantumChannel(int n_qubits, CMat choi, ChannelKind kind,
                               std::string label, bool validate)
    : n_qubits_(n_qubits),
      choi_(std::move(choi)),
      kind_(kind),
      label_(std::move(label)) {
  Eigen::Index d = Eigen::Index(1) << n_qubits_;
  if (choi_.rows() != d * d || choi_.cols() != d * d)
    throw validation_error("choi matrix has wrong dimension");
  if (!validate) return;
  if (!is_hermitian(choi_, 1e-9))
    throw validation_error("choi matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(choi_, Eigen::EigenvaluesOnly);
  double lmax = std::max(1.0, es.eigenvalues().maxCoeff());
  if (es.eigenvalues().minCoeff() < -1e-10 * lmax)
    throw validation_error("choi matrix not PSD within 1e-10");
  if (kind_ == ChannelKind::unitary || kind_ == ChannelKind::cptp) {
    CMat tb = partial_trace_output(choi_, d, d);
    if ((tb - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8)
      throw validation_error("trace-preserving channel fails tr_B X = 1_A");
  }
  if (kind_ == ChannelKind::unitary) {
    // Rank one with trace d.
    int rank = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()[i] > 1e-8 * lmax) ++rank;
    if (rank != 1 || std::abs(choi_.trace().real() - double(d)) > 1e-8)
      throw validation_error("unitary channel must have rank-1 choi, trace d");
  }
}

CVec vec(const CMat& m) {
  CVec v(m.size());
  Eigen::Index r = m.rows();
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < r; ++i) v[j * r + i] = m(i, j);
  return v;
}

CMat unvec(const CVec& v, Eigen::Index rows, Eigen::Index cols) {
  CMat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = v[j * rows + i];
  return m;
}

CMat QuantumChannel::superoperator() const {
  Eigen::Index d = dim();
  CMat s(d * d, d * d);
  // S[(l,k),(j,i)] = choi[(i,k),(j,l)]: vec(Phi(rho)) = S vec(rho) under
  // column stacking.
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l)
          s(l * d + k, j * d + i) = choi_(i * d + k, j * d + l);
  return s;
}

QuantumChannel QuantumChannel::from_superoperator(int n_qubits,
                                                  const CMat& superop,
                                                  ChannelKind kind,
                                                  std::string label) {
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  CMat choi(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l)
          choi(i * d + k, j * d + l) = superop(l * d + k, j * d + i);
  // Re-Hermitize to keep composition round-off from accumulating.
  choi = 0.5 * (choi + choi.adjoint().eval());
  return QuantumChannel(n_qubits, std::move(choi), kind, std::move(label),
                        false);
}

std::vector<CMat> QuantumChannel::kraus_operators(double tol) const {
  Eigen::SelfAdjointEigenSolver<CMat> es(choi_);
  Eigen::Index d = dim();
  double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
  if (es.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, lmax))
    throw numerical_error("choi matrix has a significantly negative eigenvalue");
  std::vector<CMat> ks;
  for (Eigen::Index m = es.eigenvalues().size() - 1; m >= 0; --m) {
    double lam = es.eigenvalues()[m];
    if (lam <= tol * std::max(1.0, lmax)) continue;
    ks.push_back(std::sqrt(lam) * unvec(es.eigenvectors().col(m), d, d));
  }
  return ks;
}

bool QuantumChannel::is_trace_preserving(double tol) const {
  Eigen::Index d = dim();
  CMat tb = partial_trace_output(choi_, d, d);
  return (tb - CMat::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

QuantumChannel choi_from_unitary(const CMat& u, std::string label) {
  if (u.rows() != u.cols())
    throw validation_error("choi_from_unitary: matrix not square");
  Eigen::Index d = u.rows();
  int n = 0;
  while ((Eigen::Index(1) << n) < d) ++n;
  if ((Eigen::Index(1) << n) != d)
    throw validation_error("choi_from_unitary: dimension not a power of two");
  if (!is_unitary(u, 1e-10))
    throw validation_error("choi_from_unitary: matrix not unitary within 1e-10");
  // (I (x) U)|Omega> is the column stacking of U itself.
  CVec w = vec(u);
  CMat choi = w * w.adjoint();
  return QuantumChannel(n, std::move(choi), ChannelKind::unitary,
                        std::move(label), false);
}

QuantumChannel identity_channel(int n_qubits) {
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  return choi_from_unitary(CMat::Identity(d, d), "I");
}

static ChannelKind weaker(ChannelKind a, ChannelKind b) {
  auto rank = [](ChannelKind k) {
    switch (k) {
      case ChannelKind::unitary: return 0;
      case ChannelKind::cptp: return 1;
      case ChannelKind::cp_trace_nonincreasing: return 2;
    }
    return 2;
  };
  return rank(a) >= rank(b) ? a : b;
}

QuantumChannel compose(const QuantumChannel& second,
                       const QuantumChannel& first) {
  if (second.n_qubits() != first.n_qubits())
    throw validation_error("compose: channel dimensions differ");
  CMat s = second.superoperator() * first.superoperator();
  return QuantumChannel::from_superoperator(
      first.n_qubits(), s, weaker(second.kind(), first.kind()));
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  Eigen::Index da = a.dim(), db = b.dim(), d = da * db;
  CMat choi = CMat::Zero(d * d, d * d);
  const CMat& ja = a.choi();
  const CMat& jb = b.choi();
  // Joint input index i = i_a*db + i_b (qubit 0 most significant), likewise
  // for outputs; choi rows are (input, output) pairs.
  for (Eigen::Index ia = 0; ia < da; ++ia)
    for (Eigen::Index ka = 0; ka < da; ++ka)
      for (Eigen::Index ja_ = 0; ja_ < da; ++ja_)
        for (Eigen::Index la = 0; la < da; ++la) {
          cplx va = ja(ia * da + ka, ja_ * da + la);
          if (va == cplx(0, 0)) continue;
          for (Eigen::Index ib = 0; ib < db; ++ib)
            for (Eigen::Index kb = 0; kb < db; ++kb)
              for (Eigen::Index jb_ = 0; jb_ < db; ++jb_)
                for (Eigen::Index lb = 0; lb < db; ++lb) {
                  choi((ia * db + ib) * d + (ka * db + kb),
                       (ja_ * db + jb_) * d + (la * db + lb)) =
                      va * jb(ib * db + kb, jb_ * db + lb);
                }
        }
  return QuantumChannel(a.n_qubits() + b.n_qubits(), std::move(choi),
                        weaker(a.kind(), b.kind()), {}, false);
}

DensityMatrix apply(const QuantumChannel& c, const DensityMatrix& rho) {
  Eigen::Index d = c.dim();
  if (rho.dim() != d) throw validation_error("apply: dimension mismatch");
  const CMat& j = c.choi();
  CMat out = CMat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index jj = 0; jj < d; ++jj) {
      cplx r = rho.matrix(i, jj);
      if (r == cplx(0, 0)) continue;
      out += r * j.block(i * d, jj * d, d, d);
    }
  return DensityMatrix(std::move(out), false);
}

double hs_inner(const QuantumChannel& x, const QuantumChannel& y) {
  if (x.dim() != y.dim()) throw validation_error("hs_inner: dimension mismatch");
  return (x.choi() * y.choi()).trace().real();
}

int gram_rank_of_vectors(const std::vector<CVec>& vecs, double tol) {
  if (vecs.empty()) throw validation_error("gram_rank: empty list");
  // Columns are normalized first; the rank of the Gram matrix is unchanged by
  // positive scalings, and normalizing makes that invariance exact in floating
  // point as well.
  Eigen::Index n = Eigen::Index(vecs.size());
  Eigen::Index dim = vecs[0].size();
  std::vector<CVec> vs;
  vs.reserve(vecs.size());
  for (const auto& v : vecs) {
    double nv = v.norm();
    vs.push_back(nv > 0 ? CVec(v / nv) : v);
  }
  RVec evals;
  if (n <= dim) {
    CMat gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        gram(i, j) = vs[i].dot(vs[j]);  // conjugates the left argument
    Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
    evals = es.eigenvalues();
  } else {
    // Frame operator sum_i v_i v_i^dag has the same nonzero spectrum as the
    // Gram matrix and stays at a fixed small dimension.
    CMat frame = CMat::Zero(dim, dim);
    for (const auto& v : vs) frame += v * v.adjoint();
    Eigen::SelfAdjointEigenSolver<CMat> es(frame, Eigen::EigenvaluesOnly);
    evals = es.eigenvalues();
  }
  double lmax = std::max(evals.maxCoeff(), 0.0);
  if (lmax == 0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals[i] > tol * lmax) ++rank;
  return rank;
}

int gram_rank(const std::vector<QuantumChannel>& channels, double tol) {
  if (channels.empty()) throw validation_error("gram_rank: empty list");
  Eigen::Index d = channels[0].dim();
  std::vector<CVec> vs;
  vs.reserve(channels.size());
  for (const auto& c : channels) {
    if (c.dim() != d) throw validation_error("gram_rank: dimension mismatch");
    vs.push_back(vec(c.choi()));
  }
  return gram_rank_of_vectors(vs, tol);
}

CMat haar_random_unitary(int n_qubits, RngStream& rng) {
  if (n_qubits < 1) throw validation_error("haar_random_unitary: n_qubits < 1");
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  CMat g(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i)
      g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    cplx rii = r(i, i);
    double a = std::abs(rii);
    q.col(i) *= (a > 0 ? rii / a : cplx(1, 0));
  }
  return q;
}

CMat haar_random_unitary(int n_qubits, std::uint64_t seed) {
  RngStream rng(seed, 0x4841415255ull);  // stream tag for Haar draws
  return haar_random_unitary(n_qubits, rng);
}

CMat partial_trace_output(const CMat& choi, Eigen::Index dim_in,
                          Eigen::Index dim_out) {
  CMat out = CMat::Zero(dim_in, dim_in);
  for (Eigen::Index i = 0; i < dim_in; ++i)
    for (Eigen::Index j = 0; j < dim_in; ++j)
      for (Eigen::Index k = 0; k < dim_out; ++k)
        out(i, j) += choi(i * dim_out + k, j * dim_out + k);
  return out;
}

CMat partial_trace_input(const CMat& choi, Eigen::Index dim_in,
                         Eigen::Index dim_out) {
  CMat out = CMat::Zero(dim_out, dim_out);
  for (Eigen::Index k = 0; k < dim_out; ++k)
    for (Eigen::Index l = 0; l < dim_out; ++l)
      for (Eigen::Index i = 0; i < dim_in; ++i)
        out(k, l) += choi(i * dim_out + k, i * dim_out + l);
  return out;
}

}  // namespace cipec
