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

#include "cipec/qpd.hpp"

#include <cmath>
#include <sstream>

#include "cipec/lp.hpp"

namespace cipec {

RVec real_vectorize_hermitian(const CMat& m) {
  Eigen::Index n = m.rows();
  RVec v(n * n);
  Eigen::Index pos = 0;
  for (Eigen::Index i = 0; i < n; ++i) v[pos++] = m(i, i).real();
  const double s = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      v[pos++] = s * m(i, j).real();
      v[pos++] = s * m(i, j).imag();
    }
  return v;
}

QuasiProbDecomposition l1_min_decompose(const QuantumChannel& target,
                                        const ChannelBasis& basis,
                                        const QuantumChannel* compensation) {
  if (basis.elements.empty())
    throw validation_error("l1_min_decompose: empty basis");
  if (target.dim() != basis.elements[0].choi_noisy.dim())
    throw validation_error("l1_min_decompose: dimension mismatch");
  if (compensation && compensation->dim() != target.dim())
    throw validation_error("l1_min_decompose: compensation dimension mismatch");

  CMat target_choi = target.choi();
  if (compensation) target_choi -= compensation->choi();
  RVec t_full = real_vectorize_hermitian(target_choi);

  // The target must lie in the basis span; its off-span component is the
  // infeasibility certificate.
  RVec in_span = basis.span_q * (basis.span_q.transpose() * t_full);
  double off = (t_full - in_span).norm();
  if (off > 1e-8 * std::max(1.0, t_full.norm())) {
    std::ostringstream msg;
    msg << "basis does not span the target (off-span component " << off
        << ", basis rank " << basis.span_dim << ")";
    throw validation_error(msg.str());
  }

  RVec t = basis.span_q.transpose() * t_full;
  L1MinResult lp = l1_minimize_column_generation(basis.projected, t,
                                                 basis.core_columns, 1e-9);
  if (lp.status == L1MinResult::Status::infeasible)
    throw validation_error("l1_min_decompose: program infeasible: " +
                           lp.message);
  if (lp.status != L1MinResult::Status::optimal)
    throw numerical_error("l1_min_decompose: solver failure: " + lp.message);

  QuasiProbDecomposition qpd;
  qpd.basis_hash = basis.hash;
  qpd.target_label = target.label();
  qpd.has_compensation = compensation != nullptr;
  for (Eigen::Index j = 0; j < lp.x.size(); ++j)
    if (lp.x[j] != 0.0) qpd.coeffs.emplace_back(int(j), lp.x[j]);
  qpd.l1 = lp.objective;
  qpd.gamma = compensation ? 1.0 + qpd.l1 : qpd.l1;

  // Frobenius residual of the full (unprojected) reconstruction.
  CMat recon = CMat::Zero(target_choi.rows(), target_choi.cols());
  for (const auto& [j, b] : qpd.coeffs)
    recon += b * basis.elements[size_t(j)].choi_noisy.choi();
  qpd.residual = (recon - target_choi).norm();

  // Sampling tables.
  double cum = 0;
  if (qpd.has_compensation) {
    qpd.sample_support.push_back(-1);
    qpd.sample_sign.push_back(1);
    cum += 1.0 / qpd.gamma;
    qpd.sample_cdf.push_back(cum);
  }
  for (const auto& [j, b] : qpd.coeffs) {
    qpd.sample_support.push_back(j);
    qpd.sample_sign.push_back(b >= 0 ? 1 : -1);
    cum += std::abs(b) / qpd.gamma;
    qpd.sample_cdf.push_back(cum);
  }
  if (!qpd.sample_cdf.empty()) {
    if (std::abs(qpd.sample_cdf.back() - 1.0) > 1e-12)
      throw numerical_error("qpd probabilities do not sum to one");
    qpd.sample_cdf.back() = 1.0;
  }
  return qpd;
}

double verify_decomposition(const QuasiProbDecomposition& qpd,
                            const QuantumChannel& target,
                            const ChannelBasis& basis,
                            const QuantumChannel* compensation) {
  if (qpd.basis_hash != basis.hash)
    throw validation_error("verify_decomposition: stale decomposition "
                           "(basis hash mismatch)");
  if (bool(compensation) != qpd.has_compensation)
    throw validation_error("verify_decomposition: compensation mismatch");
  CMat recon = compensation ? CMat(compensation->choi())
                            : CMat(CMat::Zero(16, 16));
  for (const auto& [j, b] : qpd.coeffs)
    recon += b * basis.elements[size_t(j)].choi_noisy.choi();
  double resid = (target.choi() - recon).norm();
  if (std::abs(resid - qpd.residual) > 1e-10)
    throw numerical_error("verify_decomposition: residual drifted from the "
                          "stored value");
  return resid;
}

std::pair<int, int> sample_index(const QuasiProbDecomposition& qpd,
                                 RngStream& rng) {
  if (qpd.sample_cdf.empty())
    throw validation_error("sample_index: decomposition has no mass");
  double u = rng.uniform();
  auto it = std::lower_bound(qpd.sample_cdf.begin(), qpd.sample_cdf.end(), u);
  size_t k = size_t(it - qpd.sample_cdf.begin());
  if (k >= qpd.sample_cdf.size()) k = qpd.sample_cdf.size() - 1;
  return {qpd.sample_support[k], qpd.sample_sign[k]};
}

}  // namespace cipec
