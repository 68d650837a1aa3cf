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

#include "cipec/sdp.hpp"

#include <cmath>
#include <sstream>

namespace cipec {

namespace {

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint().eval()); }

// Largest alpha in (0, 1] with X + alpha*D >= 0, damped by tau. Returns -1 if
// X itself is not positive definite.
double psd_step_length(const CMat& x, const CMat& d, double tau) {
  Eigen::LLT<CMat> llt(x);
  if (llt.info() != Eigen::Success) return -1.0;
  CMat l = llt.matrixL();
  CMat w = l.triangularView<Eigen::Lower>().solve(d);
  w = l.triangularView<Eigen::Lower>()
          .solve(w.adjoint().eval())
          .adjoint()
          .eval();
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(w), Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0) return 1.0;
  return std::min(1.0, -tau / lmin);
}

}  // namespace

SdpResult solve_sdp(const SdpProblem& p, double tol, int max_iters) {
  const Eigen::Index n = p.dim;
  const int m = int(p.constraints.size());
  const double data_scale =
      std::max({1.0, p.objective.cwiseAbs().maxCoeff(),
                p.rhs.size() ? p.rhs.cwiseAbs().maxCoeff() : 0.0});
  // The last stretch of an interior-point solve can break down numerically;
  // accept the best iterate if it certifies this accuracy, otherwise report
  // failure. Diamond-norm consumers need ~1e-6 absolute.
  const double acceptable = std::max(tol, 1e-7);

  CMat x = CMat::Identity(n, n) *
           std::max(1.0, p.rhs.size() ? p.rhs.cwiseAbs().maxCoeff() : 1.0);
  CMat z = CMat::Identity(n, n) * data_scale;
  RVec y = RVec::Zero(m);

  SdpResult best;
  double best_q = std::numeric_limits<double>::infinity();
  std::string stop_reason;

  for (int iter = 0; iter < max_iters; ++iter) {
    RVec rp(m);
    for (int i = 0; i < m; ++i) rp[i] = p.rhs[i] - p.constraints[i].inner(x);
    CMat rd = p.objective - z;
    for (int i = 0; i < m; ++i) p.constraints[i].add_scaled_to(rd, -y[i]);
    rd = hermitize(rd);

    double mu = (x * z).trace().real() / double(n);
    double pobj = (p.objective * x).trace().real();
    double dobj = p.rhs.size() ? p.rhs.dot(y) : 0.0;
    double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    double prn = rp.size() ? rp.cwiseAbs().maxCoeff() : 0.0;
    double drn = rd.cwiseAbs().maxCoeff();
    double quality = std::max({gap, prn / (1 + data_scale), drn / (1 + data_scale)});

    if (quality < best_q) {
      best_q = quality;
      best.x = x;
      best.y = y;
      best.z = z;
      best.primal_objective = pobj;
      best.dual_objective = dobj;
      best.gap = gap;
      best.primal_resid = prn;
      best.dual_resid = drn;
      best.iterations = iter;
    }
    if (quality < tol) return best;

    Eigen::LLT<CMat> zllt(z);
    if (zllt.info() != Eigen::Success) {
      stop_reason = "dual iterate lost positive definiteness";
      break;
    }

    // Schur complement M_ij = Re tr(A_i X A_j Z^{-1}).
    std::vector<CMat> g(m);
    for (int j = 0; j < m; ++j) {
      CMat aj = CMat::Zero(n, n);
      p.constraints[j].add_scaled_to(aj, 1.0);
      CMat zinv_aj = zllt.solve(aj);
      g[j] = x * zinv_aj.adjoint();
    }
    RMat schur(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) schur(i, j) = p.constraints[i].inner(g[j]);
    RMat schur_sym = 0.5 * (schur + schur.transpose());
    double ridge = 1e-14 * std::max(1.0, schur_sym.diagonal().maxCoeff());
    schur_sym += ridge * RMat::Identity(m, m);
    Eigen::LDLT<RMat> schur_f(schur_sym);

    CMat zinv = hermitize(zllt.solve(CMat::Identity(n, n)));
    CMat x_rd_zinv = x * rd * zinv;

    bool numeric_failure = false;
    auto solve_direction = [&](const CMat& target, CMat& dx, RVec& dy,
                               CMat& dz) {
      // Delta_Z = R_d - sum_i dy_i A_i,
      // Delta_X = target*Z^{-1} - X Delta_Z Z^{-1},
      // <A_i, Delta_X> = rp_i  fixes dy via the Schur complement.
      CMat tz = target * zinv;
      RVec rhs(m);
      for (int i = 0; i < m; ++i)
        rhs[i] = rp[i] - p.constraints[i].inner(tz) +
                 p.constraints[i].inner(x_rd_zinv);
      dy = schur_f.solve(rhs);
      if (!dy.allFinite()) {
        numeric_failure = true;
        dy.setZero();
      }
      dz = rd;
      for (int i = 0; i < m; ++i) p.constraints[i].add_scaled_to(dz, -dy[i]);
      dz = hermitize(dz);
      dx = hermitize(tz - x * dz * zinv);
    };

    CMat dxa, dza;
    RVec dya;
    solve_direction(-x * z, dxa, dya, dza);
    if (numeric_failure) {
      stop_reason = "singular Schur complement";
      break;
    }
    double ap = psd_step_length(x, dxa, 0.99);
    double ad = psd_step_length(z, dza, 0.99);
    if (ap < 0 || ad < 0) {
      stop_reason = "iterate lost positive definiteness";
      break;
    }
    double mu_aff =
        ((x + ap * dxa) * (z + ad * dza)).trace().real() / double(n);
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);
    sigma = std::min(std::max(sigma, 1e-10), 1.0);

    CMat dx, dz;
    RVec dy;
    CMat target = sigma * mu * CMat::Identity(n, n) - x * z - dxa * dza;
    solve_direction(target, dx, dy, dz);
    if (numeric_failure) {
      stop_reason = "singular Schur complement";
      break;
    }
    ap = psd_step_length(x, dx, 0.98);
    ad = psd_step_length(z, dz, 0.98);
    if (ap < 1e-10 || ad < 1e-10) {
      stop_reason = "step length collapsed";
      break;
    }

    x = hermitize(x + ap * dx);
    y += ad * dy;
    z = hermitize(z + ad * dz);
  }

  if (best_q < acceptable) return best;
  std::ostringstream msg;
  msg << "sdp: " << (stop_reason.empty() ? "no convergence" : stop_reason)
      << "; best gap=" << best.gap << " primal_resid=" << best.primal_resid
      << " dual_resid=" << best.dual_resid << " after " << best.iterations
      << " iterations";
  throw numerical_error(msg.str());
}

}  // namespace cipec
