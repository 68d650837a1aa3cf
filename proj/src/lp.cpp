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

#include "cipec/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace cipec {

namespace {

// Revised primal simplex for min ||x||_1 s.t. Ax = t over the standard-form
// columns [A, -A, signed artificials]. Pricing runs over an active candidate
// list; when the active list prices out, a full pass over all columns either
// certifies optimality or extends the list and the same run continues. For
// small programs the active list starts as everything, which reduces to
// ordinary Dantzig pricing.
L1MinResult simplex_l1(const RMat& a, const RVec& t,
                       const std::vector<int>& initial_active, double tol,
                       int max_iters) {
  const Eigen::Index m = a.rows();
  const Eigen::Index k = a.cols();
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  const double feas_tol = tol * scale;
  const double cost_tol = 1e-9;
  const double pivot_tol = 1e-11;

  L1MinResult res;

  std::vector<double> art_sign(static_cast<size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i)
    art_sign[size_t(i)] = t[i] >= 0 ? 1.0 : -1.0;
  auto is_artificial = [&](Eigen::Index j) { return j >= 2 * k; };
  auto fetch_column = [&](Eigen::Index j, RVec& out) {
    if (j < k)
      out = a.col(j);
    else if (j < 2 * k)
      out = -a.col(j - k);
    else {
      out.setZero();
      out[j - 2 * k] = art_sign[size_t(j - 2 * k)];
    }
  };

  std::vector<int> active = initial_active;
  std::vector<char> in_active(size_t(k), 0);
  if (active.empty() || k <= 4 * m) {
    active.resize(size_t(k));
    std::iota(active.begin(), active.end(), 0);
  }
  for (int j : active) in_active[size_t(j)] = 1;

  std::vector<Eigen::Index> basis(static_cast<size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[size_t(i)] = 2 * k + i;
  RMat binv = RMat::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) binv(i, i) = art_sign[size_t(i)];
  RVec xb = t.cwiseAbs();

  auto refactorize = [&]() {
    RMat bmat(m, m);
    RVec col(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      fetch_column(basis[size_t(i)], col);
      bmat.col(i) = col;
    }
    binv = Eigen::PartialPivLU<RMat>(bmat).inverse();
    xb = binv * t;
  };

  int iters = 0;
  int since_refactor = 0;

  for (int phase = 1; phase <= 2; ++phase) {
    auto cost_of = [&](Eigen::Index j) -> double {
      if (phase == 1) return is_artificial(j) ? 1.0 : 0.0;
      return is_artificial(j) ? 0.0 : 1.0;
    };
    int stall = 0;
    bool bland = false;
    double last_obj = std::numeric_limits<double>::infinity();

    for (;;) {
      if (iters++ > max_iters) {
        res.status = L1MinResult::Status::iteration_limit;
        res.message = "simplex iteration limit";
        return res;
      }
      RVec cb(m);
      for (Eigen::Index i = 0; i < m; ++i) cb[i] = cost_of(basis[size_t(i)]);
      RVec y = binv.transpose() * cb;
      const double creal = phase == 1 ? 0.0 : 1.0;

      Eigen::Index entering = -1;
      double best_rc = -cost_tol;
      for (int j : active) {
        double w = a.col(j).dot(y);
        double rp = creal - w;
        double rm = creal + w;
        if (rp < best_rc) {
          best_rc = rp;
          entering = j;
          if (bland) break;
        }
        if (rm < best_rc) {
          best_rc = rm;
          entering = j + k;
          if (bland) break;
        }
      }
      if (phase == 1 && !bland) {
        for (Eigen::Index i = 0; i < m; ++i) {
          double rc = 1.0 - art_sign[size_t(i)] * y[i];
          if (rc < best_rc) {
            best_rc = rc;
            entering = 2 * k + i;
          }
        }
      }
      if (entering < 0 && int(active.size()) < int(k)) {
        // Active list priced out: certify against the full column set and
        // extend the list with the worst offenders, continuing the same run.
        RVec w = a.transpose() * y;
        std::vector<std::pair<double, int>> viol;
        for (Eigen::Index j = 0; j < k; ++j) {
          if (in_active[size_t(j)]) continue;
          double rc = creal - std::abs(w[j]);
          if (rc < -cost_tol) viol.emplace_back(rc, int(j));
        }
        if (!viol.empty()) {
          std::sort(viol.begin(), viol.end());
          size_t add = std::min<size_t>(viol.size(), 64);
          for (size_t v = 0; v < add; ++v) {
            active.push_back(viol[v].second);
            in_active[size_t(viol[v].second)] = 1;
          }
          continue;
        }
      }
      if (entering < 0) break;

      RVec acol(m);
      fetch_column(entering, acol);
      RVec dir = binv * acol;

      // Harris two-pass ratio test: bound the step with a feasibility slack,
      // then take the best-conditioned pivot among the near-blocking rows.
      double theta_max = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i)
        if (dir[i] > pivot_tol)
          theta_max =
              std::min(theta_max, (std::max(xb[i], 0.0) + feas_tol) / dir[i]);
      if (!std::isfinite(theta_max)) {
        res.status = L1MinResult::Status::numerical;
        res.message = "unbounded direction in l1 program";
        return res;
      }
      Eigen::Index leave = -1;
      double best_piv = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (dir[i] > pivot_tol &&
            std::max(xb[i], 0.0) / dir[i] <= theta_max && dir[i] > best_piv) {
          best_piv = dir[i];
          leave = i;
        }
      }
      if (leave < 0) {
        res.status = L1MinResult::Status::numerical;
        res.message = "ratio test found no acceptable pivot";
        return res;
      }

      const double theta = std::max(xb[leave], 0.0) / dir[leave];
      const double piv = dir[leave];
      for (Eigen::Index i = 0; i < m; ++i) xb[i] -= theta * dir[i];
      xb[leave] = theta;
      basis[size_t(leave)] = entering;
      binv.row(leave) /= piv;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (i == leave) continue;
        double f = dir[i];
        if (f != 0.0) binv.row(i) -= f * binv.row(leave);
      }
      if (++since_refactor >= 100 || !xb.allFinite()) {
        refactorize();
        since_refactor = 0;
        if (!xb.allFinite()) {
          res.status = L1MinResult::Status::numerical;
          res.message = "basis inverse lost finiteness";
          return res;
        }
      }

      double obj = 0;
      for (Eigen::Index i = 0; i < m; ++i)
        obj += cost_of(basis[size_t(i)]) * std::max(xb[i], 0.0);
      if (obj > last_obj - 1e-13) {
        if (++stall > 3000 && !bland) bland = true;
      } else {
        stall = 0;
      }
      last_obj = obj;
    }

    if (phase == 1) {
      refactorize();
      double artificial_mass = 0;
      for (Eigen::Index i = 0; i < m; ++i)
        if (is_artificial(basis[size_t(i)]))
          artificial_mass += std::abs(xb[i]);
      if (artificial_mass > feas_tol * 10) {
        res.status = L1MinResult::Status::infeasible;
        res.message = "phase 1 ended with nonzero artificials";
        res.residual = artificial_mass;
        return res;
      }
      // Drive leftover zero-level artificials out of the basis so phase 2
      // cannot regrow them (their phase-2 cost is zero, so a basis that
      // still contains one could silently trade feasibility for objective).
      for (Eigen::Index r = 0; r < m; ++r) {
        if (!is_artificial(basis[size_t(r)])) continue;
        bool replaced = false;
        for (int j : active) {
          RVec acol(m);
          fetch_column(j, acol);
          RVec dir = binv * acol;
          if (std::abs(dir[r]) > 1e-7) {
            basis[size_t(r)] = j;
            binv.row(r) /= dir[r];
            for (Eigen::Index i = 0; i < m; ++i) {
              if (i == r) continue;
              double f = dir[i];
              if (f != 0.0) binv.row(i) -= f * binv.row(r);
            }
            replaced = true;
            break;
          }
        }
        if (!replaced) {
          res.status = L1MinResult::Status::numerical;
          res.message = "could not eliminate artificial from the basis";
          return res;
        }
      }
      refactorize();
    }
  }

  refactorize();
  {
    RVec cb(m);
    for (Eigen::Index i = 0; i < m; ++i)
      cb[i] = is_artificial(basis[size_t(i)]) ? 0.0 : 1.0;
    res.dual = binv.transpose() * cb;
  }
  res.x = RVec::Zero(k);
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index j = basis[size_t(i)];
    if (j < k)
      res.x[j] += xb[i];
    else if (j < 2 * k)
      res.x[j - k] -= xb[i];
  }
  res.objective = res.x.cwiseAbs().sum();
  res.residual = (a * res.x - t).cwiseAbs().maxCoeff();
  res.iterations = iters;
  res.status = res.residual <= feas_tol * 10 ? L1MinResult::Status::optimal
                                             : L1MinResult::Status::numerical;
  if (res.status == L1MinResult::Status::numerical)
    res.message = "final residual above tolerance";
  return res;
}

}  // namespace

L1MinResult l1_minimize(const RMat& a, const RVec& t, double tol,
                        int max_iters) {
  return simplex_l1(a, t, {}, tol, max_iters);
}

L1MinResult l1_minimize_column_generation(const RMat& a, const RVec& t,
                                          const std::vector<int>& initial_columns,
                                          double tol, int max_rounds) {
  (void)max_rounds;
  return simplex_l1(a, t, initial_columns, tol, 400000);
}

}  // namespace cipec
