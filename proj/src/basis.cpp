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

#include "cipec/basis.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "cipec/io.hpp"
#include "cipec/qpd.hpp"

namespace cipec {

const char* to_string(BasisKind k) {
  switch (k) {
    case BasisKind::B1: return "B1";
    case BasisKind::B2: return "B2";
    case BasisKind::B3: return "B3";
    case BasisKind::custom: return "custom";
  }
  return "?";
}

BasisKind basis_kind_from_string(const std::string& s) {
  if (s == "B1") return BasisKind::B1;
  if (s == "B2") return BasisKind::B2;
  if (s == "B3") return BasisKind::B3;
  if (s == "custom") return BasisKind::custom;
  throw validation_error("unknown basis kind: " + s);
}

namespace {

// Canonical key of a 4x4 unitary up to global phase. The anchor is the first
// entry (row-major) whose quantized magnitude matches the quantized maximum;
// the phase making it real positive is stripped and the entries quantized at
// 1e-3, far below the minimum gap between distinct Clifford entry values.
std::string canonical_key(const CMat& u) {
  double maxabs = 0;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) maxabs = std::max(maxabs, std::abs(u(i, j)));
  long qmax = std::lround(maxabs * 1000.0);
  cplx phase(1, 0);
  bool found = false;
  for (Eigen::Index i = 0; i < 4 && !found; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) {
      double a = std::abs(u(i, j));
      if (std::lround(a * 1000.0) == qmax) {
        phase = std::conj(u(i, j)) / a;
        found = true;
        break;
      }
    }
  std::string key;
  key.reserve(64);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) {
      cplx v = u(i, j) * phase;
      auto push = [&key](double x) {
        std::int16_t q = std::int16_t(std::lround(x * 1000.0));
        char raw[2];
        std::memcpy(raw, &q, 2);
        key.append(raw, 2);
      };
      push(v.real());
      push(v.imag());
    }
  return key;
}

std::vector<DeviceOp> clifford_generators() {
  const OpName cliffs[7] = {OpName::I, OpName::H, OpName::S, OpName::Sdg,
                            OpName::X, OpName::Y, OpName::Z};
  std::vector<DeviceOp> gens;
  for (OpName a : cliffs)
    for (OpName b : cliffs) {
      if (a == OpName::I && b == OpName::I) continue;
      gens.push_back(DeviceOp::make_pair(a, b));
    }
  gens.push_back(DeviceOp::make_cnot(0));
  gens.push_back(DeviceOp::make_cnot(1));
  return gens;
}

CMat device_op_unitary(const DeviceOp& op) {
  if (op.kind == DeviceOp::Kind::cnot) {
    CMat m = CMat::Zero(4, 4);
    if (op.control == 0) {
      m(0, 0) = 1; m(1, 1) = 1; m(2, 3) = 1; m(3, 2) = 1;
    } else {
      m(0, 0) = 1; m(3, 1) = 1; m(2, 2) = 1; m(1, 3) = 1;
    }
    return m;
  }
  CMat a = gate_matrix_1q(op.a), b = gate_matrix_1q(op.b);
  CMat out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block(i * 2, j * 2, 2, 2) = a(i, j) * b;
  return out;
}

}  // namespace

const std::vector<CliffordElement>& enumerate_clifford_2q() {
  static const std::vector<CliffordElement> table = [] {
    std::vector<DeviceOp> gens = clifford_generators();
    std::vector<CMat> gen_u;
    gen_u.reserve(gens.size());
    for (const auto& g : gens) gen_u.push_back(device_op_unitary(g));

    std::vector<CliffordElement> elems;
    std::unordered_map<std::string, int> seen;
    elems.push_back({CMat::Identity(4, 4), {}, 0});
    seen.emplace(canonical_key(elems[0].unitary), 0);

    for (size_t head = 0; head < elems.size(); ++head) {
      // BFS: elems is processed in insertion order, so depths are
      // nondecreasing and the first word found is shortest.
      CMat parent_u = elems[head].unitary;
      DeviceWord parent_w = elems[head].word;
      int parent_d = elems[head].depth;
      for (size_t g = 0; g < gens.size(); ++g) {
        CMat u = gen_u[g] * parent_u;
        std::string key = canonical_key(u);
        if (seen.emplace(key, int(elems.size())).second) {
          DeviceWord w = parent_w;
          w.push_back(gens[g]);
          elems.push_back({std::move(u), std::move(w), parent_d + 1});
        }
      }
    }
    return elems;
  }();
  return table;
}

std::vector<BasisElement> state_prep_channels(const ImplementableSet& set) {
  const OpName factors[4] = {OpName::I, OpName::PREP_PLUS, OpName::PREP_PLUSY,
                             OpName::PREP_0};
  std::vector<BasisElement> out;
  for (OpName a : factors)
    for (OpName b : factors) {
      DeviceWord w = {DeviceOp::make_pair(a, b)};
      out.push_back({w, 1, set.word_channel(w, true)});
    }
  return out;
}

std::vector<BasisElement> greedy_independent_subset(
    const std::vector<BasisElement>& candidates, int target_dim, double tol) {
  std::vector<BasisElement> chosen;
  std::vector<RVec> ortho;
  for (const auto& cand : candidates) {
    if (int(chosen.size()) == target_dim) break;
    RVec v = real_vectorize_hermitian(cand.choi_noisy.choi());
    double vn = v.norm();
    if (vn == 0) continue;
    RVec r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : ortho) r -= q.dot(r) * q;
    if (r.norm() > tol * vn) {
      ortho.push_back(r / r.norm());
      chosen.push_back(cand);
    }
  }
  if (int(chosen.size()) != target_dim) {
    std::ostringstream msg;
    msg << "greedy selection reached rank " << chosen.size()
        << " of the requested " << target_dim;
    throw validation_error(msg.str());
  }
  return chosen;
}

void ChannelBasis::finalize(double rank_tol) {
  Eigen::Index n = Eigen::Index(elements.size());
  columns.resize(256, n);
  for (Eigen::Index j = 0; j < n; ++j)
    columns.col(j) =
        real_vectorize_hermitian(elements[size_t(j)].choi_noisy.choi());

  // Frame operator of the normalized columns: its rank equals the Gram rank
  // used everywhere else, and its leading eigenvectors give an orthonormal
  // basis of the span.
  RMat frame = RMat::Zero(256, 256);
  for (Eigen::Index j = 0; j < n; ++j) {
    double cn = columns.col(j).norm();
    if (cn == 0) continue;
    RVec u = columns.col(j) / cn;
    frame.noalias() += u * u.transpose();
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(frame);
  double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < 256; ++i)
    if (es.eigenvalues()[i] > rank_tol * lmax) ++rank;
  span_dim = rank;
  span_q = es.eigenvectors().rightCols(rank);
  projected = span_q.transpose() * columns;

  max_depth = 0;
  for (const auto& e : elements) max_depth = std::max(max_depth, e.depth);

  // Spanning core used to seed the column-generation solver on overcomplete
  // bases. For minimal bases every column is core.
  core_columns.clear();
  if (n > 3 * span_dim) {
    std::vector<RVec> ortho;
    for (Eigen::Index j = 0; j < n && int(core_columns.size()) < span_dim;
         ++j) {
      RVec v = columns.col(j);
      RVec r = v;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : ortho) r -= q.dot(r) * q;
      if (r.norm() > 1e-4 * v.norm()) {
        ortho.push_back(r / r.norm());
        core_columns.push_back(int(j));
      }
    }
  } else {
    core_columns.resize(size_t(n));
    for (Eigen::Index j = 0; j < n; ++j) core_columns[size_t(j)] = int(j);
  }

  std::ostringstream hs;
  hs << to_string(kind) << ":" << noise_hash;
  for (const auto& e : elements)
    hs << "/" << word_name(e.word) << "#" << matrix_hash(e.choi_noisy.choi());
  hash = fnv1a_hex(hs.str());
}

bool ChannelBasis::trace_preserving_only() const {
  for (const auto& e : elements)
    if (e.choi_noisy.kind() == ChannelKind::cp_trace_nonincreasing)
      return false;
  return true;
}

namespace {

BasisElement clifford_basis_element(const CliffordElement& ce,
                                    const ImplementableSet& set) {
  return {ce.word, ce.depth, set.word_channel(ce.word, true)};
}

}  // namespace

ChannelBasis build_basis(BasisKind kind, const ImplementableSet& set) {
  const auto& cliffords = enumerate_clifford_2q();
  ChannelBasis basis;
  basis.kind = kind;
  basis.noise_hash = set.hash;

  if (kind == BasisKind::B1) {
    basis.elements.reserve(cliffords.size() + 15);
    for (const auto& ce : cliffords)
      basis.elements.push_back(clifford_basis_element(ce, set));
    auto preps = state_prep_channels(set);
    for (auto& p : preps) {
      if (p.word[0].is_identity()) continue;  // idle already present
      basis.elements.push_back(std::move(p));
    }
  } else if (kind == BasisKind::B2) {
    std::vector<BasisElement> pool;
    for (const auto& ce : cliffords) {
      if (ce.depth > 4) break;  // BFS order: depths are nondecreasing
      pool.push_back(clifford_basis_element(ce, set));
    }
    for (auto& p : state_prep_channels(set)) pool.push_back(std::move(p));
    std::stable_sort(pool.begin(), pool.end(),
                     [](const BasisElement& x, const BasisElement& y) {
                       return x.depth < y.depth;
                     });
    basis.elements = greedy_independent_subset(pool, 241, 1e-4);
  } else if (kind == BasisKind::B3) {
    if (!set.with_projectors)
      throw validation_error(
          "B3 requires an implementable set built with projectors");
    // Greedy over a lazily generated pool: Clifford words by depth, then
    // projector conjugations w2 o pi_z o w1 ordered by total depth. The
    // full pool would be enormous; the scan stops as soon as 256 independent
    // elements are found (total sandwich depth 3 suffices in practice, so
    // D stays well under 10).
    std::vector<RVec> ortho;
    auto consider = [&](BasisElement&& cand) {
      RVec v = real_vectorize_hermitian(cand.choi_noisy.choi());
      RVec r = v;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : ortho) r -= q.dot(r) * q;
      if (r.norm() > 1e-4 * v.norm()) {
        ortho.push_back(r / r.norm());
        basis.elements.push_back(std::move(cand));
      }
    };
    for (const auto& ce : cliffords) {
      if (ce.depth > 4 || basis.elements.size() >= 256) break;
      consider(clifford_basis_element(ce, set));
    }
    std::vector<size_t> depth_begin(12, cliffords.size());
    for (size_t i = 0; i < cliffords.size(); ++i)
      if (depth_begin[size_t(cliffords[i].depth)] == cliffords.size())
        depth_begin[size_t(cliffords[i].depth)] = i;
    auto depth_end = [&](int d) -> size_t {
      for (int e = d + 1; e < 12; ++e)
        if (depth_begin[size_t(e)] != cliffords.size())
          return depth_begin[size_t(e)];
      return cliffords.size();
    };
    const std::vector<DeviceOp> projs = {
        DeviceOp::make_pair(OpName::PROJ_Z, OpName::I),
        DeviceOp::make_pair(OpName::I, OpName::PROJ_Z),
        DeviceOp::make_pair(OpName::PROJ_Z, OpName::PROJ_Z)};
    for (int total = 1; total <= 9 && basis.elements.size() < 256; ++total)
      for (int d1 = 0; d1 <= std::min(4, total - 1); ++d1) {
        int d2 = total - 1 - d1;
        if (d2 > 4 || d2 < 0) continue;
        for (const auto& proj : projs)
          for (size_t i = depth_begin[size_t(d1)];
               i < depth_end(d1) && basis.elements.size() < 256; ++i)
            for (size_t j = depth_begin[size_t(d2)];
                 j < depth_end(d2) && basis.elements.size() < 256; ++j) {
              DeviceWord w = cliffords[i].word;
              w.push_back(proj);
              for (const auto& op : cliffords[j].word) w.push_back(op);
              consider({w, int(w.size()), set.word_channel(w, true)});
            }
      }
    if (basis.elements.size() != 256) {
      std::ostringstream msg;
      msg << "B3 construction reached rank " << basis.elements.size()
          << " of 256";
      throw validation_error(msg.str());
    }
  } else {
    throw validation_error("build_basis: pass an explicit element list for "
                           "custom bases");
  }

  basis.finalize();
  int required = kind == BasisKind::B3 ? 256 : 241;
  if (basis.span_dim < required) {
    std::ostringstream msg;
    msg << "basis " << to_string(kind) << " spans only " << basis.span_dim
        << " dimensions (need " << required << ")";
    throw validation_error(msg.str());
  }
  return basis;
}

CstarEstimate estimate_cstar(const ChannelBasis& basis, int n_samples,
                             std::uint64_t seed, int threads) {
  if (basis.elements.empty() || n_samples < 1)
    throw validation_error("estimate_cstar: need a basis and n_samples >= 1");
  threads = std::max(1, threads);
  std::atomic<int> next{0};
  std::vector<double> best(threads, 0.0);
  std::vector<std::uint64_t> best_stream(threads, 0);
  std::vector<std::string> errors(threads);

  auto worker = [&](int tid) {
    try {
      for (;;) {
        int s = next.fetch_add(1);
        if (s >= n_samples) break;
        RngStream rng(seed, std::uint64_t(s));
        CMat u = haar_random_unitary(2, rng);
        auto qpd = l1_min_decompose(choi_from_unitary(u), basis, nullptr);
        if (qpd.l1 > best[size_t(tid)]) {
          best[size_t(tid)] = qpd.l1;
          best_stream[size_t(tid)] = std::uint64_t(s);
        }
      }
    } catch (const std::exception& e) {
      errors[size_t(tid)] = e.what();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw numerical_error("estimate_cstar: " + e);

  CstarEstimate est;
  est.n_samples = n_samples;
  est.seed = seed;
  for (int t = 0; t < threads; ++t)
    if (best[size_t(t)] > est.value) {
      est.value = best[size_t(t)];
      est.argmax_stream = best_stream[size_t(t)];
    }
  return est;
}

void save_basis(const ChannelBasis& basis, const std::string& path) {
  nlohmann::json j;
  j["kind"] = to_string(basis.kind);
  j["D"] = basis.max_depth;
  j["noise_hash"] = basis.noise_hash;
  j["checksum"] = basis.hash;
  nlohmann::json elems = nlohmann::json::array();
  for (const auto& e : basis.elements) {
    nlohmann::json el;
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& op : e.word) ops.push_back(op.name());
    el["word"] = std::move(ops);
    el["depth"] = e.depth;
    elems.push_back(std::move(el));
  }
  j["elements"] = std::move(elems);
  if (basis.c_star) {
    j["c_star"] = {{"value", basis.c_star->value},
                   {"n_samples", basis.c_star->n_samples},
                   {"seed", basis.c_star->seed},
                   {"argmax_stream", basis.c_star->argmax_stream}};
  }
  save_json_file(path, j);
}

ChannelBasis load_basis(const std::string& path, const ImplementableSet& set) {
  nlohmann::json j = load_json_file(path);
  ChannelBasis basis;
  basis.kind = basis_kind_from_string(j.at("kind").get<std::string>());
  basis.noise_hash = j.at("noise_hash").get<std::string>();
  if (basis.noise_hash != set.hash)
    throw validation_error(
        "basis file was built against a different noise model");
  for (const auto& el : j.at("elements")) {
    std::vector<std::string> ops;
    for (const auto& o : el.at("word")) ops.push_back(o.get<std::string>());
    DeviceWord w = word_parse(ops);
    BasisElement e{w, el.at("depth").get<int>(), set.word_channel(w, true)};
    if (e.depth != int(w.size()))
      throw validation_error("basis file: depth does not match word length");
    basis.elements.push_back(std::move(e));
  }
  basis.finalize();
  if (basis.hash != j.at("checksum").get<std::string>())
    throw validation_error(
        "basis file checksum mismatch after recomputing Choi matrices");
  if (j.contains("c_star")) {
    CstarEstimate est;
    est.value = j["c_star"].at("value").get<double>();
    est.n_samples = j["c_star"].at("n_samples").get<int>();
    est.seed = j["c_star"].at("seed").get<std::uint64_t>();
    est.argmax_stream = j["c_star"].value("argmax_stream", std::uint64_t(0));
    basis.c_star = est;
  }
  return basis;
}

}  // namespace cipec
