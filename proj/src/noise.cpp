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

#include "cipec/noise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "cipec/diamond.hpp"
#include "cipec/io.hpp"
#include "cipec/rng.hpp"

namespace cipec {

const char* to_string(OpName n) {
  switch (n) {
    case OpName::I: return "I";
    case OpName::H: return "H";
    case OpName::S: return "S";
    case OpName::Sdg: return "Sdg";
    case OpName::X: return "X";
    case OpName::Y: return "Y";
    case OpName::Z: return "Z";
    case OpName::T: return "T";
    case OpName::CNOT: return "CNOT";
    case OpName::PREP_0: return "P0";
    case OpName::PREP_PLUS: return "P+";
    case OpName::PREP_PLUSY: return "P+y";
    case OpName::PROJ_Z: return "PZ";
  }
  return "?";
}

OpName op_name_from_string(const std::string& s) {
  for (OpName n :
       {OpName::I, OpName::H, OpName::S, OpName::Sdg, OpName::X, OpName::Y,
        OpName::Z, OpName::T, OpName::CNOT, OpName::PREP_0, OpName::PREP_PLUS,
        OpName::PREP_PLUSY, OpName::PROJ_Z})
    if (s == to_string(n)) return n;
  throw validation_error("unknown op name: " + s);
}

bool op_is_unitary(OpName n) {
  switch (n) {
    case OpName::PREP_0:
    case OpName::PREP_PLUS:
    case OpName::PREP_PLUSY:
    case OpName::PROJ_Z:
      return false;
    default:
      return true;
  }
}

int op_arity(OpName n) { return n == OpName::CNOT ? 2 : 1; }

CMat gate_matrix_1q(OpName n) {
  CMat m(2, 2);
  const cplx i(0, 1);
  const double s = 1.0 / std::sqrt(2.0);
  switch (n) {
    case OpName::I: return CMat::Identity(2, 2);
    case OpName::H:
      m << s, s, s, -s;
      return m;
    case OpName::S:
      m << 1, 0, 0, i;
      return m;
    case OpName::Sdg:
      m << 1, 0, 0, -i;
      return m;
    case OpName::X:
      m << 0, 1, 1, 0;
      return m;
    case OpName::Y:
      m << 0, -i, i, 0;
      return m;
    case OpName::Z:
      m << 1, 0, 0, -1;
      return m;
    case OpName::T:
      m << 1, 0, 0, std::polar(1.0, 0.7853981633974483096);
      return m;
    default:
      throw validation_error(std::string("not a single-qubit gate: ") +
                             to_string(n));
  }
}

QuantumChannel op_channel_1q(OpName n) {
  if (op_is_unitary(n)) return choi_from_unitary(gate_matrix_1q(n), to_string(n));
  if (n == OpName::PROJ_Z) {
    // rho -> P0 rho P0, trace non-increasing.
    CMat p0 = CMat::Zero(2, 2);
    p0(0, 0) = 1;
    CVec v = vec(p0);
    return QuantumChannel(1, v * v.adjoint(),
                          ChannelKind::cp_trace_nonincreasing, "PZ");
  }
  CVec psi(2);
  if (n == OpName::PREP_0) {
    psi << 1, 0;
  } else if (n == OpName::PREP_PLUS) {
    psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  } else {
    psi << 1.0 / std::sqrt(2.0), cplx(0, 1.0 / std::sqrt(2.0));
  }
  // rho -> |psi><psi| tr(rho): choi = I_in (x) |psi><psi|.
  CMat proj = psi * psi.adjoint();
  CMat choi = CMat::Zero(4, 4);
  choi.block(0, 0, 2, 2) = proj;
  choi.block(2, 2, 2, 2) = proj;
  return QuantumChannel(1, choi, ChannelKind::cptp, to_string(n));
}

std::string DeviceOp::name() const {
  if (kind == Kind::cnot) return control == 0 ? "CNOT01" : "CNOT10";
  return std::string(to_string(a)) + "*" + to_string(b);
}

DeviceOp DeviceOp::parse(const std::string& s) {
  if (s == "CNOT01") return make_cnot(0);
  if (s == "CNOT10") return make_cnot(1);
  auto star = s.find('*');
  if (star == std::string::npos)
    throw validation_error("bad device op: " + s);
  return make_pair(op_name_from_string(s.substr(0, star)),
                   op_name_from_string(s.substr(star + 1)));
}

std::string word_name(const DeviceWord& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += w[i].name();
  }
  return out;
}

DeviceWord word_parse(const std::vector<std::string>& ops) {
  DeviceWord w;
  for (const auto& s : ops) w.push_back(DeviceOp::parse(s));
  return w;
}

NoiseSpec::NoiseSpec(double s1, double s2, std::map<std::string, double> ov)
    : strength_1q(s1), strength_2q(s2), overrides(std::move(ov)) {
  for (double v : {strength_1q, strength_2q})
    if (v < 0.0 || v >= 1.0)
      throw validation_error("noise strength outside [0, 1)");
  for (const auto& [k, v] : overrides) {
    op_name_from_string(k);
    if (v < 0.0 || v >= 1.0)
      throw validation_error("override strength outside [0, 1)");
  }
}

double NoiseSpec::strength_for(OpName n) const {
  auto it = overrides.find(to_string(n));
  if (it != overrides.end()) return it->second;
  // CNOT and T carry the two-qubit-grade noise; everything else (1q gates,
  // idles, preparations, projector) the single-qubit grade.
  if (n == OpName::CNOT || n == OpName::T) return strength_2q;
  return strength_1q;
}

std::string NoiseSpec::content_hash() const {
  std::ostringstream ss;
  ss.precision(17);
  ss << "noise:" << strength_1q << ":" << strength_2q;
  for (const auto& [k, v] : overrides) ss << ":" << k << "=" << v;
  return fnv1a_hex(ss.str());
}

QuantumChannel depolarizing(double p, int n_qubits) {
  if (p < 0.0 || p >= 1.0)
    throw validation_error("depolarizing strength outside [0, 1)");
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  CMat jid = choi_from_unitary(CMat::Identity(d, d)).choi();
  // Choi of rho -> tr(rho) I/d is I_{in} (x) I_{out} / d.
  CMat choi = (1.0 - p) * jid + (p / double(d)) * CMat::Identity(d * d, d * d);
  std::ostringstream label;
  label << "dep(" << p << "," << n_qubits << ")";
  return QuantumChannel(n_qubits, std::move(choi), ChannelKind::cptp,
                        label.str(), false);
}

namespace {

QuantumChannel ideal_channel(const DeviceOp& op) {
  if (op.kind == DeviceOp::Kind::cnot) {
    CMat m = CMat::Zero(4, 4);
    if (op.control == 0) {
      m(0, 0) = 1;
      m(1, 1) = 1;
      m(2, 3) = 1;
      m(3, 2) = 1;
    } else {
      m(0, 0) = 1;
      m(3, 1) = 1;
      m(2, 2) = 1;
      m(1, 3) = 1;
    }
    return choi_from_unitary(m, op.name());
  }
  auto c = tensor(op_channel_1q(op.a), op_channel_1q(op.b));
  c.set_label(op.name());
  return c;
}

QuantumChannel noise_channel(const DeviceOp& op, const NoiseSpec& spec) {
  if (op.kind == DeviceOp::Kind::cnot)
    return depolarizing(spec.strength_for(OpName::CNOT), 2);
  return tensor(depolarizing(spec.strength_for(op.a), 1),
                depolarizing(spec.strength_for(op.b), 1));
}

}  // namespace

const ImplementableOp& ImplementableSet::lookup(const DeviceOp& op) const {
  int i = index_of(op);
  if (i < 0) throw validation_error("op not in implementable set: " + op.name());
  return ops[size_t(i)];
}

int ImplementableSet::index_of(const DeviceOp& op) const {
  for (size_t i = 0; i < ops.size(); ++i)
    if (ops[i].op == op) return int(i);
  return -1;
}

QuantumChannel ImplementableSet::word_channel(const DeviceWord& w,
                                              bool noisy) const {
  ChannelKind kind = ChannelKind::unitary;
  for (const auto& op : w) {
    if (!op.trace_preserving())
      kind = ChannelKind::cp_trace_nonincreasing;
    else if (!op.unitary() || noisy)
      if (kind == ChannelKind::unitary) kind = ChannelKind::cptp;
  }
  if (w.empty()) return identity_channel(2);
  return QuantumChannel::from_superoperator(2, word_superoperator(w, noisy),
                                            kind, word_name(w));
}

CMat ImplementableSet::word_superoperator(const DeviceWord& w,
                                          bool noisy) const {
  CMat s = CMat::Identity(16, 16);
  for (const auto& op : w) {
    const ImplementableOp& io = lookup(op);
    const QuantumChannel& c = noisy ? io.noisy : io.ideal;
    s = c.superoperator() * s;
  }
  return s;
}

ImplementableSet build_implementable_set(const NoiseSpec& spec,
                                         bool with_projectors) {
  ImplementableSet set;
  set.spec = spec;
  set.with_projectors = with_projectors;

  const OpName gates[8] = {OpName::I,  OpName::H, OpName::S, OpName::Sdg,
                           OpName::X,  OpName::Y, OpName::Z, OpName::T};
  const OpName preps[4] = {OpName::I, OpName::PREP_PLUS, OpName::PREP_PLUSY,
                           OpName::PREP_0};

  std::vector<DeviceOp> device_ops;
  for (OpName a : gates)
    for (OpName b : gates) device_ops.push_back(DeviceOp::make_pair(a, b));
  device_ops.push_back(DeviceOp::make_cnot(0));
  device_ops.push_back(DeviceOp::make_cnot(1));
  for (OpName a : preps)
    for (OpName b : preps) {
      if (a == OpName::I && b == OpName::I) continue;  // already the idle pair
      device_ops.push_back(DeviceOp::make_pair(a, b));
    }
  if (with_projectors) {
    device_ops.push_back(DeviceOp::make_pair(OpName::PROJ_Z, OpName::I));
    device_ops.push_back(DeviceOp::make_pair(OpName::I, OpName::PROJ_Z));
    device_ops.push_back(DeviceOp::make_pair(OpName::PROJ_Z, OpName::PROJ_Z));
  }

  // Distinct noise channels are few (one per strength combination); the
  // diamond distances are cached per (noise, ideal) content. For unitary A the
  // distance reduces to ||E - id||_d by unitary invariance of the diamond
  // norm, so all gate pairs sharing a strength pattern share one solve.
  std::unordered_map<std::string, double> cache;
  auto id2 = identity_channel(2);
  set.epsilon_q = 0.0;
  for (const DeviceOp& op : device_ops) {
    ImplementableOp io{op, ideal_channel(op), noise_channel(op, spec),
                       identity_channel(2), 0.0};
    io.noisy = compose(io.noise, io.ideal);
    if (!op.trace_preserving() &&
        io.noisy.kind() != ChannelKind::cp_trace_nonincreasing)
      throw numerical_error("projector op lost its trace-non-increasing kind");
    std::string key;
    {
      std::ostringstream ss;
      ss.precision(17);
      if (op.unitary()) {
        ss << "E-vs-id:";
        if (op.kind == DeviceOp::Kind::cnot)
          ss << "cnot:" << spec.strength_for(OpName::CNOT);
        else
          ss << "pair:" << spec.strength_for(op.a) << ":"
             << spec.strength_for(op.b);
      } else {
        ss << "op:" << op.name() << ":" << spec.strength_for(op.a) << ":"
           << spec.strength_for(op.b);
      }
      key = ss.str();
    }
    auto it = cache.find(key);
    if (it != cache.end()) {
      io.error_diamond = it->second;
    } else {
      double dist = op.unitary() ? diamond_distance(io.noise, id2)
                                 : diamond_distance(io.noisy, io.ideal);
      cache.emplace(key, dist);
      io.error_diamond = dist;
    }
    if (io.error_diamond > set.epsilon_q) {
      set.epsilon_q = io.error_diamond;
      set.worst_op = op.name();
    }
    set.ops.push_back(std::move(io));
  }

  std::ostringstream hs;
  hs << spec.content_hash() << ":proj=" << with_projectors;
  set.hash = fnv1a_hex(hs.str());
  return set;
}

ImplementableSet perturb(const ImplementableSet& set, double eta,
                         std::uint64_t seed) {
  if (eta < 0) throw validation_error("perturb: eta must be nonnegative");
  if (eta == 0) return set;
  ImplementableSet out;
  out.spec = set.spec;
  out.with_projectors = set.with_projectors;

  auto id2 = identity_channel(2);
  out.epsilon_q = 0.0;
  for (size_t j = 0; j < set.ops.size(); ++j) {
    const ImplementableOp& io = set.ops[j];
    RngStream rng(seed, 0x9e70000 + j);
    // Random two-qubit Pauli channel: probabilities from normalized
    // exponential draws over the 16 Pauli conjugations.
    std::vector<double> probs(16);
    double tot = 0;
    for (auto& p : probs) {
      p = -std::log(1.0 - rng.uniform());
      tot += p;
    }
    CMat jp = CMat::Zero(16, 16);
    int idx = 0;
    const OpName paulis[4] = {OpName::I, OpName::X, OpName::Y, OpName::Z};
    for (OpName a : paulis)
      for (OpName b : paulis) {
        CMat u(4, 4);
        {
          CMat ua = gate_matrix_1q(a), ub = gate_matrix_1q(b);
          for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
              u.block(r * 2, c * 2, 2, 2) = ua(r, c) * ub;
        }
        CVec v = vec(u);
        jp += (probs[idx++] / tot) * (v * v.adjoint());
      }
    QuantumChannel pauli_mix(2, jp, ChannelKind::cptp, "pauli-mix", false);

    double d0 = diamond_distance(pauli_mix, io.noise);
    double target = 0.75 * eta;
    if (d0 <= target)
      throw validation_error(
          "perturb: eta too large to realize by Pauli mixing for op " +
          io.op.name());
    double w = target / d0;  // ||E' - E||_d = w d0 by linearity

    ImplementableOp pio = io;
    CMat jmix = (1.0 - w) * io.noise.choi() + w * jp;
    pio.noise = QuantumChannel(2, jmix, ChannelKind::cptp, "perturbed", false);
    pio.noisy = compose(pio.noise, pio.ideal);
    pio.error_diamond = diamond_distance(pio.noisy, pio.ideal);
    if (pio.error_diamond > out.epsilon_q) {
      out.epsilon_q = pio.error_diamond;
      out.worst_op = pio.op.name();
    }
    out.ops.push_back(std::move(pio));
  }
  std::ostringstream hs;
  hs << set.hash << ":perturbed:" << eta << ":" << seed;
  out.hash = fnv1a_hex(hs.str());
  return out;
}

}  // namespace cipec
