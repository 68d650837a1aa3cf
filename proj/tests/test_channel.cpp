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

#include <catch2/catch_amalgamated.hpp>

#include "cipec/channel.hpp"
#include "support/reference.hpp"

using namespace cipec;
using namespace cipec::testing;

TEST_CASE("choi_from_unitary identity", "[channel]") {
  auto id = choi_from_unitary(CMat::Identity(4, 4));
  // |Omega><Omega| has trace d = 4.
  REQUIRE(std::abs(id.choi().trace().real() - 4.0) < 1e-12);
  CVec omega = CVec::Zero(16);
  for (int i = 0; i < 4; ++i) omega[i * 4 + i] = 1;
  REQUIRE((id.choi() - omega * omega.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("choi_from_unitary phase invariance", "[channel]") {
  CMat u = haar_random_unitary(2, 11);
  CMat v = std::polar(1.0, 0.813) * u;
  auto cu = choi_from_unitary(u);
  auto cv = choi_from_unitary(v);
  REQUIRE((cu.choi() - cv.choi()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("choi_from_unitary rejects bad input", "[channel]") {
  CMat bad = CMat::Identity(4, 4);
  bad(0, 0) = 1.5;
  REQUIRE_THROWS_AS(choi_from_unitary(bad), validation_error);
  REQUIRE_THROWS_AS(choi_from_unitary(CMat::Zero(4, 3)), validation_error);
}

TEST_CASE("apply matches direct conjugation for 100 random pairs",
          "[channel]") {
  for (int trial = 0; trial < 100; ++trial) {
    CMat u = haar_random_unitary(2, 1000 + trial);
    auto c = choi_from_unitary(u);
    DensityMatrix rho = random_density(2, 2000 + trial);
    DensityMatrix out = apply(c, rho);
    CMat direct = u * rho.matrix * u.adjoint();
    REQUIRE((out.matrix - direct).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("compose inverse and identity", "[channel]") {
  CMat u = haar_random_unitary(2, 5);
  auto c = choi_from_unitary(u);
  auto cdg = choi_from_unitary(CMat(u.adjoint()));
  auto id = identity_channel(2);
  REQUIRE((compose(cdg, c).choi() - id.choi()).cwiseAbs().maxCoeff() < 1e-12);
  auto rnd = random_cptp(2, 3, 77);
  REQUIRE((compose(id, rnd).choi() - rnd.choi()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("compose agrees with sequential apply", "[channel]") {
  auto c1 = random_cptp(2, 4, 31);
  auto c2 = random_cptp(2, 2, 32);
  auto both = compose(c2, c1);
  REQUIRE(both.kind() == ChannelKind::cptp);
  for (int trial = 0; trial < 5; ++trial) {
    DensityMatrix rho = random_density(2, 400 + trial);
    DensityMatrix seq = apply(c2, apply(c1, rho));
    DensityMatrix direct = apply(both, rho);
    REQUIRE((seq.matrix - direct.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("compose is associative on random triples", "[channel]") {
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_cptp(1, 2, 900 + trial);
    auto b = random_cptp(1, 2, 910 + trial);
    auto c = random_cptp(1, 2, 920 + trial);
    auto left = compose(compose(a, b), c);
    auto right = compose(a, compose(b, c));
    REQUIRE((left.choi() - right.choi()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("tensor of identities and wire convention", "[channel]") {
  auto id1 = identity_channel(1);
  auto id2 = identity_channel(2);
  REQUIRE((tensor(id1, id1).choi() - id2.choi()).cwiseAbs().maxCoeff() < 1e-12);

  // tensor(X, I) acts on the most significant qubit: |00> -> |10>.
  auto xi = tensor(choi_from_unitary(pauli_x()), id1);
  CVec ket00 = CVec::Zero(4);
  ket00[0] = 1;
  DensityMatrix out = apply(xi, DensityMatrix::pure(ket00));
  REQUIRE(std::abs(out.matrix(2, 2).real() - 1.0) < 1e-12);
}

TEST_CASE("tensor matches two-qubit Kraus construction", "[channel]") {
  // Single-qubit depolarizing channels combined with tensor() against the
  // direct Kraus construction on two qubits.
  double p = 0.37;
  auto dep_kraus = [&](double q) {
    std::vector<CMat> ks;
    ks.push_back(std::sqrt(1.0 - 0.75 * q) * pauli_i());
    ks.push_back(std::sqrt(q / 4.0) * pauli_x());
    ks.push_back(std::sqrt(q / 4.0) * pauli_y());
    ks.push_back(std::sqrt(q / 4.0) * pauli_z());
    return ks;
  };
  auto k1 = dep_kraus(p);
  QuantumChannel dep1(1, choi_from_kraus(k1), ChannelKind::cptp);
  auto both = tensor(dep1, dep1);
  std::vector<CMat> k2;
  for (const auto& a : k1)
    for (const auto& b : k1) k2.push_back(kron(a, b));
  CMat expected = choi_from_kraus(k2);
  REQUIRE((both.choi() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("hs_inner diagnostics", "[channel]") {
  auto id2 = identity_channel(2);
  REQUIRE(std::abs(hs_inner(id2, id2) - 16.0) < 1e-10);
  auto c = random_cptp(2, 3, 8);
  REQUIRE(hs_inner(c, c) > 0);

  // Pauli-conjugation channels are Hilbert-Schmidt orthogonal... up to the
  // common trace part; the Gram matrix of their differences from each other
  // is what matters for rank tests. Direct check: the 16 two-qubit Pauli
  // conjugations have a diagonal-dominant Gram with identical off-diagonals.
  std::vector<CMat> paulis = {pauli_i(), pauli_x(), pauli_y(), pauli_z()};
  std::vector<QuantumChannel> chans;
  for (const auto& a : paulis)
    for (const auto& b : paulis) chans.push_back(choi_from_unitary(kron(a, b)));
  double diag = hs_inner(chans[0], chans[0]);
  for (size_t i = 0; i < chans.size(); ++i)
    for (size_t j = i + 1; j < chans.size(); ++j) {
      double off = hs_inner(chans[i], chans[j]);
      REQUIRE(off < diag - 1.0);  // strictly separated from the diagonal
    }
  REQUIRE(gram_rank(chans) == 16);
}

TEST_CASE("gram_rank repeated channel", "[channel]") {
  auto c = random_cptp(2, 2, 5);
  std::vector<QuantumChannel> five(5, c);
  REQUIRE(gram_rank(five) == 1);
}

TEST_CASE("gram_rank scale invariance", "[channel]") {
  std::vector<QuantumChannel> chans;
  for (int i = 0; i < 6; ++i) chans.push_back(random_cptp(1, 2, 50 + i));
  int r0 = gram_rank(chans);
  CMat scaled = chans[2].choi() * 123.456;
  chans[2] = QuantumChannel(1, scaled, ChannelKind::cp_trace_nonincreasing,
                            "scaled", false);
  REQUIRE(gram_rank(chans) == r0);
}

TEST_CASE("haar_random_unitary properties", "[channel]") {
  CMat u = haar_random_unitary(2, 42);
  REQUIRE((u.adjoint() * u - CMat::Identity(4, 4)).norm() <= 1e-12);
  CMat u2 = haar_random_unitary(2, 42);
  REQUIRE((u - u2).cwiseAbs().maxCoeff() == 0.0);

  // First Haar moment of |tr U|^2 is 1.
  RngStream rng(123, 1);
  double acc = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    CMat v = haar_random_unitary(1, rng);
    acc += std::norm(v.trace());
  }
  REQUIRE(std::abs(acc / n - 1.0) < 0.05);
}

TEST_CASE("kraus round trip", "[channel]") {
  auto c = random_cptp(2, 3, 99);
  auto ks = c.kraus_operators();
  REQUIRE((choi_from_kraus(ks) - c.choi()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("superoperator round trip", "[channel]") {
  auto c = random_cptp(2, 3, 100);
  auto rt = QuantumChannel::from_superoperator(2, c.superoperator(),
                                               ChannelKind::cptp);
  REQUIRE((rt.choi() - c.choi()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("density matrix validation", "[channel]") {
  CMat bad(2, 2);
  bad << 1.5, 0, 0, -0.5;
  REQUIRE_THROWS_AS(DensityMatrix(bad), validation_error);
  REQUIRE_NOTHROW(DensityMatrix::maximally_mixed(4));
}
