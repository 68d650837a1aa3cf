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

#include "cipec/diamond.hpp"
#include "support/diamond_oracle.hpp"
#include "support/reference.hpp"

using namespace cipec;
using namespace cipec::testing;

static QuantumChannel depolarizing1(double p) {
  std::vector<CMat> ks = {std::sqrt(1.0 - 0.75 * p) * pauli_i(),
                          std::sqrt(p / 4.0) * pauli_x(),
                          std::sqrt(p / 4.0) * pauli_y(),
                          std::sqrt(p / 4.0) * pauli_z()};
  return QuantumChannel(1, choi_from_kraus(ks), ChannelKind::cptp, "dep");
}

TEST_CASE("diamond distance of a channel to itself is zero", "[diamond]") {
  auto c = random_cptp(1, 2, 3);
  REQUIRE(diamond_norm_hermitian(c.choi() - c.choi(), 2, 2) < 1e-8);
}

TEST_CASE("unitaries differing by a global phase have distance zero",
          "[diamond]") {
  CMat u = haar_random_unitary(2, 21);
  CMat v = std::polar(1.0, 1.234) * u;
  REQUIRE(unitary_diamond_distance(u, v) < 1e-12);
  REQUIRE(diamond_distance(choi_from_unitary(u), choi_from_unitary(v)) <
          1e-8);
}

TEST_CASE("unitary closed form agrees with SDP", "[diamond]") {
  for (int trial = 0; trial < 4; ++trial) {
    CMat u = haar_random_unitary(1, 300 + trial);
    CMat v = haar_random_unitary(1, 400 + trial);
    double exact = unitary_diamond_distance(u, v);
    double sdp = diamond_norm_hermitian(
        choi_from_unitary(u).choi() - choi_from_unitary(v).choi(), 2, 2);
    REQUIRE(std::abs(exact - sdp) < 1e-6);
  }
}

TEST_CASE("depolarizing vs identity matches brute-force oracle", "[diamond]") {
  auto dep = depolarizing1(0.01);
  auto id = identity_channel(1);
  CMat delta = dep.choi() - id.choi();
  double sdp = diamond_norm_hermitian(delta, 2, 2);
  double oracle = diamond_norm_bruteforce(delta, 2);
  REQUIRE(std::abs(sdp - oracle) < 1e-7);
}

TEST_CASE("SDP matches oracle on random single-qubit pairs", "[diamond]") {
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_cptp(1, 2, 500 + trial);
    auto b = random_cptp(1, 2, 600 + trial);
    CMat delta = a.choi() - b.choi();
    double sdp = diamond_norm_hermitian(delta, 2, 2);
    double oracle = diamond_norm_bruteforce(delta, 2);
    REQUIRE(std::abs(sdp - oracle) < 1e-4);
  }
}

TEST_CASE("SDP matches oracle on a two-qubit pair", "[diamond][slow]") {
  auto a = random_cptp(2, 2, 700);
  auto b = random_cptp(2, 3, 701);
  CMat delta = a.choi() - b.choi();
  double sdp = diamond_norm_hermitian(delta, 4, 4);
  double oracle = diamond_norm_bruteforce(delta, 4, 16, 80);
  REQUIRE(std::abs(sdp - oracle) < 1e-4);
}

TEST_CASE("diamond distance is a metric on random triples", "[diamond]") {
  auto a = random_cptp(1, 2, 801);
  auto b = random_cptp(1, 2, 802);
  auto c = random_cptp(1, 2, 803);
  double ab = diamond_distance(a, b);
  double ba = diamond_distance(b, a);
  double ac = diamond_distance(a, c);
  double cb = diamond_distance(c, b);
  REQUIRE(std::abs(ab - ba) < 1e-7);  // symmetry (same SDP up to sign of J)
  REQUIRE(ab <= ac + cb + 1e-8);      // triangle inequality
}

TEST_CASE("known phase gate distance", "[diamond]") {
  // ||T - I||_diamond for channels = 2 sin(pi/8).
  double d = unitary_diamond_distance(gate_t(), pauli_i());
  REQUIRE(std::abs(d - 2.0 * std::sin(0.39269908169872414)) < 1e-12);
}
