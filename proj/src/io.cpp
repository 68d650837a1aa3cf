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

#include "cipec/io.hpp"

#include <cstring>
#include <fstream>

#include "cipec/noise.hpp"

namespace cipec {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string matrix_hash(const CMat& m) {
  std::string bytes;
  bytes.reserve(size_t(m.size()) * 16 + 16);
  auto push_double = [&bytes](double d) {
    char raw[8];
    std::memcpy(raw, &d, 8);
    bytes.append(raw, 8);
  };
  push_double(double(m.rows()));
  push_double(double(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      push_double(m(i, j).real());
      push_double(m(i, j).imag());
    }
  return fnv1a_hex(bytes);
}

nlohmann::json channel_to_json(const QuantumChannel& c) {
  nlohmann::json j;
  j["n_qubits"] = c.n_qubits();
  j["kind"] = to_string(c.kind());
  j["label"] = c.label();
  Eigen::Index n = c.choi().rows();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < n; ++i) {
    nlohmann::json rrow = nlohmann::json::array();
    nlohmann::json irow = nlohmann::json::array();
    for (Eigen::Index k = 0; k < n; ++k) {
      rrow.push_back(c.choi()(i, k).real());
      irow.push_back(c.choi()(i, k).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  j["choi_real"] = std::move(re);
  j["choi_imag"] = std::move(im);
  return j;
}

QuantumChannel channel_from_json(const nlohmann::json& j) {
  int n_qubits = j.at("n_qubits").get<int>();
  Eigen::Index n = Eigen::Index(1) << (2 * n_qubits);
  const auto& re = j.at("choi_real");
  const auto& im = j.at("choi_imag");
  if (Eigen::Index(re.size()) != n || Eigen::Index(im.size()) != n)
    throw validation_error("channel json: wrong choi dimensions");
  CMat choi(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      choi(i, k) = cplx(re[i][k].get<double>(), im[i][k].get<double>());
  return QuantumChannel(n_qubits, std::move(choi),
                        channel_kind_from_string(j.at("kind").get<std::string>()),
                        j.value("label", std::string{}));
}

nlohmann::json noise_spec_to_json(const NoiseSpec& spec) {
  nlohmann::json j;
  j["strength_1q"] = spec.strength_1q;
  j["strength_2q"] = spec.strength_2q;
  j["overrides"] = nlohmann::json::object();
  for (const auto& [k, v] : spec.overrides) j["overrides"][k] = v;
  return j;
}

NoiseSpec noise_spec_from_json(const nlohmann::json& j) {
  std::map<std::string, double> overrides;
  if (j.contains("overrides"))
    for (auto it = j["overrides"].begin(); it != j["overrides"].end(); ++it)
      overrides[it.key()] = it.value().get<double>();
  return NoiseSpec(j.at("strength_1q").get<double>(),
                   j.at("strength_2q").get<double>(), std::move(overrides));
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw validation_error("cannot open file: " + path);
  nlohmann::json j;
  f >> j;
  return j;
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream f(path);
  if (!f) throw validation_error("cannot write file: " + path);
  f << j.dump(1) << "\n";
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw validation_error("cannot write file: " + path);
  f << text;
}

}  // namespace cipec
