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

#ifndef CIPEC_IO_HPP
#define CIPEC_IO_HPP

#include <string>

#include <json.hpp>

#include "cipec/channel.hpp"

namespace cipec {

struct NoiseSpec;

/// 64-bit FNV-1a content hash, hex encoded. Used to tag artifacts (noise
/// specs, bases, decompositions) for stale-input detection; not cryptographic.
std::string fnv1a_hex(const std::string& bytes);

/// Content hash of a matrix, canonicalized through the exact double bits.
std::string matrix_hash(const CMat& m);

/// Channel <-> JSON document {n_qubits, kind, label, choi_real, choi_imag}.
/// Round-trips are bit-faithful at double precision.
nlohmann::json channel_to_json(const QuantumChannel& c);
QuantumChannel channel_from_json(const nlohmann::json& j);

nlohmann::json noise_spec_to_json(const NoiseSpec& spec);
NoiseSpec noise_spec_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace cipec

#endif
