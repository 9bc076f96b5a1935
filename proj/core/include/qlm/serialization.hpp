// Copyright 2026 The qlm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qlm/contextuality.hpp"
#include "qlm/effects.hpp"
#include "qlm/hilbert.hpp"
#include "qlm/instruments.hpp"
#include "qlm/logic.hpp"
#include "qlm/open_systems.hpp"

namespace qlm {

// Matrix literal: row-major nested arrays of [re, im] pairs, e.g.
// [[[0,0],[1,0]],[[1,0],[0,0]]] is the 2x2 real matrix [[0,1],[1,0]].
// Vector literal: a flat array of [re, im] pairs.
//
// Parse errors throw std::runtime_error with a message that starts with
// the JSON pointer of the offending element (path argument plus suffix).

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j,
                               const std::string& path);

nlohmann::json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const nlohmann::json& j,
                               const std::string& path);

// Instrument literal, one of:
//   {"outcomes": [...], "kraus": {"<label>": [matrix, ...], ...}}
//   {"observable": matrix}   projective instrument of a Hermitian observable
//   {"projector": matrix}    yes/no instrument of a projector
nlohmann::json instrument_to_json(const QuantumInstrument& instr);
QuantumInstrument instrument_from_json(const nlohmann::json& j,
                                       const std::string& path);

// Report serialization. Field names match the struct members.
void to_json(nlohmann::json& j, const DistributivityViolation& v);
void to_json(nlohmann::json& j, const SpectrumAdditivityReport& r);
void to_json(nlohmann::json& j, const RepeatCheck& c);
void to_json(nlohmann::json& j, const RreReport& r);
void to_json(nlohmann::json& j, const EffectProfile& p);
void to_json(nlohmann::json& j, const RecordFamilyParams& p);
void to_json(nlohmann::json& j, const HumpPeak& p);
void to_json(nlohmann::json& j, const HumpReport& r);
void to_json(nlohmann::json& j, const OrderStabilityReport& r);
void to_json(nlohmann::json& j, const ChshReport& r);

nlohmann::json sequential_to_json(const SequentialDistribution& dist);
nlohmann::json trajectory_to_json(const Trajectory& traj);

// FNV-1a 64-bit content hash; hex form is 16 lowercase digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace qlm
