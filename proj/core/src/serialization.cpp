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

#include "qlm/serialization.hpp"

#include <cstdio>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qlm {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw std::runtime_error(path + ": " + message);
}

Complex entry_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    fail(path, "expected a [re, im] pair of numbers");
  }
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    fail(path, "entry is not finite");
  }
  return z;
}

nlohmann::json entry_to_json(const Complex& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(entry_to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j,
                               const std::string& path) {
  if (!j.is_array() || j.empty()) {
    fail(path, "expected a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) {
    fail(path + "/0", "expected a non-empty row array");
  }
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows),
                  static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = path + "/" + std::to_string(i);
    if (!j[i].is_array()) fail(row_path, "expected a row array");
    if (j[i].size() != cols) {
      fail(row_path, "row length " + std::to_string(j[i].size()) +
                         " differs from first row length " +
                         std::to_string(cols));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          entry_from_json(j[i][k], row_path + "/" + std::to_string(k));
    }
  }
  return m;
}

nlohmann::json vector_to_json(const ComplexVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(entry_to_json(v(i)));
  }
  return out;
}

ComplexVector vector_from_json(const nlohmann::json& j,
                               const std::string& path) {
  if (!j.is_array() || j.empty()) {
    fail(path, "expected a non-empty array of [re, im] pairs");
  }
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) =
        entry_from_json(j[i], path + "/" + std::to_string(i));
  }
  return v;
}

nlohmann::json instrument_to_json(const QuantumInstrument& instr) {
  nlohmann::json kraus = nlohmann::json::object();
  for (std::size_t i = 0; i < instr.outcomes().size(); ++i) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& k : instr.maps()[i].kraus()) {
      ops.push_back(matrix_to_json(k));
    }
    kraus[instr.outcomes()[i]] = std::move(ops);
  }
  return nlohmann::json{{"outcomes", instr.outcomes()},
                        {"kraus", std::move(kraus)}};
}

QuantumInstrument instrument_from_json(const nlohmann::json& j,
                                       const std::string& path) {
  if (!j.is_object()) {
    fail(path, "expected an instrument object");
  }
  try {
    if (j.contains("observable")) {
      const ComplexMatrix m =
          matrix_from_json(j.at("observable"), path + "/observable");
      return projection_instrument(HermitianObservable(m));
    }
    if (j.contains("projector")) {
      const ComplexMatrix m =
          matrix_from_json(j.at("projector"), path + "/projector");
      return yes_no_instrument(Projector::validated(m));
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  if (!j.contains("outcomes") || !j.contains("kraus")) {
    fail(path,
         "expected one of the keys \"kraus\"+\"outcomes\", \"observable\", "
         "\"projector\"");
  }
  const nlohmann::json& outcomes_json = j.at("outcomes");
  if (!outcomes_json.is_array() || outcomes_json.empty()) {
    fail(path + "/outcomes", "expected a non-empty array of labels");
  }
  std::vector<std::string> outcomes;
  for (std::size_t i = 0; i < outcomes_json.size(); ++i) {
    if (!outcomes_json[i].is_string()) {
      fail(path + "/outcomes/" + std::to_string(i), "expected a string label");
    }
    outcomes.push_back(outcomes_json[i].get<std::string>());
  }
  const nlohmann::json& kraus_json = j.at("kraus");
  if (!kraus_json.is_object()) {
    fail(path + "/kraus", "expected an object keyed by outcome label");
  }
  std::vector<Superoperator> maps;
  for (const auto& label : outcomes) {
    if (!kraus_json.contains(label)) {
      fail(path + "/kraus", "missing Kraus list for outcome \"" + label + "\"");
    }
    const nlohmann::json& ops_json = kraus_json.at(label);
    const std::string ops_path = path + "/kraus/" + label;
    if (!ops_json.is_array() || ops_json.empty()) {
      fail(ops_path, "expected a non-empty array of matrices");
    }
    std::vector<ComplexMatrix> ops;
    for (std::size_t i = 0; i < ops_json.size(); ++i) {
      ops.push_back(
          matrix_from_json(ops_json[i], ops_path + "/" + std::to_string(i)));
    }
    try {
      maps.emplace_back(Superoperator(std::move(ops)));
    } catch (const std::invalid_argument& e) {
      fail(ops_path, e.what());
    }
  }
  if (kraus_json.size() != outcomes.size()) {
    fail(path + "/kraus", "has entries for labels not listed in outcomes");
  }
  try {
    return QuantumInstrument::validated(std::move(outcomes), std::move(maps));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

void to_json(nlohmann::json& j, const DistributivityViolation& v) {
  j = nlohmann::json{
      {"x", v.x}, {"y", v.y}, {"z", v.z}, {"deviation", v.deviation}};
}

namespace {

std::vector<double> to_std(const RealVector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

void to_json(nlohmann::json& j, const SpectrumAdditivityReport& r) {
  j = nlohmann::json{{"spec_a", to_std(r.spec_a)},
                     {"spec_b", to_std(r.spec_b)},
                     {"spec_sum", to_std(r.spec_sum)},
                     {"pairwise_sums", r.pairwise_sums},
                     {"commuting", r.commuting},
                     {"additive", r.additive}};
}

void to_json(nlohmann::json& j, const RepeatCheck& c) {
  j = nlohmann::json{{"holds", c.holds},
                     {"min_repeat", c.min_repeat},
                     {"worst_path", c.worst_path}};
}

void to_json(nlohmann::json& j, const RreReport& r) {
  j = nlohmann::json{
      {"aa", r.aa}, {"aba", r.aba}, {"bab", r.bab}, {"rre_holds", r.rre_holds}};
}

void to_json(nlohmann::json& j, const EffectProfile& p) {
  j = nlohmann::json{{"qoe_gap", p.qoe_gap},
                     {"qoe_present", p.qoe_present},
                     {"rre", p.rre},
                     {"qq_residual", p.qq_residual},
                     {"qq_within_tolerance", p.qq_within_tolerance},
                     {"pass", p.pass}};
}

void to_json(nlohmann::json& j, const RecordFamilyParams& p) {
  j = nlohmann::json{{"theta_a", p.theta_a}, {"theta_b", p.theta_b}};
}

void to_json(nlohmann::json& j, const HumpPeak& p) {
  j = nlohmann::json{{"time", p.time},         {"height", p.height},
                     {"rise", p.rise},         {"fall", p.fall},
                     {"rise_start", p.rise_start}, {"fall_end", p.fall_end}};
}

void to_json(nlohmann::json& j, const HumpReport& r) {
  j = nlohmann::json{{"hump_count", r.hump_count},
                     {"peaks", r.peaks},
                     {"camel_shaped", r.camel_shaped}};
}

void to_json(nlohmann::json& j, const OrderStabilityReport& r) {
  j = nlohmann::json{{"times", r.times},
                     {"s_global", r.s_global},
                     {"s_linear", r.s_linear},
                     {"s_first", r.s_first},
                     {"s_second", r.s_second},
                     {"global_increase", r.global_increase},
                     {"max_subsystem_increase", r.max_subsystem_increase},
                     {"order_stable", r.order_stable}};
}

void to_json(nlohmann::json& j, const ChshReport& r) {
  j = nlohmann::json{{"e11", r.e11},
                     {"e12", r.e12},
                     {"e21", r.e21},
                     {"e22", r.e22},
                     {"s", r.s},
                     {"sampled", r.sampled},
                     {"trials", r.trials},
                     {"classical_bound", kClassicalBound},
                     {"tsirelson_bound", kTsirelsonBound}};
}

nlohmann::json sequential_to_json(const SequentialDistribution& dist) {
  nlohmann::json entries = nlohmann::json::array();
  const auto& steps = dist.step_outcomes();
  std::vector<std::size_t> idx(steps.size(), 0);
  for (std::size_t flat = 0; flat < dist.probs().size(); ++flat) {
    std::vector<std::string> labels;
    labels.reserve(steps.size());
    for (std::size_t s = 0; s < steps.size(); ++s) {
      labels.push_back(steps[s][idx[s]]);
    }
    entries.push_back(nlohmann::json{{"outcomes", labels},
                                     {"probability", dist.probs()[flat]}});
    // Advance the mixed-radix index, last step fastest.
    for (std::size_t s = steps.size(); s-- > 0;) {
      if (++idx[s] < steps[s].size()) break;
      idx[s] = 0;
    }
  }
  return nlohmann::json{{"steps", steps},
                        {"probabilities", dist.probs()},
                        {"entries", std::move(entries)},
                        {"total", dist.total()}};
}

nlohmann::json trajectory_to_json(const Trajectory& traj) {
  return nlohmann::json{
      {"times", traj.times},
      {"s_von_neumann", traj.s_von_neumann},
      {"s_linear", traj.s_linear},
      {"clip_events", traj.clip_events},
      {"max_trace_drift", traj.max_trace_drift},
      {"final_state", matrix_to_json(traj.states.back().matrix())}};
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const char c : bytes) {
    hash ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return std::string(buf);
}

}  // namespace qlm
