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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlm/serialization.hpp"

namespace qlm {

inline constexpr char kToolName[] = "qlm";
inline constexpr char kToolVersion[] = "0.1.0";

// One schema problem found while reading a scenario config.
struct ConfigIssue {
  std::string path;  // JSON pointer of the offending element
  std::string message;
};

// Invalid scenario configuration. Carries every issue found so a bad
// config is reported in one round. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

enum class ScenarioKind {
  LogicCheck,
  Sequential,
  Qqe,
  Rre,
  Profile,
  Gksl,
  OrderStability,
  Chsh,
  Sorkin,
  Spectrum,
};

std::string to_string(ScenarioKind kind);
// Throws ConfigError for an unknown name.
ScenarioKind scenario_kind_from_string(const std::string& name);

// Knobs the CLI may override on top of the config file.
struct ScenarioOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

struct ScenarioReport {
  ScenarioKind kind = ScenarioKind::LogicCheck;
  nlohmann::json result;
  // Set for kinds with a tabular form (sequential, gksl, order-stability);
  // empty otherwise.
  std::vector<std::string> csv_lines;
  std::uint64_t seed = 0;  // effective seed after overrides
};

// Validates the config and runs the scenario it describes.
// Throws ConfigError on schema problems and std::runtime_error on
// computation failures.
ScenarioReport run_scenario(const nlohmann::json& config,
                            const ScenarioOptions& options = {});

// Wraps a scenario result in the report envelope:
//   {"header": {"tool", "version", "config_digest", "timestamp", "seed"},
//    "kind": ..., "result": ..., "status": "ok"}
// config_digest is the FNV-1a 64 hash of the raw config bytes. The
// timestamp is injected by the caller so that report bytes are otherwise
// reproducible for a fixed config and seed.
nlohmann::json report_envelope(const ScenarioReport& report,
                               const std::string& config_text,
                               const std::string& timestamp);

// CSV rendering of a scenario report (trailing newline included).
// Throws std::runtime_error when the kind has no tabular form.
std::string csv_text(const ScenarioReport& report);

std::string iso8601_utc_now();

}  // namespace qlm
