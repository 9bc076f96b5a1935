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

// Scenario runner. Exit codes: 0 success, 1 computation error, 2 bad
// config or usage.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qlm/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qlm scenario runner"};
  app.set_version_flag("--version",
                       std::string(qlm::kToolName) + " " + qlm::kToolVersion);

  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;

  app.add_option("-c,--config", config_path, "Scenario config file (JSON)")
      ->required();
  app.add_option("-o,--out", out_path, "Output file (default: stdout)");
  app.add_option("-f,--format", format,
                 "Output format: json (report envelope) or csv (tabular "
                 "kinds only)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "Override the config's seed");
  app.add_option("--tolerance", tolerance,
                 "Override the scenario's numeric tolerance where one "
                 "applies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "config error: cannot open " << config_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string config_text = buf.str();

  nlohmann::json config;
  try {
    config = nlohmann::json::parse(config_text);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  qlm::ScenarioOptions options;
  if (seed) options.seed = *seed;
  if (tolerance) options.tolerance = *tolerance;

  qlm::ScenarioReport report;
  try {
    report = qlm::run_scenario(config, options);
  } catch (const qlm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::string text;
  if (format == "csv") {
    try {
      text = qlm::csv_text(report);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
  } else {
    text = qlm::report_envelope(report, config_text, qlm::iso8601_utc_now())
               .dump(2) +
           "\n";
  }

  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
    out << text;
  }
  return 0;
}
