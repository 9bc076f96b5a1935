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

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "qlm/instruments.hpp"
#include "qlm/random.hpp"
#include "qlm/scenario.hpp"
#include "qlm/serialization.hpp"
#include "support.hpp"

TEST_SUITE_BEGIN("scenario");

using namespace qlm;
using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scenario_dir() { return QLM_SCENARIO_DIR; }

json load_scenario(const std::string& name, std::string* raw = nullptr) {
  const std::string text = read_file(scenario_dir() / (name + ".json"));
  if (raw != nullptr) *raw = text;
  return json::parse(text);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("every shipped scenario runs and reports ok") {
  std::set<std::string> names;
  for (const auto& entry :
       std::filesystem::directory_iterator(scenario_dir())) {
    if (entry.path().extension() == ".json") {
      names.insert(entry.path().stem().string());
    }
  }
  REQUIRE(names.size() == 13);
  CHECK(names.count("chsh_singlet") == 1);
  CHECK(names.count("gksl_amplitude_damping") == 1);
  CHECK(names.count("profile_record_family") == 1);
  CHECK(names.count("sorkin_three_slit") == 1);

  for (const auto& name : names) {
    CAPTURE(name);
    std::string raw;
    const json config = load_scenario(name, &raw);
    const ScenarioReport report = run_scenario(config);
    const json envelope =
        report_envelope(report, raw, "2026-01-01T00:00:00Z");

    CHECK(envelope.at("status") == "ok");
    CHECK(envelope.at("kind") == config.at("kind"));
    const json& header = envelope.at("header");
    CHECK(header.at("tool") == kToolName);
    CHECK(header.at("version") == kToolVersion);
    CHECK(header.at("timestamp") == "2026-01-01T00:00:00Z");
    const std::string digest = header.at("config_digest").get<std::string>();
    CHECK(digest == fnv1a64_hex(raw));
    CHECK(digest.size() == 16);
    CHECK(std::all_of(digest.begin(), digest.end(), [](unsigned char c) {
      return std::isxdigit(c) != 0 && std::isupper(c) == 0;
    }));
  }
}

TEST_CASE("reports are byte-stable for a fixed config, seed, and timestamp") {
  std::string raw;
  const json config = load_scenario("chsh_sampled", &raw);
  const std::string stamp = "2026-01-01T00:00:00Z";
  const std::string first =
      report_envelope(run_scenario(config), raw, stamp).dump(2);
  const std::string second =
      report_envelope(run_scenario(config), raw, stamp).dump(2);
  CHECK(first == second);
}

TEST_CASE("a seed override is recorded and steers the sampler") {
  const json config = load_scenario("chsh_sampled");
  REQUIRE(config.at("seed") == 42);

  const ScenarioReport base = run_scenario(config);
  CHECK(base.seed == 42);

  ScenarioOptions options;
  options.seed = 7;
  const ScenarioReport overridden = run_scenario(config, options);
  CHECK(overridden.seed == 7);

  const json envelope = report_envelope(overridden, "{}", "t");
  CHECK(envelope.at("header").at("seed") == 7);

  const double s_base = base.result.at("sampled").at("s").get<double>();
  const double s_new = overridden.result.at("sampled").at("s").get<double>();
  CHECK(s_base != s_new);
  // Both samplers still concentrate near the exact value.
  CHECK(std::abs(s_base - base.result.at("exact").at("s").get<double>()) <
        0.05);
  CHECK(std::abs(s_new - s_base) < 0.1);
}

TEST_CASE("a tolerance override reaches the checker") {
  const json config = load_scenario("logic_check_noncommuting");
  ScenarioOptions options;
  options.tolerance = 0.5;
  const ScenarioReport report = run_scenario(config, options);
  CHECK(report.result.at("tolerance") == 0.5);
}

TEST_CASE("schema problems are collected with JSON pointer paths") {
  const json config{{"kind", "gksl"}};
  try {
    run_scenario(config);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    std::set<std::string> paths;
    for (const auto& issue : e.issues()) paths.insert(issue.path);
    CHECK(paths.count("/hamiltonian") == 1);
    CHECK(paths.count("/t_end") == 1);
    CHECK(paths.count("/dt") == 1);
    CHECK(e.issues().size() >= 4);
    CHECK(std::string(e.what()).find("invalid scenario config") !=
          std::string::npos);
  }
}

TEST_CASE("config validation rejects malformed top levels") {
  CHECK_THROWS_AS(run_scenario(json::array()), ConfigError);
  CHECK_THROWS_AS(run_scenario(json{{"seed", 1}}), ConfigError);
  CHECK_THROWS_AS(run_scenario(json{{"kind", "mystery"}}), ConfigError);
  CHECK_THROWS_AS(run_scenario(json{{"kind", 3}}), ConfigError);

  json negative_seed = load_scenario("chsh_singlet");
  negative_seed["seed"] = -1;
  CHECK_THROWS_AS(run_scenario(negative_seed), ConfigError);
}

TEST_CASE("matrix and vector literals round-trip exactly") {
  std::mt19937_64 rng(17);
  const ComplexMatrix m = random_ginibre(3, 4, rng);
  const ComplexMatrix back = matrix_from_json(matrix_to_json(m), "/m");
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  CHECK(sup_norm(back - m) == 0.0);

  const ComplexVector v = random_pure_state(5, rng).amplitudes();
  const ComplexVector vback = vector_from_json(vector_to_json(v), "/v");
  REQUIRE(vback.size() == 5);
  CHECK((vback - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("literal parse errors carry the offending JSON pointer") {
  const json ragged = json::parse("[[[1,0],[0,0]],[[0,0]]]");
  CHECK_THROWS_WITH_AS(matrix_from_json(ragged, "/m"),
                       doctest::Contains("/m"), std::runtime_error);

  const json bad_pair = json::parse("[[1],[0,0]]");
  CHECK_THROWS_WITH_AS(vector_from_json(bad_pair, "/state"),
                       doctest::Contains("/state"), std::runtime_error);

  const json not_numbers = json::parse("[[[\"x\",0]]]");
  CHECK_THROWS_AS(matrix_from_json(not_numbers, "/m"), std::runtime_error);
}

TEST_CASE("instrument literals cover all three spellings") {
  const Projector p = qlm_test::ket_projector(qlm_test::ket(2, 0));

  const json projector_form{{"projector", matrix_to_json(p.matrix())}};
  const QuantumInstrument from_projector =
      instrument_from_json(projector_form, "/i");
  CHECK(instruments_equal(from_projector, yes_no_instrument(p)));

  const json observable_form{{"observable", matrix_to_json(pauli_z())}};
  const QuantumInstrument from_observable =
      instrument_from_json(observable_form, "/i");
  CHECK(instruments_equal(from_observable,
                          projection_instrument(HermitianObservable(
                              pauli_z()))));

  // Kraus spelling round-trips through the serializer.
  std::mt19937_64 rng(23);
  const QuantumInstrument indirect = indirect_instrument(
      DensityOperator::from_pure(qlm_test::basis_state(2, 0)),
      random_unitary(4, rng),
      {qlm_test::ket_projector(qlm_test::ket(2, 0)),
       qlm_test::ket_projector(qlm_test::ket(2, 1))});
  const QuantumInstrument back =
      instrument_from_json(instrument_to_json(indirect), "/i");
  CHECK(instruments_equal(back, indirect));
  CHECK(back.outcomes() == indirect.outcomes());

  CHECK_THROWS_WITH_AS(instrument_from_json(json::object(), "/i"),
                       doctest::Contains("/i"), std::runtime_error);
  const json lossy{{"outcomes", json::array({"x"})},
                   {"kraus", {{"x", json::array({matrix_to_json(
                                  0.5 * pauli_z())})}}}};
  CHECK_THROWS_AS(instrument_from_json(lossy, "/i"), std::runtime_error);
}

TEST_CASE("content hash matches the reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("{}").size() == 16);
  CHECK(fnv1a64("{}") != fnv1a64("{ }"));
}

TEST_CASE("sequential reports carry a labeled probability table") {
  const json config = load_scenario("sequential_zx");
  const ScenarioReport report = run_scenario(config);
  CHECK(report.result.at("total").get<double>() == doctest::Approx(1.0));

  const std::vector<std::string> lines =
      split_lines(csv_text(report));
  REQUIRE(lines.size() == 5);  // header + 2x2 outcome rows
  CHECK(lines[0] == "step_1,step_2,probability");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 2);
  }
}

TEST_CASE("entropy trajectories render with hump annotations") {
  const json config = load_scenario("gksl_amplitude_damping");
  const ScenarioReport report = run_scenario(config);
  const std::vector<std::string> lines = split_lines(csv_text(report));
  REQUIRE(lines.size() > 10);
  CHECK(lines[0] == "time,S_vonNeumann,S_linear");

  const auto has_line = [&](const std::string& needle) {
    return std::any_of(lines.begin(), lines.end(),
                       [&](const std::string& line) {
                         return line.find(needle) != std::string::npos;
                       });
  };
  CHECK(has_line("# hump_count=1"));
  CHECK(has_line("# peak time="));
  CHECK(has_line("# camel_shaped=true"));
  CHECK(report.result.at("humps").at("hump_count") == 1);
}

TEST_CASE("order stability reports compare global and local entropies") {
  const json config = load_scenario("order_stability_entangling");
  const ScenarioReport report = run_scenario(config);
  const std::vector<std::string> lines = split_lines(csv_text(report));
  CHECK(lines[0] ==
        "time,S_vonNeumann,S_linear,S_subsystem_1,S_subsystem_2");
  CHECK(lines.back() == "# order_stable=true");
  CHECK(report.result.at("order_stable") == true);

  const json unstable = load_scenario("order_stability_depolarizing");
  const ScenarioReport report2 = run_scenario(unstable);
  CHECK(report2.result.at("order_stable") == false);
  CHECK(report2.result.at("global_increase").get<double>() >= 0.1);
}

TEST_CASE("csv is refused for kinds without a tabular form") {
  const json config = load_scenario("chsh_singlet");
  const ScenarioReport report = run_scenario(config);
  CHECK_THROWS_WITH_AS(csv_text(report), doctest::Contains("csv"),
                       std::runtime_error);
}

TEST_CASE("clock strings are ISO 8601 UTC") {
  const std::string stamp = iso8601_utc_now();
  REQUIRE(stamp.size() == 20);
  CHECK(stamp[4] == '-');
  CHECK(stamp[7] == '-');
  CHECK(stamp[10] == 'T');
  CHECK(stamp[13] == ':');
  CHECK(stamp[16] == ':');
  CHECK(stamp.back() == 'Z');
  CHECK(stamp.substr(0, 2) == "20");
}

TEST_SUITE_END();
