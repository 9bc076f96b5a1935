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

#include "qlm/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <optional>
#include <sstream>
#include <utility>

namespace qlm {

namespace {

std::string render_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream out;
  out << "invalid scenario config (" << issues.size() << " issue"
      << (issues.size() == 1 ? "" : "s") << ")";
  for (const auto& issue : issues) {
    out << "\n  ";
    if (!issue.path.empty()) out << issue.path << ": ";
    out << issue.message;
  }
  return out.str();
}

[[noreturn]] void throw_config(std::string path, std::string message) {
  std::vector<ConfigIssue> issues;
  issues.push_back({std::move(path), std::move(message)});
  throw ConfigError(std::move(issues));
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(render_issues(issues)), issues_(std::move(issues)) {}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::LogicCheck:
      return "logic-check";
    case ScenarioKind::Sequential:
      return "sequential";
    case ScenarioKind::Qqe:
      return "qqe";
    case ScenarioKind::Rre:
      return "rre";
    case ScenarioKind::Profile:
      return "profile";
    case ScenarioKind::Gksl:
      return "gksl";
    case ScenarioKind::OrderStability:
      return "order-stability";
    case ScenarioKind::Chsh:
      return "chsh";
    case ScenarioKind::Sorkin:
      return "sorkin";
    case ScenarioKind::Spectrum:
      return "spectrum";
  }
  throw std::logic_error("to_string: unknown scenario kind");
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  static const std::pair<const char*, ScenarioKind> table[] = {
      {"logic-check", ScenarioKind::LogicCheck},
      {"sequential", ScenarioKind::Sequential},
      {"qqe", ScenarioKind::Qqe},
      {"rre", ScenarioKind::Rre},
      {"profile", ScenarioKind::Profile},
      {"gksl", ScenarioKind::Gksl},
      {"order-stability", ScenarioKind::OrderStability},
      {"chsh", ScenarioKind::Chsh},
      {"sorkin", ScenarioKind::Sorkin},
      {"spectrum", ScenarioKind::Spectrum},
  };
  for (const auto& [key, kind] : table) {
    if (name == key) return kind;
  }
  throw_config("/kind", "unknown scenario kind \"" + name +
                            "\"; expected one of logic-check, sequential, "
                            "qqe, rre, profile, gksl, order-stability, "
                            "chsh, sorkin, spectrum");
}

namespace {

struct Issues {
  std::vector<ConfigIssue> list;

  void add(std::string path, std::string message) {
    list.push_back({std::move(path), std::move(message)});
  }
  // Records an already path-prefixed message (from the literal parsers).
  void add_raw(std::string message) { list.push_back({"", std::move(message)}); }
  void raise_if_any() const {
    if (!list.empty()) throw ConfigError(list);
  }
};

const nlohmann::json* find(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const nlohmann::json* require_key(const nlohmann::json& obj,
                                  const std::string& base, const char* key,
                                  Issues& issues) {
  const auto* p = find(obj, key);
  if (p == nullptr) issues.add(base + "/" + key, "required key is missing");
  return p;
}

double require_number(const nlohmann::json& obj, const std::string& base,
                      const char* key, Issues& issues) {
  const auto* p = require_key(obj, base, key, issues);
  if (p == nullptr) return 0.0;
  if (!p->is_number()) {
    issues.add(base + "/" + key, "expected a number");
    return 0.0;
  }
  return p->get<double>();
}

double optional_number(const nlohmann::json& obj, const std::string& base,
                       const char* key, double fallback, Issues& issues) {
  const auto* p = find(obj, key);
  if (p == nullptr) return fallback;
  if (!p->is_number()) {
    issues.add(base + "/" + key, "expected a number");
    return fallback;
  }
  return p->get<double>();
}

bool optional_bool(const nlohmann::json& obj, const std::string& base,
                   const char* key, bool fallback, Issues& issues) {
  const auto* p = find(obj, key);
  if (p == nullptr) return fallback;
  if (!p->is_boolean()) {
    issues.add(base + "/" + key, "expected a boolean");
    return fallback;
  }
  return p->get<bool>();
}

std::uint64_t optional_uint(const nlohmann::json& obj, const std::string& base,
                            const char* key, std::uint64_t fallback,
                            Issues& issues) {
  const auto* p = find(obj, key);
  if (p == nullptr) return fallback;
  if (!p->is_number_unsigned()) {
    issues.add(base + "/" + key, "expected a non-negative integer");
    return fallback;
  }
  return p->get<std::uint64_t>();
}

Eigen::Index require_dimension(const nlohmann::json& obj,
                               const std::string& base, const char* key,
                               Issues& issues) {
  const auto* p = require_key(obj, base, key, issues);
  if (p == nullptr) return 1;
  if (!p->is_number_unsigned() || p->get<std::uint64_t>() < 1) {
    issues.add(base + "/" + key, "expected a positive integer");
    return 1;
  }
  return static_cast<Eigen::Index>(p->get<std::uint64_t>());
}

struct ParsedState {
  DensityOperator density = DensityOperator::unchecked(ComplexMatrix());
  std::optional<StateVector> pure;
};

// Reads "state" (vector literal, pure) or "density" (matrix literal).
std::optional<ParsedState> parse_state(const nlohmann::json& obj,
                                       const std::string& base, Issues& issues,
                                       bool required) {
  const auto* sv = find(obj, "state");
  const auto* dm = find(obj, "density");
  if (sv != nullptr && dm != nullptr) {
    issues.add(base.empty() ? "/" : base,
               "give exactly one of \"state\" and \"density\"");
    return std::nullopt;
  }
  if (sv == nullptr && dm == nullptr) {
    if (required) {
      issues.add(base.empty() ? "/" : base,
                 "missing state: give \"state\" (vector literal) or "
                 "\"density\" (matrix literal)");
    }
    return std::nullopt;
  }
  try {
    if (sv != nullptr) {
      ParsedState out;
      out.pure = StateVector(vector_from_json(*sv, base + "/state"));
      out.density = DensityOperator::from_pure(*out.pure);
      return out;
    }
    ParsedState out;
    out.density =
        DensityOperator::validated(matrix_from_json(*dm, base + "/density"));
    return out;
  } catch (const std::runtime_error& e) {
    issues.add_raw(e.what());
    return std::nullopt;
  }
}

std::optional<QuantumInstrument> parse_instrument(const nlohmann::json& obj,
                                                  const std::string& base,
                                                  const char* key,
                                                  Issues& issues) {
  const auto* p = require_key(obj, base, key, issues);
  if (p == nullptr) return std::nullopt;
  try {
    return instrument_from_json(*p, base + "/" + key);
  } catch (const std::runtime_error& e) {
    issues.add_raw(e.what());
    return std::nullopt;
  }
}

std::optional<ComplexMatrix> parse_matrix(const nlohmann::json& obj,
                                          const std::string& base,
                                          const char* key, Issues& issues) {
  const auto* p = require_key(obj, base, key, issues);
  if (p == nullptr) return std::nullopt;
  try {
    return matrix_from_json(*p, base + "/" + key);
  } catch (const std::runtime_error& e) {
    issues.add_raw(e.what());
    return std::nullopt;
  }
}

std::vector<ComplexMatrix> parse_jump_list(const nlohmann::json& obj,
                                           Issues& issues) {
  std::vector<ComplexMatrix> jumps;
  const auto* p = find(obj, "jumps");
  if (p == nullptr) return jumps;
  if (!p->is_array()) {
    issues.add("/jumps", "expected an array of matrices");
    return jumps;
  }
  for (std::size_t i = 0; i < p->size(); ++i) {
    try {
      jumps.push_back(
          matrix_from_json((*p)[i], "/jumps/" + std::to_string(i)));
    } catch (const std::runtime_error& e) {
      issues.add_raw(e.what());
    }
  }
  return jumps;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

const char* bool_word(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// logic-check

ScenarioReport run_logic_check(const nlohmann::json& cfg,
                               const ScenarioOptions& opt) {
  Issues issues;
  const double tol = opt.tolerance.value_or(
      optional_number(cfg, "", "tolerance", 1e-8, issues));
  std::vector<Projector> p;
  const auto* projs = require_key(cfg, "", "projectors", issues);
  if (projs != nullptr) {
    if (!projs->is_array() || projs->size() != 3) {
      issues.add("/projectors", "expected an array of exactly 3 matrices");
    } else {
      for (std::size_t i = 0; i < 3; ++i) {
        const std::string path = "/projectors/" + std::to_string(i);
        try {
          p.push_back(
              Projector::validated(matrix_from_json((*projs)[i], path)));
        } catch (const std::invalid_argument& e) {
          issues.add(path, e.what());
        } catch (const std::runtime_error& e) {
          issues.add_raw(e.what());
        }
      }
    }
  }
  std::optional<StateVector> psi;
  const auto* sv = find(cfg, "state");
  if (sv != nullptr) {
    try {
      psi = StateVector(vector_from_json(*sv, "/state"));
    } catch (const std::runtime_error& e) {
      issues.add_raw(e.what());
    }
  }
  if (p.size() == 3 &&
      (p[0].dim() != p[1].dim() || p[0].dim() != p[2].dim())) {
    issues.add("/projectors", "projector dimensions differ");
  }
  if (p.size() == 3 && psi && psi->dim() != p[0].dim()) {
    issues.add("/state", "state dimension differs from the projectors");
  }
  issues.raise_if_any();

  const auto violations = distributivity_violations(p[0], p[1], p[2], tol);
  nlohmann::json shown = nlohmann::json::array();
  for (std::size_t i = 0; i < violations.size() && i < 10; ++i) {
    shown.push_back(violations[i]);
  }
  const bool pq = commute(p[0], p[1]);
  const bool pr = commute(p[0], p[2]);
  const bool qr = commute(p[1], p[2]);
  nlohmann::json result{
      {"dim", p[0].dim()},
      {"tolerance", tol},
      {"commuting", {{"PQ", pq}, {"PR", pr}, {"QR", qr}}},
      {"pairwise_commuting", pq && pr && qr},
      {"distributive", violations.empty()},
      {"violation_count", violations.size()},
      {"violations", std::move(shown)},
      {"meet_rank_pq", meet(p[0], p[1]).rank()},
      {"join_rank_pq", join(p[0], p[1]).rank()},
  };
  if (psi) {
    result["state_distributive"] = state_distributivity(p[0], p[1], *psi, tol);
  }
  ScenarioReport report;
  report.kind = ScenarioKind::LogicCheck;
  report.result = std::move(result);
  return report;
}

// ---------------------------------------------------------------------------
// sequential

ScenarioReport run_sequential(const nlohmann::json& cfg,
                              const ScenarioOptions&) {
  Issues issues;
  std::vector<QuantumInstrument> instruments;
  const auto* list = require_key(cfg, "", "instruments", issues);
  if (list != nullptr) {
    if (!list->is_array() || list->empty()) {
      issues.add("/instruments", "expected a non-empty array of instruments");
    } else {
      for (std::size_t i = 0; i < list->size(); ++i) {
        try {
          instruments.push_back(instrument_from_json(
              (*list)[i], "/instruments/" + std::to_string(i)));
        } catch (const std::runtime_error& e) {
          issues.add_raw(e.what());
        }
      }
    }
  }
  const auto state = parse_state(cfg, "", issues, /*required=*/true);
  if (state && !instruments.empty()) {
    for (std::size_t i = 0; i < instruments.size(); ++i) {
      if (instruments[i].dim() != state->density.dim()) {
        issues.add("/instruments/" + std::to_string(i),
                   "instrument dimension differs from the state");
      }
    }
  }
  issues.raise_if_any();

  const SequentialDistribution dist =
      sequential_distribution(instruments, state->density);
  const nlohmann::json table = sequential_to_json(dist);

  std::vector<std::string> csv;
  std::string header;
  for (std::size_t s = 0; s < dist.steps(); ++s) {
    header += "step_" + std::to_string(s + 1) + ",";
  }
  header += "probability";
  csv.push_back(std::move(header));
  for (const auto& entry : table.at("entries")) {
    std::string row;
    for (const auto& label : entry.at("outcomes")) {
      row += label.get<std::string>() + ",";
    }
    row += fmt(entry.at("probability").get<double>());
    csv.push_back(std::move(row));
  }

  ScenarioReport report;
  report.kind = ScenarioKind::Sequential;
  report.result = table;
  report.csv_lines = std::move(csv);
  return report;
}

// ---------------------------------------------------------------------------
// qqe / rre

struct EffectPairInputs {
  QuantumInstrument a;
  QuantumInstrument b;
  DensityOperator rho;
};

EffectPairInputs parse_effect_pair(const nlohmann::json& cfg) {
  Issues issues;
  auto a = parse_instrument(cfg, "", "instrument_a", issues);
  auto b = parse_instrument(cfg, "", "instrument_b", issues);
  const auto state = parse_state(cfg, "", issues, /*required=*/true);
  if (a && b && a->dim() != b->dim()) {
    issues.add("/instrument_b", "instrument dimensions differ");
  }
  if (a && state && a->dim() != state->density.dim()) {
    issues.add("/instrument_a", "instrument dimension differs from the state");
  }
  issues.raise_if_any();
  return EffectPairInputs{std::move(*a), std::move(*b), state->density};
}

ScenarioReport run_qqe(const nlohmann::json& cfg, const ScenarioOptions&) {
  EffectPairInputs in = parse_effect_pair(cfg);
  const double residual = qq_residual(in.a, in.b, in.rho);
  const double gap = qoe_gap(in.a, in.b, in.rho);
  const auto ab = sequential_distribution({in.a, in.b}, in.rho);
  const auto ba = sequential_distribution({in.b, in.a}, in.rho);
  ScenarioReport report;
  report.kind = ScenarioKind::Qqe;
  report.result = nlohmann::json{{"qq_residual", residual},
                                 {"qoe_gap", gap},
                                 {"order_ab", sequential_to_json(ab)},
                                 {"order_ba", sequential_to_json(ba)}};
  return report;
}

ScenarioReport run_rre(const nlohmann::json& cfg, const ScenarioOptions&) {
  EffectPairInputs in = parse_effect_pair(cfg);
  const RreReport rre = rre_report(in.a, in.b, in.rho);
  const double gap = qoe_gap(in.a, in.b, in.rho);
  ScenarioReport report;
  report.kind = ScenarioKind::Rre;
  report.result = nlohmann::json{{"rre", rre}, {"qoe_gap", gap}};
  return report;
}

// ---------------------------------------------------------------------------
// profile

std::optional<RecordFamilyParams> parse_params(const nlohmann::json& cfg,
                                               Issues& issues) {
  const auto* p = find(cfg, "params");
  if (p == nullptr) return std::nullopt;
  RecordFamilyParams params;
  if (!p->is_object()) {
    issues.add("/params", "expected an object with theta_a and theta_b");
    return std::nullopt;
  }
  const auto read_angles = [&](const char* key, std::array<double, 4>& out) {
    const auto* arr = require_key(*p, "/params", key, issues);
    if (arr == nullptr) return;
    if (!arr->is_array() || arr->size() != 4) {
      issues.add(std::string("/params/") + key,
                 "expected an array of 4 numbers");
      return;
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (!(*arr)[i].is_number()) {
        issues.add(std::string("/params/") + key + "/" + std::to_string(i),
                   "expected a number");
        return;
      }
      out[i] = (*arr)[i].get<double>();
    }
  };
  read_angles("theta_a", params.theta_a);
  read_angles("theta_b", params.theta_b);
  return params;
}

EffectExpectations parse_expectations(const nlohmann::json& cfg,
                                      const ScenarioOptions& opt,
                                      Issues& issues) {
  EffectExpectations expect;
  const auto* e = find(cfg, "expectations");
  if (e != nullptr) {
    if (!e->is_object()) {
      issues.add("/expectations", "expected an object");
    } else {
      expect.expect_qoe =
          optional_bool(*e, "/expectations", "expect_qoe", true, issues);
      expect.qoe_min_gap = optional_number(*e, "/expectations", "qoe_min_gap",
                                           expect.qoe_min_gap, issues);
      expect.expect_rre =
          optional_bool(*e, "/expectations", "expect_rre", true, issues);
      expect.qq_tolerance = optional_number(*e, "/expectations", "qq_tolerance",
                                            expect.qq_tolerance, issues);
    }
  }
  if (opt.tolerance) expect.qq_tolerance = *opt.tolerance;
  return expect;
}

ScenarioReport run_profile(const nlohmann::json& cfg,
                           const ScenarioOptions& opt) {
  Issues issues;
  const bool search = optional_bool(cfg, "", "search", false, issues);
  const auto params = parse_params(cfg, issues);
  const EffectExpectations expect = parse_expectations(cfg, opt, issues);
  auto state = parse_state(cfg, "", issues, /*required=*/false);
  DensityOperator rho =
      state ? state->density
            : DensityOperator::from_pure(record_family_reference_state());
  if (rho.dim() != 4) {
    issues.add("/state", "the record-update family acts on dimension 4");
  }
  issues.raise_if_any();

  ScenarioReport report;
  report.kind = ScenarioKind::Profile;
  if (search) {
    const FamilySearchResult found = search_effect_profile_params(rho, expect);
    report.result = nlohmann::json{{"search", true},
                                   {"found", found.found},
                                   {"params", found.params},
                                   {"profile", found.profile}};
    return report;
  }
  const RecordFamilyParams used =
      params ? *params : record_family_reference_params();
  const auto [a, b] = record_update_instruments(used);
  const EffectProfile profile = verify_effect_profile(a, b, rho, expect);
  report.result = nlohmann::json{
      {"search", false}, {"params", used}, {"profile", profile}};
  return report;
}

// ---------------------------------------------------------------------------
// gksl / order-stability

std::vector<std::string> trajectory_csv(const std::vector<double>& times,
                                        const std::string& header,
                                        const std::vector<const std::vector<double>*>& cols) {
  std::vector<std::string> csv;
  csv.push_back(header);
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::string row = fmt(times[i]);
    for (const auto* col : cols) {
      row += "," + fmt((*col)[i]);
    }
    csv.push_back(std::move(row));
  }
  return csv;
}

ScenarioReport run_gksl(const nlohmann::json& cfg, const ScenarioOptions&) {
  Issues issues;
  const auto h = parse_matrix(cfg, "", "hamiltonian", issues);
  const auto jumps = parse_jump_list(cfg, issues);
  const auto state = parse_state(cfg, "", issues, /*required=*/true);
  const double t_end = require_number(cfg, "", "t_end", issues);
  const double dt = require_number(cfg, "", "dt", issues);
  if (t_end <= 0.0) issues.add("/t_end", "expected a positive number");
  if (dt <= 0.0) issues.add("/dt", "expected a positive number");
  int window = 5;
  {
    const double w = optional_number(cfg, "", "hump_window", 5, issues);
    if (w < 1 || w != std::floor(w)) {
      issues.add("/hump_window", "expected a positive integer");
    } else {
      window = static_cast<int>(w);
    }
  }
  const double noise_floor =
      optional_number(cfg, "", "noise_floor", 1e-6, issues);
  issues.raise_if_any();

  std::optional<GkslGenerator> gen;
  try {
    gen.emplace(*h, jumps);
  } catch (const std::invalid_argument& e) {
    throw_config("/hamiltonian", e.what());
  }
  if (gen->dim() != state->density.dim()) {
    throw_config("/hamiltonian",
                 "generator dimension differs from the state");
  }

  const Trajectory traj = evolve(*gen, state->density, t_end, dt);
  const HumpReport humps = hump_profile(traj, window, noise_floor);
  nlohmann::json result = trajectory_to_json(traj);
  result["humps"] = humps;

  auto csv = trajectory_csv(traj.times, "time,S_vonNeumann,S_linear",
                            {&traj.s_von_neumann, &traj.s_linear});
  csv.push_back("# hump_count=" + std::to_string(humps.hump_count));
  for (const auto& peak : humps.peaks) {
    csv.push_back("# peak time=" + fmt(peak.time) + " height=" +
                  fmt(peak.height) + " rise=" + fmt(peak.rise) + " fall=" +
                  fmt(peak.fall));
  }
  csv.push_back(std::string("# camel_shaped=") + bool_word(humps.camel_shaped));

  ScenarioReport report;
  report.kind = ScenarioKind::Gksl;
  report.result = std::move(result);
  report.csv_lines = std::move(csv);
  return report;
}

ScenarioReport run_order_stability(const nlohmann::json& cfg,
                                   const ScenarioOptions&) {
  Issues issues;
  const auto h = parse_matrix(cfg, "", "hamiltonian", issues);
  const auto jumps = parse_jump_list(cfg, issues);
  const auto state = parse_state(cfg, "", issues, /*required=*/true);
  const Eigen::Index dim_a = require_dimension(cfg, "", "dim_a", issues);
  const Eigen::Index dim_b = require_dimension(cfg, "", "dim_b", issues);
  const double t_end = require_number(cfg, "", "t_end", issues);
  const double dt = require_number(cfg, "", "dt", issues);
  if (t_end <= 0.0) issues.add("/t_end", "expected a positive number");
  if (dt <= 0.0) issues.add("/dt", "expected a positive number");
  const double global_tol =
      optional_number(cfg, "", "global_tolerance", 1e-6, issues);
  const double subsystem_min =
      optional_number(cfg, "", "subsystem_min", 0.1, issues);
  issues.raise_if_any();

  std::optional<GkslGenerator> gen;
  try {
    gen.emplace(*h, jumps);
  } catch (const std::invalid_argument& e) {
    throw_config("/hamiltonian", e.what());
  }
  if (gen->dim() != state->density.dim()) {
    throw_config("/hamiltonian",
                 "generator dimension differs from the state");
  }
  if (dim_a * dim_b != gen->dim()) {
    throw_config("/dim_a", "dim_a * dim_b must equal the state dimension");
  }

  const OrderStabilityReport rep = order_stability_report(
      *gen, state->density, dim_a, dim_b, t_end, dt, global_tol, subsystem_min);

  auto csv = trajectory_csv(
      rep.times, "time,S_vonNeumann,S_linear,S_subsystem_1,S_subsystem_2",
      {&rep.s_global, &rep.s_linear, &rep.s_first, &rep.s_second});
  csv.push_back("# global_increase=" + fmt(rep.global_increase));
  csv.push_back("# max_subsystem_increase=" + fmt(rep.max_subsystem_increase));
  csv.push_back(std::string("# order_stable=") + bool_word(rep.order_stable));

  ScenarioReport report;
  report.kind = ScenarioKind::OrderStability;
  report.result = rep;
  report.csv_lines = std::move(csv);
  return report;
}

// ---------------------------------------------------------------------------
// chsh

ScenarioReport run_chsh(const nlohmann::json& cfg, const ScenarioOptions& opt,
                        std::uint64_t seed) {
  Issues issues;
  std::array<double, 4> angles{};
  const auto* arr = require_key(cfg, "", "angles", issues);
  if (arr != nullptr) {
    if (!arr->is_array() || arr->size() != 4) {
      issues.add("/angles", "expected an array [a1, a2, b1, b2] of 4 numbers");
    } else {
      for (std::size_t i = 0; i < 4; ++i) {
        if (!(*arr)[i].is_number()) {
          issues.add("/angles/" + std::to_string(i), "expected a number");
        } else {
          angles[i] = (*arr)[i].get<double>();
        }
      }
    }
  }
  const bool sampled = optional_bool(cfg, "", "sampled", false, issues);
  const std::uint64_t trials =
      optional_uint(cfg, "", "trials", 100000, issues);
  auto state = parse_state(cfg, "", issues, /*required=*/false);
  issues.raise_if_any();

  DensityOperator rho = [&] {
    if (state) return state->density;
    // Spin singlet (|01> - |10>)/sqrt(2).
    ComplexVector psi = ComplexVector::Zero(4);
    psi(1) = 1.0 / std::sqrt(2.0);
    psi(2) = -1.0 / std::sqrt(2.0);
    return DensityOperator::from_pure(StateVector(psi));
  }();
  if (rho.dim() != 4) {
    throw_config("/state", "chsh requires a two-qubit state (dim 4)");
  }

  const auto a1 = DichotomicObservable::validated(spin_observable(angles[0]));
  const auto a2 = DichotomicObservable::validated(spin_observable(angles[1]));
  const auto b1 = DichotomicObservable::validated(spin_observable(angles[2]));
  const auto b2 = DichotomicObservable::validated(spin_observable(angles[3]));

  const ChshReport exact = chsh(rho, a1, a2, b1, b2);
  nlohmann::json result{{"angles", angles},
                        {"exact", exact},
                        {"exceeds_classical", exact.s > kClassicalBound}};
  if (sampled) {
    if (trials == 0) throw_config("/trials", "expected at least 1");
    result["sampled"] = chsh_sampled(rho, a1, a2, b1, b2, trials, seed);
  }
  (void)opt;

  ScenarioReport report;
  report.kind = ScenarioKind::Chsh;
  report.result = std::move(result);
  return report;
}

// ---------------------------------------------------------------------------
// sorkin

ScenarioReport run_sorkin(const nlohmann::json& cfg, const ScenarioOptions&) {
  Issues issues;
  std::vector<Projector> slits;
  const auto* list = require_key(cfg, "", "slits", issues);
  if (list != nullptr) {
    if (!list->is_array() || list->size() != 3) {
      issues.add("/slits", "expected an array of exactly 3 matrices");
    } else {
      for (std::size_t i = 0; i < 3; ++i) {
        const std::string path = "/slits/" + std::to_string(i);
        try {
          slits.push_back(
              Projector::validated(matrix_from_json((*list)[i], path)));
        } catch (const std::invalid_argument& e) {
          issues.add(path, e.what());
        } catch (const std::runtime_error& e) {
          issues.add_raw(e.what());
        }
      }
    }
  }
  std::optional<Effect> detector;
  {
    const auto m = parse_matrix(cfg, "", "detector", issues);
    if (m) {
      try {
        detector = Effect::validated(*m);
      } catch (const std::invalid_argument& e) {
        issues.add("/detector", e.what());
      }
    }
  }
  std::optional<StateVector> source;
  {
    const auto* p = require_key(cfg, "", "source", issues);
    if (p != nullptr) {
      try {
        source = StateVector(vector_from_json(*p, "/source"));
      } catch (const std::runtime_error& e) {
        issues.add_raw(e.what());
      } catch (const std::invalid_argument& e) {
        issues.add("/source", e.what());
      }
    }
  }
  issues.raise_if_any();

  SlitConfiguration slit_cfg = [&] {
    try {
      return make_slit_configuration(std::move(slits), *detector, *source);
    } catch (const std::invalid_argument& e) {
      throw_config("", e.what());
    }
  }();

  nlohmann::json subsets = nlohmann::json::object();
  const std::vector<std::pair<std::string, std::vector<int>>> names = {
      {"1", {0}},      {"2", {1}},      {"3", {2}},     {"12", {0, 1}},
      {"13", {0, 2}},  {"23", {1, 2}},  {"123", {0, 1, 2}},
  };
  for (const auto& [name, subset] : names) {
    subsets[name] = subset_probability(slit_cfg, subset);
  }
  nlohmann::json result{
      {"i3", sorkin_residual(slit_cfg)},
      {"pairwise_interference",
       {{"12", two_slit_interference(slit_cfg, 0, 1)},
        {"13", two_slit_interference(slit_cfg, 0, 2)},
        {"23", two_slit_interference(slit_cfg, 1, 2)}}},
      {"subset_probabilities", std::move(subsets)},
  };

  ScenarioReport report;
  report.kind = ScenarioKind::Sorkin;
  report.result = std::move(result);
  return report;
}

// ---------------------------------------------------------------------------
// spectrum

ScenarioReport run_spectrum(const nlohmann::json& cfg,
                            const ScenarioOptions&) {
  Issues issues;
  const auto a = parse_matrix(cfg, "", "observable_a", issues);
  const auto b = parse_matrix(cfg, "", "observable_b", issues);
  if (a && b && (a->rows() != b->rows() || a->cols() != b->cols())) {
    issues.add("/observable_b", "observable dimensions differ");
  }
  issues.raise_if_any();

  const SpectrumAdditivityReport rep = [&] {
    try {
      return spectrum_additivity_report(*a, *b);
    } catch (const std::invalid_argument& e) {
      throw_config("", e.what());
    }
  }();

  ScenarioReport report;
  report.kind = ScenarioKind::Spectrum;
  report.result = rep;
  return report;
}

}  // namespace

ScenarioReport run_scenario(const nlohmann::json& config,
                            const ScenarioOptions& options) {
  if (!config.is_object()) {
    throw_config("", "top-level config must be a JSON object");
  }
  const auto* kind_json = find(config, "kind");
  if (kind_json == nullptr || !kind_json->is_string()) {
    throw_config("/kind", "required string key is missing");
  }
  const ScenarioKind kind =
      scenario_kind_from_string(kind_json->get<std::string>());

  Issues seed_issues;
  std::uint64_t seed = optional_uint(config, "", "seed", 0, seed_issues);
  seed_issues.raise_if_any();
  if (options.seed) seed = *options.seed;

  // Validation failures surfacing from the library (invalid_argument)
  // are bad input, hence config errors; runtime_error stays a
  // computation error.
  ScenarioReport report = [&] {
    try {
      switch (kind) {
        case ScenarioKind::LogicCheck:
          return run_logic_check(config, options);
        case ScenarioKind::Sequential:
          return run_sequential(config, options);
        case ScenarioKind::Qqe:
          return run_qqe(config, options);
        case ScenarioKind::Rre:
          return run_rre(config, options);
        case ScenarioKind::Profile:
          return run_profile(config, options);
        case ScenarioKind::Gksl:
          return run_gksl(config, options);
        case ScenarioKind::OrderStability:
          return run_order_stability(config, options);
        case ScenarioKind::Chsh:
          return run_chsh(config, options, seed);
        case ScenarioKind::Sorkin:
          return run_sorkin(config, options);
        case ScenarioKind::Spectrum:
          return run_spectrum(config, options);
      }
      throw std::logic_error("run_scenario: unknown scenario kind");
    } catch (const std::invalid_argument& e) {
      throw_config("", e.what());
    }
  }();
  report.seed = seed;
  return report;
}

nlohmann::json report_envelope(const ScenarioReport& report,
                               const std::string& config_text,
                               const std::string& timestamp) {
  return nlohmann::json{
      {"header",
       {{"tool", kToolName},
        {"version", kToolVersion},
        {"config_digest", fnv1a64_hex(config_text)},
        {"timestamp", timestamp},
        {"seed", report.seed}}},
      {"kind", to_string(report.kind)},
      {"result", report.result},
      {"status", "ok"},
  };
}

std::string csv_text(const ScenarioReport& report) {
  if (report.csv_lines.empty()) {
    throw std::runtime_error("csv format is not available for scenario kind \"" +
                             to_string(report.kind) +
                             "\"; use json");
  }
  std::string out;
  for (const auto& line : report.csv_lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return std::string(buf);
}

}  // namespace qlm
