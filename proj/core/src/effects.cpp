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

#include "qlm/effects.hpp"

#include <cmath>
#include <stdexcept>

namespace qlm {

double qoe_gap(const QuantumInstrument& a, const QuantumInstrument& b,
               const DensityOperator& rho) {
  const SequentialDistribution ab = sequential_distribution({a, b}, rho);
  const SequentialDistribution ba = sequential_distribution({b, a}, rho);
  double gap = 0.0;
  for (std::size_t x = 0; x < a.outcomes().size(); ++x) {
    for (std::size_t y = 0; y < b.outcomes().size(); ++y) {
      gap = std::max(gap, std::abs(ab.prob({x, y}) - ba.prob({y, x})));
    }
  }
  return gap;
}

namespace {

// Conditional repeat check over a three-step (or two-step) sequence whose
// first and last instruments coincide: P(last = first | path) for every
// included path.
RepeatCheck repeat_check(const std::vector<QuantumInstrument>& sequence,
                         const DensityOperator& rho) {
  const SequentialDistribution joint = sequential_distribution(sequence, rho);
  const std::size_t steps = sequence.size();
  const SequentialDistribution context = joint.marginal(steps - 1);

  RepeatCheck check;
  const auto& first_labels = sequence.front().outcomes();
  const auto& last_labels = sequence.back().outcomes();

  std::vector<std::size_t> path(steps - 1, 0);
  bool done = false;
  while (!done) {
    const double p_path = context.prob(path);
    if (p_path > kEventThreshold) {
      // The repeated answer must match the first one by label.
      const std::string& first_answer = first_labels[path[0]];
      std::size_t repeat_idx = 0;
      bool label_found = false;
      for (std::size_t i = 0; i < last_labels.size(); ++i) {
        if (last_labels[i] == first_answer) {
          repeat_idx = i;
          label_found = true;
          break;
        }
      }
      double conditional = 0.0;
      if (label_found) {
        std::vector<std::size_t> full = path;
        full.push_back(repeat_idx);
        conditional = joint.prob(full) / p_path;
      }
      if (conditional < check.min_repeat) {
        check.min_repeat = conditional;
        check.worst_path.clear();
        for (std::size_t s = 0; s < path.size(); ++s) {
          check.worst_path.push_back(sequence[s].outcomes()[path[s]]);
        }
      }
      if (conditional < 1.0 - kRepeatTolerance) check.holds = false;
    }
    // Advance the mixed-radix path counter.
    done = true;
    for (std::size_t s = path.size(); s-- > 0;) {
      if (++path[s] < sequence[s].outcomes().size()) {
        done = false;
        break;
      }
      path[s] = 0;
    }
  }
  return check;
}

}  // namespace

RreReport rre_report(const QuantumInstrument& a, const QuantumInstrument& b,
                     const DensityOperator& rho) {
  RreReport report;
  report.aa = repeat_check({a, a}, rho);
  report.aba = repeat_check({a, b, a}, rho);
  report.bab = repeat_check({b, a, b}, rho);
  report.rre_holds =
      report.aa.holds && report.aba.holds && report.bab.holds;
  return report;
}

double qq_residual(const QuantumInstrument& a, const QuantumInstrument& b,
                   const DensityOperator& rho) {
  for (const QuantumInstrument* instr : {&a, &b}) {
    const auto& labels = instr->outcomes();
    const bool yes_no =
        labels.size() == 2 &&
        ((labels[0] == "yes" && labels[1] == "no") ||
         (labels[0] == "no" && labels[1] == "yes"));
    if (!yes_no) {
      throw std::invalid_argument(
          "qq_residual: instruments must have outcome labels {yes, no}");
    }
  }
  const SequentialDistribution ab = sequential_distribution({a, b}, rho);
  const SequentialDistribution ba = sequential_distribution({b, a}, rho);
  const std::vector<std::string> yes_no = {"yes", "no"};
  const std::vector<std::string> no_yes = {"no", "yes"};
  return ab.prob(yes_no) + ab.prob(no_yes) - ba.prob(yes_no) -
         ba.prob(no_yes);
}

EffectProfile verify_effect_profile(const QuantumInstrument& a,
                                    const QuantumInstrument& b,
                                    const DensityOperator& rho,
                                    const EffectExpectations& expect) {
  for (const QuantumInstrument* instr : {&a, &b}) {
    if (instr->outcomes().size() != 2) {
      throw std::invalid_argument(
          "verify_effect_profile: instruments must have exactly two "
          "outcomes");
    }
  }
  EffectProfile profile;
  profile.qoe_gap = qoe_gap(a, b, rho);
  profile.qoe_present = profile.qoe_gap > expect.qoe_min_gap;
  profile.rre = rre_report(a, b, rho);
  profile.qq_residual = qq_residual(a, b, rho);
  profile.qq_within_tolerance =
      std::abs(profile.qq_residual) <= expect.qq_tolerance;
  profile.pass = profile.qq_within_tolerance &&
                 (profile.qoe_present == expect.expect_qoe) &&
                 (profile.rre.rre_holds == expect.expect_rre);
  return profile;
}

namespace {

// Composite basis |a, b> with index 2*a + b on C^4.
Eigen::Index record_index(Eigen::Index a, Eigen::Index b) { return 2 * a + b; }

// Kraus list for "answer x, then rewrite the partner record": amplitudes
// sqrt(T(to|from)) |x, to><x, from| for record A, mirrored for record B.
Superoperator record_map(Eigen::Index answer, const double theta[2],
                         bool first_register) {
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index from = 0; from < 2; ++from) {
    const double c = std::cos(theta[from]);
    const double s = std::sin(theta[from]);
    const double amp_to0 = c * c;
    const double amp_to1 = s * s;
    for (Eigen::Index to = 0; to < 2; ++to) {
      const double t = to == 0 ? amp_to0 : amp_to1;
      if (t < 1e-15) continue;
      ComplexMatrix k = ComplexMatrix::Zero(4, 4);
      if (first_register) {
        k(record_index(answer, to), record_index(answer, from)) =
            std::sqrt(t);
      } else {
        k(record_index(to, answer), record_index(from, answer)) =
            std::sqrt(t);
      }
      kraus.push_back(std::move(k));
    }
  }
  return Superoperator(std::move(kraus));
}

}  // namespace

std::pair<QuantumInstrument, QuantumInstrument> record_update_instruments(
    const RecordFamilyParams& params) {
  QuantumInstrument a = QuantumInstrument::validated(
      {"yes", "no"},
      {record_map(0, &params.theta_a[0], true),
       record_map(1, &params.theta_a[2], true)});
  QuantumInstrument b = QuantumInstrument::validated(
      {"yes", "no"},
      {record_map(0, &params.theta_b[0], false),
       record_map(1, &params.theta_b[2], false)});
  return {std::move(a), std::move(b)};
}

RecordFamilyParams record_family_reference_params() {
  // Answering "yes" to A rewrites record B to 0; answering "no" leaves it.
  // Answering "no" to B rewrites record A to 1; answering "yes" leaves it.
  const double h = std::acos(0.0);  // pi/2
  RecordFamilyParams params;
  params.theta_a = {0.0, 0.0, 0.0, h};
  params.theta_b = {0.0, h, h, h};
  return params;
}

StateVector record_family_reference_state() {
  ComplexVector amp = ComplexVector::Zero(4);
  amp(record_index(0, 1)) = 1.0;
  amp(record_index(1, 0)) = 1.0;
  return StateVector(amp);
}

FamilySearchResult search_effect_profile_params(
    const DensityOperator& rho, const EffectExpectations& expect) {
  if (rho.dim() != 4) {
    throw std::invalid_argument(
        "search_effect_profile_params: family acts on a 4-dimensional "
        "space");
  }
  const double h = std::acos(0.0);
  const std::array<double, 3> grid = {0.0, h / 2.0, h};

  FamilySearchResult best;
  double best_gap = -1.0;
  RecordFamilyParams params;
  // 3^8 grid over both angle blocks; the certification predicate prunes
  // everything except exact-replicability points.
  std::array<std::size_t, 8> idx{};
  while (true) {
    for (std::size_t i = 0; i < 4; ++i) params.theta_a[i] = grid[idx[i]];
    for (std::size_t i = 0; i < 4; ++i) params.theta_b[i] = grid[idx[4 + i]];
    auto [a, b] = record_update_instruments(params);
    const EffectProfile profile = verify_effect_profile(a, b, rho, expect);
    if (profile.pass && profile.qoe_gap > best_gap) {
      best = FamilySearchResult{params, profile, true};
      best_gap = profile.qoe_gap;
    }
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < grid.size()) break;
      idx[pos] = 0;
      if (pos == 0) return best;
    }
  }
}

}  // namespace qlm
