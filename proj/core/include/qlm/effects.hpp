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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlm/instruments.hpp"

namespace qlm {

// Sequential outcome paths whose probability falls below this threshold
// are excluded from conditional-replicability checks.
inline constexpr double kEventThreshold = 1e-9;

// Conditional repeats must reach 1 - kRepeatTolerance to count as
// replicable.
inline constexpr double kRepeatTolerance = 1e-9;

// Largest absolute difference between asking A-then-B and B-then-A:
// max_{x,y} |p_AB(x,y) - p_BA(y,x)| in the given state.
double qoe_gap(const QuantumInstrument& a, const QuantumInstrument& b,
               const DensityOperator& rho);

struct RepeatCheck {
  bool holds = true;
  // Smallest conditional repeat probability over included paths; 1 when
  // every path fell below the event threshold.
  double min_repeat = 1.0;
  std::vector<std::string> worst_path;
};

// Response replicability in the given state: AA (asking A twice repeats
// the first answer), ABA (the third answer repeats the first across any
// intermediate B answer), BAB (symmetric).
struct RreReport {
  RepeatCheck aa;
  RepeatCheck aba;
  RepeatCheck bab;
  bool rre_holds = false;
};

RreReport rre_report(const QuantumInstrument& a, const QuantumInstrument& b,
                     const DensityOperator& rho);

// Signed residual q = p_AB(y,n) + p_AB(n,y) - p_BA(y,n) - p_BA(n,y).
// Both instruments must carry outcome labels exactly {"yes", "no"};
// vanishes for projective instrument pairs in any state.
double qq_residual(const QuantumInstrument& a, const QuantumInstrument& b,
                   const DensityOperator& rho);

struct EffectExpectations {
  bool expect_qoe = true;
  double qoe_min_gap = 1e-3;
  bool expect_rre = true;
  double qq_tolerance = 1e-6;
};

struct EffectProfile {
  double qoe_gap = 0.0;
  bool qoe_present = false;
  RreReport rre;
  double qq_residual = 0.0;
  bool qq_within_tolerance = false;
  bool pass = false;
};

// Evaluates all three effects in the given state and certifies them
// against the expectations.
EffectProfile verify_effect_profile(const QuantumInstrument& a,
                                    const QuantumInstrument& b,
                                    const DensityOperator& rho,
                                    const EffectExpectations& expect = {});

// Parameterized family of question pairs on C^4 = record_A (x) record_B.
// Asking A reads the first record sharply and applies an angle-controlled
// stochastic rewrite to the second record (theta_a[2*x + b] sets the
// probability cos^2(theta) of rewriting record state b to 0 after answer
// x); asking B mirrors this with the roles swapped. Every parameter
// choice yields valid instruments.
struct RecordFamilyParams {
  std::array<double, 4> theta_a{};
  std::array<double, 4> theta_b{};
};

std::pair<QuantumInstrument, QuantumInstrument> record_update_instruments(
    const RecordFamilyParams& params);

// Reference fixture: parameters and state found by the search harness
// that jointly exhibit an order effect, exact replicability, and a
// vanishing question-order residual.
RecordFamilyParams record_family_reference_params();
StateVector record_family_reference_state();

struct FamilySearchResult {
  RecordFamilyParams params;
  EffectProfile profile;
  bool found = false;
};

// Searches the record-update family for a parameter point certifying
// the full effect profile in the given state: corner enumeration over
// {0, pi/2}^8 plus a refinement grid. Deterministic.
FamilySearchResult search_effect_profile_params(
    const DensityOperator& rho, const EffectExpectations& expect = {});

}  // namespace qlm
