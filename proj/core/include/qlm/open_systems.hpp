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

#include <optional>
#include <vector>

#include "qlm/hilbert.hpp"

namespace qlm {

// Markovian generator built from a Hamiltonian and jump operators:
//   d rho / dt = -i [H, rho] + sum_k (L_k rho L_k^dagger
//                                     - {L_k^dagger L_k, rho} / 2),
// with hbar = 1.
class GkslGenerator {
 public:
  GkslGenerator(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> jumps);

  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<ComplexMatrix>& jumps() const { return jumps_; }
  Eigen::Index dim() const { return hamiltonian_.rows(); }

 private:
  ComplexMatrix hamiltonian_;
  std::vector<ComplexMatrix> jumps_;
};

// Right-hand side of the master equation at the given state.
ComplexMatrix gksl_rhs(const GkslGenerator& gen, const ComplexMatrix& rho);

// Von Neumann entropy -tr[rho ln rho] in nats; nonpositive eigenvalues
// contribute zero.
double von_neumann_entropy(const DensityOperator& rho);

// Linear entropy 1 - tr[rho^2].
double linear_entropy(const DensityOperator& rho);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityOperator> states;
  std::vector<double> s_von_neumann;
  std::vector<double> s_linear;
  // Steps on which an eigenvalue fell below the clipping floor and the
  // state was repaired.
  int clip_events = 0;
  double max_trace_drift = 0.0;
};

// Fixed-step fourth-order Runge-Kutta integration of the master equation
// from t = 0 to t_end. Each step re-symmetrizes the state; eigenvalues
// below -1e-8 are clipped to zero with renormalization and counted.
// Trace drift beyond 1e-6 aborts with an error suggesting a smaller step.
Trajectory evolve(const GkslGenerator& gen, const DensityOperator& rho0,
                  double t_end, double dt);

struct HumpPeak {
  double time;
  double height;
  double rise;        // height above the valley preceding the peak
  double fall;        // height above the valley following the peak
  double rise_start;  // time of the preceding valley
  double fall_end;    // time of the following valley
};

struct HumpReport {
  int hump_count = 0;
  std::vector<HumpPeak> peaks;
  bool camel_shaped = false;
};

// Detects interior entropy humps on the trajectory: the entropy series is
// smoothed with a centered moving average (window size `window`, clamped
// at the ends), interior local maxima are located, and a hump is counted
// when both its rise and fall exceed the noise floor. Reported times and
// heights come from the unsmoothed series at the detected index.
HumpReport hump_profile(const Trajectory& traj, int window = 5,
                        double noise_floor = 1e-6);

struct StationaryState {
  DensityOperator state;
  // True when the generator kernel holds more than one density; the
  // returned state is then the stationarity projection of the maximally
  // mixed state.
  bool non_unique = false;
};

// Stationary density of the generator, from the null space of the
// vectorized generator. Residual above tol is an error.
StationaryState stationary_state(const GkslGenerator& gen, double tol = 1e-9);

struct DecisionOutcome {
  double eigenvalue;
  double probability;
};

// Outcome distribution of a decision observable read from a decohered
// state: requires the off-diagonal mass across the observable's
// eigenspaces to be at most the threshold, else errors.
std::vector<DecisionOutcome> decision_distribution(
    const DensityOperator& rho, const HermitianObservable& basis,
    double decoherence_threshold = 1e-6);

struct OrderStabilityReport {
  std::vector<double> times;
  std::vector<double> s_global;
  std::vector<double> s_linear;
  std::vector<double> s_first;
  std::vector<double> s_second;
  double global_increase = 0.0;
  double max_subsystem_increase = 0.0;
  // Global disorder held flat while at least one subsystem's disorder
  // grew substantially.
  bool order_stable = false;
};

// Evolves a bipartite state and tracks global and marginal entropies.
// order_stable is true when the global entropy increase stays at or below
// global_tol while some subsystem entropy rises by at least
// subsystem_min nats.
OrderStabilityReport order_stability_report(const GkslGenerator& gen,
                                            const DensityOperator& rho0,
                                            Eigen::Index dim_a,
                                            Eigen::Index dim_b, double t_end,
                                            double dt,
                                            double global_tol = 1e-6,
                                            double subsystem_min = 0.1);

}  // namespace qlm
