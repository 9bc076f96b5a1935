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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qlm/instruments.hpp"

namespace qlm {

inline constexpr double kClassicalBound = 2.0;
inline constexpr double kTsirelsonBound = 2.8284271247461903;

// Observable with spectrum {+1, -1}: Hermitian and squaring to the
// identity.
class DichotomicObservable {
 public:
  static DichotomicObservable validated(const ComplexMatrix& m,
                                        double tol = 1e-9);
  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  explicit DichotomicObservable(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

// E(A, B) = tr[(A (x) B) rho] for a bipartite state on
// C^{dim_a} (x) C^{dim_b}.
double correlation(const DensityOperator& rho, const DichotomicObservable& a,
                   const DichotomicObservable& b);

struct ChshReport {
  double e11 = 0.0;
  double e12 = 0.0;
  double e21 = 0.0;
  double e22 = 0.0;
  double s = 0.0;
  bool sampled = false;
  std::uint64_t trials = 0;  // per setting pair, in sampling mode
};

// S = |E(A1,B1) + E(A1,B2) + E(A2,B1) - E(A2,B2)| from exact
// correlations. The quantum bound S <= 2*sqrt(2) is enforced as a
// post-assertion.
ChshReport chsh(const DensityOperator& rho, const DichotomicObservable& a1,
                const DichotomicObservable& a2, const DichotomicObservable& b1,
                const DichotomicObservable& b2);

// Finite-trial sampling mode: draws outcome pairs per setting from the
// exact joint distribution with a seeded generator and reports
// frequency-based correlations. The Tsirelson post-assertion is not
// applied to sampled frequencies.
ChshReport chsh_sampled(const DensityOperator& rho,
                        const DichotomicObservable& a1,
                        const DichotomicObservable& a2,
                        const DichotomicObservable& b1,
                        const DichotomicObservable& b2, std::uint64_t trials,
                        std::uint64_t seed);

// Three mutually orthogonal slit projectors, a detection effect, and a
// source state.
struct SlitConfiguration {
  std::vector<Projector> slits;
  Effect detector;
  StateVector source;
};

SlitConfiguration make_slit_configuration(std::vector<Projector> slits,
                                          Effect detector,
                                          StateVector source);

// Detection probability with the slits in subset S open:
// p_S = tr[D P_S |psi><psi| P_S], P_S = sum_{i in S} P_i. The subset is
// given by slit indices (0-based).
double subset_probability(const SlitConfiguration& cfg,
                          const std::vector<int>& subset);

// Third-order interference residual
// I3 = p_123 - p_12 - p_13 - p_23 + p_1 + p_2 + p_3; identically zero in
// quantum models.
double sorkin_residual(const SlitConfiguration& cfg);

// Second-order interference p_ij - p_i - p_j for a slit pair; generically
// nonzero.
double two_slit_interference(const SlitConfiguration& cfg, int i, int j);

// Conditions a joint state on C^{dim_first} (x) C^{dim_second} on an
// outcome of an instrument acting on the second factor: the instrument is
// extended by the identity on the first factor, the state updated, and
// the second factor traced out. Returns the conditioned first-factor
// state.
DensityOperator contextual_conditioning(const DensityOperator& rho,
                                        Eigen::Index dim_first,
                                        Eigen::Index dim_second,
                                        const QuantumInstrument& instr,
                                        const std::string& outcome);

}  // namespace qlm
