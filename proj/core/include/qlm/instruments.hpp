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

#include <string>
#include <vector>

#include "qlm/hilbert.hpp"
#include "qlm/logic.hpp"

namespace qlm {

// Below this probability an outcome is treated as a null event and
// conditioning on it is an error.
inline constexpr double kNullEventThreshold = 1e-12;

// Completely positive map in Kraus form.
class Superoperator {
 public:
  explicit Superoperator(std::vector<ComplexMatrix> kraus);

  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  Eigen::Index dim() const { return kraus_.front().rows(); }

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  // Sum of K^dagger K over the Kraus list.
  ComplexMatrix gram() const;

 private:
  std::vector<ComplexMatrix> kraus_;
};

// POVM element: Hermitian with spectrum in [0, 1].
class Effect {
 public:
  static Effect validated(const ComplexMatrix& m, double tol = 1e-10);
  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  explicit Effect(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

// Quantum instrument: one completely positive outcome map per label, with
// the summed Kraus grams resolving the identity.
class QuantumInstrument {
 public:
  static QuantumInstrument validated(std::vector<std::string> outcomes,
                                     std::vector<Superoperator> maps,
                                     double tol = 1e-10);

  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<Superoperator>& maps() const { return maps_; }
  Eigen::Index dim() const { return maps_.front().dim(); }
  std::size_t outcome_index(const std::string& outcome) const;

 private:
  QuantumInstrument(std::vector<std::string> outcomes,
                    std::vector<Superoperator> maps)
      : outcomes_(std::move(outcomes)), maps_(std::move(maps)) {}
  std::vector<std::string> outcomes_;
  std::vector<Superoperator> maps_;
};

// Projective instrument of an observable: one outcome per spectral line,
// labeled by the eigenvalue, with P rho P updates.
QuantumInstrument projection_instrument(const HermitianObservable& a);

// Two-outcome projective instrument {"yes" -> P rho P, "no" -> P' rho P'}.
QuantumInstrument yes_no_instrument(const Projector& p);

// Trivial single-outcome instrument whose map is the identity channel.
QuantumInstrument trivial_instrument(Eigen::Index dim,
                                     const std::string& outcome = "ok");

// Probability of the outcome in state rho: tr[I_A(x) rho].
double outcome_probability(const QuantumInstrument& instr,
                           const std::string& outcome,
                           const DensityOperator& rho);

// Conditional post-measurement state I_A(x) rho / tr[...]; throws on a
// null event (probability below kNullEventThreshold).
DensityOperator state_update(const QuantumInstrument& instr,
                             const std::string& outcome,
                             const DensityOperator& rho);

// POVM induced by the instrument: E(x) = sum_k K_{x,k}^dagger K_{x,k}.
std::vector<Effect> povm_of(const QuantumInstrument& instr);

// Joint distribution over outcome tuples of instruments applied in list
// order: p(x_1,...,x_n) = tr[I_n(x_n) ... I_1(x_1) rho].
class SequentialDistribution {
 public:
  SequentialDistribution(std::vector<std::vector<std::string>> step_outcomes,
                         std::vector<double> probs);

  std::size_t steps() const { return step_outcomes_.size(); }
  const std::vector<std::vector<std::string>>& step_outcomes() const {
    return step_outcomes_;
  }
  // Flat row-major table over outcome indices, last step fastest.
  const std::vector<double>& probs() const { return probs_; }

  double prob(const std::vector<std::size_t>& indices) const;
  double prob(const std::vector<std::string>& outcomes) const;
  // Marginal over the first `prefix` steps.
  SequentialDistribution marginal(std::size_t prefix) const;
  double total() const;

 private:
  std::vector<std::vector<std::string>> step_outcomes_;
  std::vector<double> probs_;
};

SequentialDistribution sequential_distribution(
    const std::vector<QuantumInstrument>& instruments,
    const DensityOperator& rho);

// Instrument realized by an indirect measurement: couple the system to a
// probe prepared in `probe` via the unitary u on system (x) probe, then
// read the probe with the meter projectors:
//   I(x) rho = tr_probe[(1 (x) M_x) u (rho (x) probe) u^dagger (1 (x) M_x)].
// Outcome labels default to "0", "1", ... per meter projector.
QuantumInstrument indirect_instrument(const DensityOperator& probe,
                                      const ComplexMatrix& u,
                                      const std::vector<Projector>& meter,
                                      std::vector<std::string> outcomes = {});

struct UnitaryDilation {
  DensityOperator probe;          // pure pointer state |0><0|
  ComplexMatrix unitary;          // on system (x) probe
  std::vector<Projector> meter;   // probe projectors, one per outcome
  std::vector<std::string> outcomes;
};

// Builds an indirect-measurement realization of the instrument: feeding
// the result back through indirect_instrument reproduces the original
// outcome maps.
UnitaryDilation unitary_dilation(const QuantumInstrument& instr);

// True iff every outcome map of a agrees with the corresponding map of b
// on a basis of Hermitian matrices, within tol per entry.
bool instruments_equal(const QuantumInstrument& a, const QuantumInstrument& b,
                       double tol = 1e-10);

}  // namespace qlm
