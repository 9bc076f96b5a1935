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

#include <random>

#include "doctest.h"
#include "qlm/instruments.hpp"
#include "qlm/random.hpp"
#include "support.hpp"

using namespace qlm;
using qlm_test::ket;
using qlm_test::ket_projector;

namespace {

// Random n-outcome instrument realized indirectly: couple to a probe of
// dimension n with a Haar unitary and read the probe basis.
QuantumInstrument random_instrument(Eigen::Index dim, Eigen::Index outcomes,
                                    std::mt19937_64& rng) {
  const ComplexMatrix u = random_unitary(dim * outcomes, rng);
  const DensityOperator probe =
      DensityOperator::from_pure(qlm_test::basis_state(outcomes, 0));
  std::vector<Projector> meter;
  for (Eigen::Index r = 0; r < outcomes; ++r) {
    meter.push_back(ket_projector(ket(outcomes, r)));
  }
  return indirect_instrument(probe, u, meter);
}

}  // namespace

TEST_SUITE("instruments") {

TEST_CASE("projective instruments are complete and follow the Born rule") {
  std::mt19937_64 rng(31);
  const ComplexMatrix g = random_ginibre(3, 3, rng);
  const HermitianObservable obs(g + g.adjoint());
  const QuantumInstrument instr = projection_instrument(obs);
  const DensityOperator rho = random_density(3, rng);
  double total = 0.0;
  for (std::size_t x = 0; x < instr.outcomes().size(); ++x) {
    const double p = outcome_probability(instr, instr.outcomes()[x], rho);
    const ComplexMatrix proj = obs.lines()[x].projector.matrix();
    CHECK(p == doctest::Approx((proj * rho.matrix()).trace().real())
                   .epsilon(1e-12));
    total += p;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("projective update is idempotent") {
  std::mt19937_64 rng(32);
  const Projector p = random_projector(3, 1, rng);
  const QuantumInstrument instr = yes_no_instrument(p);
  const DensityOperator rho = random_density(3, rng);
  const DensityOperator updated = state_update(instr, "yes", rho);
  // Repeating the question on the updated state answers yes for sure.
  CHECK(outcome_probability(instr, "yes", updated) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditioning on a null event is rejected") {
  const Projector p = ket_projector(ket(2, 0));
  const QuantumInstrument instr = yes_no_instrument(p);
  const DensityOperator rho =
      DensityOperator::from_pure(qlm_test::basis_state(2, 1));
  CHECK_THROWS_AS(state_update(instr, "yes", rho), std::runtime_error);
}

TEST_CASE("extracted POVM effects resolve the identity") {
  std::mt19937_64 rng(33);
  const QuantumInstrument instr = random_instrument(2, 3, rng);
  const auto effects = povm_of(instr);
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (const auto& e : effects) sum += e.matrix();
  CHECK(sup_norm(sum - ComplexMatrix::Identity(2, 2)) < 1e-10);
  const DensityOperator rho = random_density(2, rng);
  for (std::size_t x = 0; x < effects.size(); ++x) {
    CHECK(outcome_probability(instr, instr.outcomes()[x], rho) ==
          doctest::Approx((effects[x].matrix() * rho.matrix()).trace().real())
              .epsilon(1e-10));
  }
}

TEST_CASE("completeness validation rejects lossy Kraus lists") {
  std::vector<ComplexMatrix> lossy = {0.5 * ComplexMatrix::Identity(2, 2)};
  CHECK_THROWS_AS(
      QuantumInstrument::validated({"only"}, {Superoperator(lossy)}),
      std::invalid_argument);
}

TEST_CASE("duplicate outcome labels are rejected") {
  const Projector p = ket_projector(ket(2, 0));
  std::vector<Superoperator> maps = {
      Superoperator({p.matrix()}),
      Superoperator({complement(p).matrix()})};
  CHECK_THROWS_AS(QuantumInstrument::validated({"x", "x"}, std::move(maps)),
                  std::invalid_argument);
}

TEST_CASE("trivial instrument answers with certainty and no disturbance") {
  std::mt19937_64 rng(34);
  const DensityOperator rho = random_density(3, rng);
  const QuantumInstrument instr = trivial_instrument(3);
  CHECK(outcome_probability(instr, "ok", rho) == doctest::Approx(1.0));
  CHECK(sup_norm(state_update(instr, "ok", rho).matrix() - rho.matrix()) <
        1e-12);
}

TEST_CASE("sequential joint distribution is normalized and marginalizes") {
  std::mt19937_64 rng(35);
  const QuantumInstrument a = random_instrument(2, 2, rng);
  const QuantumInstrument b = random_instrument(2, 3, rng);
  const DensityOperator rho = random_density(2, rng);
  const SequentialDistribution joint = sequential_distribution({a, b}, rho);
  CHECK(joint.total() == doctest::Approx(1.0).epsilon(1e-10));
  const SequentialDistribution first = joint.marginal(1);
  for (std::size_t x = 0; x < a.outcomes().size(); ++x) {
    CHECK(first.prob(std::vector<std::size_t>{x}) == doctest::Approx(outcome_probability(
                                                 a, a.outcomes()[x], rho))
                                 .epsilon(1e-10));
  }
}

TEST_CASE("question order matters for noncommuting projective pairs") {
  const QuantumInstrument za = yes_no_instrument(ket_projector(ket(2, 0)));
  const QuantumInstrument xb =
      yes_no_instrument(ket_projector(qlm_test::plus_state().amplitudes()));
  const DensityOperator rho =
      DensityOperator::from_pure(qlm_test::basis_state(2, 0));
  const auto ab = sequential_distribution({za, xb}, rho);
  const auto ba = sequential_distribution({xb, za}, rho);
  CHECK(ab.prob(std::vector<std::size_t>{0, 0}) == doctest::Approx(0.5));
  CHECK(ba.prob(std::vector<std::size_t>{0, 0}) == doctest::Approx(0.25));
}

TEST_CASE("probability lookups accept labels") {
  const QuantumInstrument za = yes_no_instrument(ket_projector(ket(2, 0)));
  const DensityOperator rho =
      DensityOperator::from_pure(qlm_test::basis_state(2, 0));
  const auto joint = sequential_distribution({za, za}, rho);
  CHECK(joint.prob(std::vector<std::string>{"yes", "yes"}) == doctest::Approx(1.0));
  CHECK(joint.prob(std::vector<std::string>{"yes", "no"}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(joint.prob(std::vector<std::string>{"yes", "maybe"}), std::invalid_argument);
}

TEST_CASE("copy interaction realizes the sharp Z question") {
  // U|i>|m> = |i>|m XOR i>: controlled flip with the system as control.
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = 1.0;  // |0,0> -> |0,0>
  u(1, 1) = 1.0;  // |0,1> -> |0,1>
  u(3, 2) = 1.0;  // |1,0> -> |1,1>
  u(2, 3) = 1.0;  // |1,1> -> |1,0>
  const DensityOperator probe =
      DensityOperator::from_pure(qlm_test::basis_state(2, 0));
  const std::vector<Projector> meter = {ket_projector(ket(2, 0)),
                                        ket_projector(ket(2, 1))};
  const QuantumInstrument indirect =
      indirect_instrument(probe, u, meter, {"1", "-1"});

  // Reading the probe in the computational basis projects the system.
  std::vector<Superoperator> maps = {
      Superoperator({ket_projector(ket(2, 0)).matrix()}),
      Superoperator({ket_projector(ket(2, 1)).matrix()})};
  const QuantumInstrument direct =
      QuantumInstrument::validated({"1", "-1"}, std::move(maps));
  CHECK(instruments_equal(indirect, direct));
}

TEST_CASE("dilation round-trips random instruments") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 10; ++i) {
    const QuantumInstrument instr = random_instrument(2, 2, rng);
    const UnitaryDilation dilation = unitary_dilation(instr);
    CHECK(sup_norm(dilation.unitary * dilation.unitary.adjoint() -
                   ComplexMatrix::Identity(dilation.unitary.rows(),
                                           dilation.unitary.cols())) <
          1e-10);
    const QuantumInstrument rebuilt = indirect_instrument(
        dilation.probe, dilation.unitary, dilation.meter, dilation.outcomes);
    CHECK(instruments_equal(instr, rebuilt));
  }
}

TEST_CASE("dilation round-trips a projective instrument") {
  const QuantumInstrument instr =
      projection_instrument(HermitianObservable(pauli_z()));
  const UnitaryDilation dilation = unitary_dilation(instr);
  const QuantumInstrument rebuilt = indirect_instrument(
      dilation.probe, dilation.unitary, dilation.meter, dilation.outcomes);
  CHECK(instruments_equal(instr, rebuilt));
}

}  // TEST_SUITE
