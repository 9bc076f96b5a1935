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

#include <cmath>
#include <random>

#include "doctest.h"
#include "qlm/open_systems.hpp"
#include "qlm/random.hpp"
#include "support.hpp"

using namespace qlm;
using qlm_test::ket;

namespace {

// Decay from the excited level: jump sqrt(gamma)|0><1|, no Hamiltonian.
GkslGenerator damping_generator(double gamma) {
  ComplexMatrix l = ComplexMatrix::Zero(2, 2);
  l(0, 1) = std::sqrt(gamma);
  return GkslGenerator(ComplexMatrix::Zero(2, 2), {l});
}

DensityOperator excited() {
  return DensityOperator::from_pure(qlm_test::basis_state(2, 1));
}

}  // namespace

TEST_SUITE("open_systems") {

TEST_CASE("damping follows the analytic exponential decay") {
  const Trajectory traj = evolve(damping_generator(1.0), excited(), 2.0, 1e-3);
  for (std::size_t i = 0; i < traj.times.size(); i += 250) {
    const double t = traj.times[i];
    const double expected = std::exp(-t);
    const double actual = traj.states[i].matrix()(1, 1).real();
    CHECK(std::abs(actual - expected) < 1e-8);
  }
  CHECK(traj.max_trace_drift < 1e-10);
}

TEST_CASE("closed evolution keeps a pure state pure") {
  const GkslGenerator gen(pauli_x(), {});
  const Trajectory traj =
      evolve(gen, DensityOperator::from_pure(qlm_test::basis_state(2, 0)),
             1.0, 1e-3);
  for (std::size_t i = 0; i < traj.s_von_neumann.size(); i += 100) {
    CHECK(traj.s_von_neumann[i] < 1e-9);
    CHECK(std::abs(traj.s_linear[i]) < 1e-9);
  }
}

TEST_CASE("entropies take their textbook values") {
  const DensityOperator mixed =
      DensityOperator::validated(ComplexMatrix::Identity(3, 3) / 3.0);
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(std::log(3.0)));
  CHECK(linear_entropy(mixed) == doctest::Approx(2.0 / 3.0));
  const DensityOperator pure = excited();
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0));
  CHECK(linear_entropy(pure) == doctest::Approx(0.0));
}

TEST_CASE("decay from the excited level makes a single entropy hump") {
  const Trajectory traj = evolve(damping_generator(1.0), excited(), 3.0, 1e-3);
  const HumpReport humps = hump_profile(traj);
  REQUIRE(humps.hump_count == 1);
  CHECK(humps.camel_shaped);
  const HumpPeak& peak = humps.peaks.front();
  CHECK(std::abs(peak.height - std::log(2.0)) < 1e-4);
  CHECK(std::abs(peak.time - std::log(2.0)) < 2e-3);
  CHECK(peak.rise > 1e-6);
  CHECK(peak.fall > 1e-6);
}

TEST_CASE("monotone entropy growth is not a hump") {
  // Dephasing of |+> raises entropy monotonically toward ln 2.
  ComplexMatrix l = std::sqrt(0.5) * pauli_z();
  const GkslGenerator gen(ComplexMatrix::Zero(2, 2), {l});
  const Trajectory traj =
      evolve(gen, DensityOperator::from_pure(qlm_test::plus_state()), 4.0,
             1e-3);
  const HumpReport humps = hump_profile(traj);
  CHECK(humps.hump_count == 0);
  CHECK_FALSE(humps.camel_shaped);
  CHECK(traj.s_von_neumann.back() > 0.68);
}

TEST_CASE("damping has the ground state as unique stationary state") {
  const StationaryState st = stationary_state(damping_generator(1.0));
  CHECK_FALSE(st.non_unique);
  ComplexMatrix ground = ComplexMatrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  CHECK(sup_norm(st.state.matrix() - ground) < 1e-9);
}

TEST_CASE("pure dephasing has a stationary subspace") {
  const GkslGenerator gen(ComplexMatrix::Zero(2, 2), {pauli_z()});
  const StationaryState st = stationary_state(gen);
  CHECK(st.non_unique);
  // The projected representative is the maximally mixed state.
  CHECK(sup_norm(st.state.matrix() - ComplexMatrix::Identity(2, 2) / 2.0) <
        1e-9);
}

TEST_CASE("free dynamics leave every state stationary") {
  const GkslGenerator gen(ComplexMatrix::Zero(2, 2), {});
  const StationaryState st = stationary_state(gen);
  CHECK(st.non_unique);
}

TEST_CASE("decision distribution reads decohered states only") {
  const HermitianObservable basis(pauli_z());
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 0.7;
  diag(1, 1) = 0.3;
  const auto outcomes =
      decision_distribution(DensityOperator::validated(diag), basis);
  REQUIRE(outcomes.size() == 2);
  // Eigenvalues are reported ascending: -1 then +1.
  CHECK(outcomes[0].eigenvalue == doctest::Approx(-1.0));
  CHECK(outcomes[0].probability == doctest::Approx(0.3));
  CHECK(outcomes[1].probability == doctest::Approx(0.7));

  const DensityOperator coherent =
      DensityOperator::from_pure(qlm_test::plus_state());
  CHECK_THROWS_AS(decision_distribution(coherent, basis), std::runtime_error);
}

TEST_CASE("entangling dynamics grow local disorder at constant global order") {
  const ComplexMatrix h = tensor(pauli_x(), pauli_x());
  const GkslGenerator gen(h, {});
  const DensityOperator rho0 =
      DensityOperator::from_pure(qlm_test::basis_state(4, 0));
  const double t_end = qlm_test::pi() / 4.0;
  const OrderStabilityReport report =
      order_stability_report(gen, rho0, 2, 2, t_end, t_end / 500.0, 1e-6, 0.5);
  CHECK(report.order_stable);
  CHECK(report.global_increase <= 1e-8);
  CHECK(report.max_subsystem_increase >= 0.5);
  CHECK(report.s_first.back() == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("local dephasing of a product state destroys global order") {
  const ComplexMatrix z1 = std::sqrt(0.5) * tensor(pauli_z(), ComplexMatrix::Identity(2, 2));
  const ComplexMatrix z2 = std::sqrt(0.5) * tensor(ComplexMatrix::Identity(2, 2), pauli_z());
  const GkslGenerator gen(ComplexMatrix::Zero(4, 4), {z1, z2});
  ComplexVector v(4);
  v << 0.5, 0.5, 0.5, 0.5;
  const DensityOperator rho0 = DensityOperator::from_pure(StateVector(v));
  const OrderStabilityReport report =
      order_stability_report(gen, rho0, 2, 2, 2.0, 4e-3);
  CHECK_FALSE(report.order_stable);
  CHECK(report.global_increase >= 0.1);
}

TEST_CASE("generator construction validates its inputs") {
  ComplexMatrix skew(2, 2);
  skew << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(GkslGenerator(skew, {}), std::invalid_argument);
  CHECK_THROWS_AS(
      GkslGenerator(ComplexMatrix::Zero(2, 2), {ComplexMatrix::Zero(3, 3)}),
      std::invalid_argument);
}

TEST_CASE("coarse steps trigger eigenvalue clipping repairs") {
  // gamma * dt = 3 lies outside the integrator's stability region, so the
  // excited population overshoots and the ground population goes negative.
  const Trajectory traj = evolve(damping_generator(4.0), excited(), 3.0, 0.75);
  CHECK(traj.clip_events > 0);
}

}  // TEST_SUITE
