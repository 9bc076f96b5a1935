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

#include <complex>
#include <random>

#include "doctest.h"
#include "qlm/hilbert.hpp"
#include "qlm/random.hpp"
#include "support.hpp"

using namespace qlm;
using qlm_test::ket;

TEST_SUITE("hilbert") {

TEST_CASE("tensor product uses row-major blocks") {
  ComplexMatrix a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  ComplexMatrix b(2, 2);
  b << 0.0, 1.0, 1.0, 0.0;
  const ComplexMatrix t = tensor(a, b);
  REQUIRE(t.rows() == 4);
  // Block (i, j) equals a(i, j) * b.
  CHECK(sup_norm(t.block(0, 0, 2, 2) - 1.0 * b) == doctest::Approx(0.0));
  CHECK(sup_norm(t.block(0, 2, 2, 2) - 2.0 * b) == doctest::Approx(0.0));
  CHECK(sup_norm(t.block(2, 0, 2, 2) - 3.0 * b) == doctest::Approx(0.0));
}

TEST_CASE("tensor respects the dimension cap") {
  const ComplexMatrix a = ComplexMatrix::Identity(3, 3);
  CHECK_NOTHROW(tensor(a, a, 9));
  CHECK_THROWS_AS(tensor(a, a, 8), std::invalid_argument);
}

TEST_CASE("partial trace recovers the factors of a product state") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const DensityOperator a = random_density(2, rng);
    const DensityOperator b = random_density(3, rng);
    const ComplexMatrix joint = tensor(a.matrix(), b.matrix());
    CHECK(sup_norm(partial_trace(joint, 2, 3, Subsystem::First) - a.matrix()) <
          1e-12);
    CHECK(sup_norm(partial_trace(joint, 2, 3, Subsystem::Second) - b.matrix()) <
          1e-12);
  }
}

TEST_CASE("partial trace preserves the total trace") {
  std::mt19937_64 rng(12);
  const DensityOperator rho = random_density(6, rng);
  const ComplexMatrix ra = partial_trace(rho.matrix(), 2, 3, Subsystem::First);
  CHECK(std::abs(ra.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("hermitian eigendecomposition reconstructs the matrix") {
  std::mt19937_64 rng(13);
  const ComplexMatrix g = random_ginibre(5, 5, rng);
  const ComplexMatrix h = g + g.adjoint();
  const EigenSystem es = eig_hermitian(h);
  ComplexMatrix rebuilt = ComplexMatrix::Zero(5, 5);
  for (Eigen::Index k = 0; k < 5; ++k) {
    rebuilt += es.values(k) * es.vectors.col(k) * es.vectors.col(k).adjoint();
  }
  CHECK(sup_norm(rebuilt - h) < 1e-10);
  for (Eigen::Index k = 1; k < 5; ++k) {
    CHECK(es.values(k - 1) <= es.values(k));
  }
}

TEST_CASE("eigendecomposition rejects non-hermitian input") {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(eig_hermitian(m), std::invalid_argument);
}

TEST_CASE("density validation reports each violation kind") {
  ComplexMatrix skew(2, 2);
  skew << 0.5, Complex(0.0, 0.3), Complex(0.0, 0.3), 0.5;
  bool saw_hermiticity = false;
  for (const auto& v : check_density(skew)) {
    if (v.kind == DensityViolationKind::NotHermitian) saw_hermiticity = true;
  }
  CHECK(saw_hermiticity);

  ComplexMatrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  bool saw_negative = false;
  for (const auto& v : check_density(neg)) {
    if (v.kind == DensityViolationKind::NotPositive) saw_negative = true;
  }
  CHECK(saw_negative);

  ComplexMatrix off(2, 2);
  off << 0.9, 0.0, 0.0, 0.3;
  bool saw_trace = false;
  for (const auto& v : check_density(off)) {
    if (v.kind == DensityViolationKind::TraceNotOne) saw_trace = true;
  }
  CHECK(saw_trace);

  std::mt19937_64 rng(14);
  CHECK(check_density(random_density(4, rng).matrix()).empty());
}

TEST_CASE("state vectors normalize and reject degenerate input") {
  ComplexVector v(2);
  v << 3.0, 4.0;
  const StateVector psi(v);
  CHECK(std::abs(psi.amplitudes().norm() - 1.0) < 1e-14);
  CHECK_THROWS_AS(StateVector(ComplexVector::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("state equality ignores global phase") {
  std::mt19937_64 rng(15);
  const StateVector psi = random_pure_state(3, rng);
  const StateVector rotated(psi.amplitudes() *
                            std::exp(Complex(0.0, 1.234)));
  CHECK(states_equal(psi, rotated));
  CHECK_FALSE(states_equal(psi, random_pure_state(3, rng)));
}

TEST_CASE("observable spectral projectors resolve the identity") {
  std::mt19937_64 rng(16);
  const ComplexMatrix g = random_ginibre(4, 4, rng);
  const ComplexMatrix h = g + g.adjoint();
  const HermitianObservable obs(h);
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  ComplexMatrix weighted = ComplexMatrix::Zero(4, 4);
  for (const auto& line : obs.lines()) {
    sum += line.projector.matrix();
    weighted += line.eigenvalue * line.projector.matrix();
    for (const auto& other : obs.lines()) {
      const ComplexMatrix prod =
          line.projector.matrix() * other.projector.matrix();
      if (&line == &other) {
        CHECK(sup_norm(prod - line.projector.matrix()) < 1e-10);
      } else {
        CHECK(sup_norm(prod) < 1e-10);
      }
    }
  }
  CHECK(sup_norm(sum - ComplexMatrix::Identity(4, 4)) < 1e-10);
  CHECK(sup_norm(weighted - h) < 1e-9);
}

TEST_CASE("degenerate eigenvalues share one projector") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  const HermitianObservable obs(m);
  REQUIRE(obs.lines().size() == 2);
  // A projector's rank equals its trace.
  CHECK(obs.lines()[0].projector.trace().real() == doctest::Approx(2.0));
  CHECK(obs.lines()[1].projector.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("spectra add for commuting observables only") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 3.0;
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = 10.0;
  b(1, 1) = 20.0;
  const auto commuting = spectrum_additivity_report(a, b);
  CHECK(commuting.commuting);
  CHECK(commuting.additive);
  CHECK(commuting.spec_sum(0) == doctest::Approx(11.0));
  CHECK(commuting.spec_sum(1) == doctest::Approx(23.0));

  const auto clash = spectrum_additivity_report(pauli_x(), pauli_z());
  CHECK_FALSE(clash.commuting);
  CHECK_FALSE(clash.additive);
  // Eigenvalues of sigma_x + sigma_z are +-sqrt(2), not sums of +-1.
  CHECK(clash.spec_sum(1) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("spin observables square to the identity") {
  for (const double theta : {0.0, 0.3, 1.1, qlm_test::pi() / 2}) {
    const ComplexMatrix m = spin_observable(theta);
    CHECK(sup_norm(m * m - ComplexMatrix::Identity(2, 2)) < 1e-12);
  }
}

TEST_CASE("random unitaries are unitary and seeded deterministically") {
  std::mt19937_64 rng_a(7);
  std::mt19937_64 rng_b(7);
  const ComplexMatrix u = random_unitary(4, rng_a);
  const ComplexMatrix v = random_unitary(4, rng_b);
  CHECK(sup_norm(u * u.adjoint() - ComplexMatrix::Identity(4, 4)) < 1e-12);
  CHECK(sup_norm(u - v) == 0.0);
}

TEST_CASE("random projectors have the requested rank") {
  std::mt19937_64 rng(8);
  const Projector p = random_projector(5, 2, rng);
  CHECK(p.rank() == 2);
  CHECK(sup_norm(p.matrix() * p.matrix() - p.matrix()) < 1e-10);
}

}  // TEST_SUITE
