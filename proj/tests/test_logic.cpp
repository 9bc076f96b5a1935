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
#include "qlm/logic.hpp"
#include "qlm/random.hpp"
#include "support.hpp"

using namespace qlm;
using qlm_test::ket;
using qlm_test::ket_projector;

TEST_SUITE("logic") {

TEST_CASE("complement splits the identity") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 10; ++i) {
    const Projector p = random_projector(4, 2, rng);
    const Projector pc = complement(p);
    CHECK(sup_norm(p.matrix() + pc.matrix() - ComplexMatrix::Identity(4, 4)) <
          1e-12);
    CHECK(meet(p, pc).rank() == 0);
    CHECK(join(p, pc).rank() == 4);
  }
}

TEST_CASE("meet and join of commuting projectors reduce to products") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 10; ++i) {
    const auto [p, q, r] = random_commuting_triple(5, rng);
    const ComplexMatrix pq = p.matrix() * q.matrix();
    CHECK(sup_norm(meet(p, q).matrix() - pq) < 1e-9);
    CHECK(sup_norm(join(p, q).matrix() - (p.matrix() + q.matrix() - pq)) <
          1e-9);
  }
}

TEST_CASE("meet is dominated by both arguments and join dominates them") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    const Projector p = random_projector(4, 2, rng);
    const Projector q = random_projector(4, 3, rng);
    const Projector m = meet(p, q);
    const Projector j = join(p, q);
    // P M = M means range(M) <= range(P); J P = P means range(P) <= range(J).
    CHECK(sup_norm(p.matrix() * m.matrix() - m.matrix()) < 1e-8);
    CHECK(sup_norm(q.matrix() * m.matrix() - m.matrix()) < 1e-8);
    CHECK(sup_norm(j.matrix() * p.matrix() - p.matrix()) < 1e-8);
    CHECK(sup_norm(j.matrix() * q.matrix() - q.matrix()) < 1e-8);
  }
}

TEST_CASE("meet matches the known overlap of two planes") {
  // Two 2D subspaces of C^3 sharing exactly the line through e0.
  ComplexMatrix basis_a(3, 2);
  basis_a.col(0) = ket(3, 0);
  basis_a.col(1) = ket(3, 1);
  ComplexMatrix basis_b(3, 2);
  basis_b.col(0) = ket(3, 0);
  basis_b.col(1) = ket(3, 2);
  const Projector a = Projector::from_orthonormal_basis(basis_a);
  const Projector b = Projector::from_orthonormal_basis(basis_b);
  const Projector m = meet(a, b);
  CHECK(m.rank() == 1);
  CHECK(sup_norm(m.matrix() - ket_projector(ket(3, 0)).matrix()) < 1e-9);
  CHECK(join(a, b).rank() == 3);
}

TEST_CASE("commuting triples are distributive") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 25; ++i) {
    const auto [p, q, r] = random_commuting_triple(4, rng);
    CHECK(distributivity_violations(p, q, r).empty());
  }
}

TEST_CASE("a noncommuting pair forces a distributivity violation") {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 25; ++i) {
    const auto triple = random_noncommuting_triple(3, rng);
    const auto violations =
        distributivity_violations(triple[0], triple[1], triple[2]);
    CHECK_FALSE(violations.empty());
    for (const auto& v : violations) CHECK(v.deviation > 1e-8);
  }
}

TEST_CASE("the classic qubit triple violates distributivity") {
  const Projector p = ket_projector(ket(2, 0));
  const Projector q = ket_projector(qlm_test::plus_state().amplitudes());
  const Projector r = ket_projector(ket(2, 1));
  const auto violations = distributivity_violations(p, q, r);
  CHECK_FALSE(violations.empty());
  // P meet (Q join Qc) = P while (P meet Q) join (P meet Qc) = 0.
  bool found = false;
  for (const auto& v : violations) {
    if (v.x == "P" && v.y == "Q" && v.z == "Qc") found = true;
  }
  CHECK(found);
}

TEST_CASE("commutation check matches the commutator norm") {
  const Projector p = ket_projector(ket(2, 0));
  const Projector q = ket_projector(qlm_test::plus_state().amplitudes());
  CHECK_FALSE(commute(p, q));
  CHECK(commute(p, complement(p)));
}

TEST_CASE("state-level distributivity holds for commuting questions") {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 10; ++i) {
    const auto [p, q, r] = random_commuting_triple(4, rng);
    const StateVector psi = random_pure_state(4, rng);
    CHECK(state_distributivity(p, q, psi));
  }
}

TEST_CASE("state-level distributivity fails for the qubit counterexample") {
  const Projector p = ket_projector(ket(2, 0));
  const Projector q = ket_projector(qlm_test::plus_state().amplitudes());
  // P meet (Q join Qc) maps |0> to itself; both split meets vanish.
  CHECK_FALSE(state_distributivity(p, q, qlm_test::basis_state(2, 0)));
}

TEST_CASE("projector validation rejects non-projections") {
  ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(Projector::validated(half), std::invalid_argument);
  ComplexMatrix skew(2, 2);
  skew << 1.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(Projector::validated(skew), std::invalid_argument);
  CHECK(Projector::identity(3).rank() == 3);
  CHECK(Projector::zero(3).rank() == 0);
}

}  // TEST_SUITE
