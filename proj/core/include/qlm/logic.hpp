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

namespace qlm {

// Orthogonal projector: Hermitian and idempotent.
class Projector {
 public:
  static Projector validated(const ComplexMatrix& m);
  // Projector onto the span of the given orthonormal columns.
  static Projector from_orthonormal_basis(const ComplexMatrix& basis);
  static Projector zero(Eigen::Index dim);
  static Projector identity(Eigen::Index dim);

  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  Eigen::Index rank() const;

 private:
  explicit Projector(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

// Lattice operations on projectors. meet is the projector onto
// range(P) ∩ range(Q), computed from the eigenvalue-2 eigenspace of P+Q;
// join is the projector onto range(P) + range(Q), the support of P+Q.
Projector complement(const Projector& p);
Projector meet(const Projector& p, const Projector& q);
Projector join(const Projector& p, const Projector& q);

// sup_norm(PQ - QP) <= tol.
bool commute(const Projector& p, const Projector& q, double tol = 1e-9);

// One failed instance of X ∧ (Y ∨ Z) = (X ∧ Y) ∨ (X ∧ Z); element names
// come from {P, Q, R, Pc, Qc, Rc}.
struct DistributivityViolation {
  std::string x;
  std::string y;
  std::string z;
  double deviation;  // sup norm of the two sides' difference
};

// Evaluates the distributive law for every ordered triple over
// {P, Q, R and complements} (216 triples) and returns the violations,
// sorted by (x, y, z). Empty iff the sublattice is distributive, which by
// the commutativity theorem happens exactly when P, Q, R pairwise commute.
std::vector<DistributivityViolation> distributivity_violations(
    const Projector& p, const Projector& q, const Projector& r,
    double tol = 1e-8);

// State-level distributivity: [X ∧ (Y ∨ Z)] psi = [(X ∧ Y) ∨ (X ∧ Z)] psi
// for every ordered triple over {P, Q, Pc, Qc} (64 triples), each within
// Euclidean deviation tol. This is the lattice side of the bridge to
// response replicability for projective question pairs.
bool state_distributivity(const Projector& p, const Projector& q,
                          const StateVector& psi, double tol = 1e-8);

}  // namespace qlm
