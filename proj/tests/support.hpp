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

#include <cmath>

#include "qlm/hilbert.hpp"
#include "qlm/logic.hpp"

namespace qlm_test {

inline qlm::ComplexVector ket(Eigen::Index dim, Eigen::Index i) {
  qlm::ComplexVector v = qlm::ComplexVector::Zero(dim);
  v(i) = 1.0;
  return v;
}

inline qlm::StateVector basis_state(Eigen::Index dim, Eigen::Index i) {
  return qlm::StateVector(ket(dim, i));
}

inline qlm::StateVector plus_state() {
  qlm::ComplexVector v(2);
  v << 1.0, 1.0;
  return qlm::StateVector(v);
}

inline qlm::Projector ket_projector(const qlm::ComplexVector& v) {
  const qlm::ComplexVector n = v / v.norm();
  return qlm::Projector::validated(n * n.adjoint());
}

// Spin singlet (|01> - |10>)/sqrt(2) as a density operator.
inline qlm::DensityOperator singlet() {
  qlm::ComplexVector v = qlm::ComplexVector::Zero(4);
  v(1) = 1.0;
  v(2) = -1.0;
  return qlm::DensityOperator::from_pure(qlm::StateVector(v));
}

inline double pi() { return std::acos(-1.0); }

}  // namespace qlm_test
