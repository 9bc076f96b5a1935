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
#include <random>

#include "qlm/hilbert.hpp"
#include "qlm/logic.hpp"

namespace qlm {

// Matrix with independent standard complex Gaussian entries.
ComplexMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols,
                             std::mt19937_64& rng);

// Haar-distributed unitary (QR of a Ginibre matrix with phase fixing).
ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

StateVector random_pure_state(Eigen::Index dim, std::mt19937_64& rng);

// Full-rank density G G^dagger / tr[G G^dagger].
DensityOperator random_density(Eigen::Index dim, std::mt19937_64& rng);

// Rank-r projector onto the span of r columns of a Haar unitary.
Projector random_projector(Eigen::Index dim, Eigen::Index rank,
                           std::mt19937_64& rng);

// Three projectors diagonal in one shared random basis, hence pairwise
// commuting; each diagonal 0/1 pattern is drawn uniformly (nontrivial
// patterns).
std::array<Projector, 3> random_commuting_triple(Eigen::Index dim,
                                                 std::mt19937_64& rng);

// Three random projectors resampled until some pair has commutator
// sup norm above the floor.
std::array<Projector, 3> random_noncommuting_triple(
    Eigen::Index dim, std::mt19937_64& rng, double commutator_floor = 1e-3);

}  // namespace qlm
