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

#include "qlm/random.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>

namespace qlm {

ComplexMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols,
                             std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return g;
}

ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dim must be >= 1");
  const ComplexMatrix g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? (d / a) : Complex(1.0, 0.0);
  }
  return q;
}

StateVector random_pure_state(Eigen::Index dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_ginibre(dim, 1, rng);
  return StateVector(g.col(0));
}

DensityOperator random_density(Eigen::Index dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_ginibre(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return DensityOperator::validated(rho);
}

Projector random_projector(Eigen::Index dim, Eigen::Index rank,
                           std::mt19937_64& rng) {
  if (rank < 0 || rank > dim) {
    throw std::invalid_argument("random_projector: rank out of range");
  }
  if (rank == 0) return Projector::zero(dim);
  const ComplexMatrix u = random_unitary(dim, rng);
  return Projector::from_orthonormal_basis(u.leftCols(rank));
}

namespace {

// Uniform 0/1 pattern that is neither all zero nor all one.
std::vector<int> nontrivial_pattern(Eigen::Index dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<int> pattern(static_cast<std::size_t>(dim));
  for (;;) {
    int ones = 0;
    for (auto& b : pattern) {
      b = bit(rng);
      ones += b;
    }
    if (ones > 0 && ones < dim) return pattern;
  }
}

}  // namespace

std::array<Projector, 3> random_commuting_triple(Eigen::Index dim,
                                                 std::mt19937_64& rng) {
  if (dim < 2) {
    throw std::invalid_argument("random_commuting_triple: dim must be >= 2");
  }
  const ComplexMatrix u = random_unitary(dim, rng);
  std::array<Projector, 3> out = {Projector::zero(dim), Projector::zero(dim),
                                  Projector::zero(dim)};
  for (int k = 0; k < 3; ++k) {
    const auto pattern = nontrivial_pattern(dim, rng);
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (pattern[static_cast<std::size_t>(j)] == 1) {
        p += u.col(j) * u.col(j).adjoint();
      }
    }
    out[static_cast<std::size_t>(k)] = Projector::validated(p);
  }
  return out;
}

std::array<Projector, 3> random_noncommuting_triple(Eigen::Index dim,
                                                    std::mt19937_64& rng,
                                                    double commutator_floor) {
  if (dim < 2) {
    throw std::invalid_argument("random_noncommuting_triple: dim must be >= 2");
  }
  std::uniform_int_distribution<Eigen::Index> rank_dist(1, dim - 1);
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::array<Projector, 3> out = {random_projector(dim, rank_dist(rng), rng),
                                    random_projector(dim, rank_dist(rng), rng),
                                    random_projector(dim, rank_dist(rng), rng)};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const ComplexMatrix a = out[static_cast<std::size_t>(i)].matrix();
        const ComplexMatrix b = out[static_cast<std::size_t>(j)].matrix();
        worst = std::max(worst, sup_norm(a * b - b * a));
      }
    }
    if (worst > commutator_floor) return out;
  }
  throw std::runtime_error(
      "random_noncommuting_triple: failed to sample a noncommuting triple");
}

}  // namespace qlm
