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

#include "qlm/logic.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace qlm {

namespace {

// Eigenvalue windows for the lattice operations on P+Q.
constexpr double kMeetWindow = 1e-8;     // eigenvalues within 2 +- window
constexpr double kSupportFloor = 1e-8;   // eigenvalues above the floor

Projector projector_from_window(const ComplexMatrix& sum, double lo,
                                double hi) {
  EigenSystem sys = eig_hermitian(sum);
  std::vector<Eigen::Index> picked;
  for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
    if (sys.values[i] >= lo && sys.values[i] <= hi) picked.push_back(i);
  }
  if (picked.empty()) {
    return Projector::zero(sum.rows());
  }
  ComplexMatrix basis(sum.rows(), static_cast<Eigen::Index>(picked.size()));
  for (std::size_t k = 0; k < picked.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = sys.vectors.col(picked[k]);
  }
  return Projector::from_orthonormal_basis(basis);
}

void require_same_dim(const Projector& p, const Projector& q,
                      const char* what) {
  if (p.dim() != q.dim()) {
    std::ostringstream os;
    os << what << ": projectors act on different spaces (" << p.dim()
       << " vs " << q.dim() << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

Projector Projector::validated(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.size() == 0) {
    throw std::invalid_argument("Projector: matrix must be square");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("Projector: non-finite entries");
  }
  const double herm_dev = sup_norm(m - m.adjoint());
  if (herm_dev > 1e-10) {
    std::ostringstream os;
    os << "Projector: not Hermitian, sup|M - M^dagger| = " << herm_dev;
    throw std::invalid_argument(os.str());
  }
  const double idem_dev = sup_norm(m * m - m);
  if (idem_dev > 1e-9) {
    std::ostringstream os;
    os << "Projector: not idempotent, sup|M^2 - M| = " << idem_dev;
    throw std::invalid_argument(os.str());
  }
  return Projector((m + m.adjoint()) / 2.0);
}

Projector Projector::from_orthonormal_basis(const ComplexMatrix& basis) {
  ComplexMatrix m = basis * basis.adjoint();
  return Projector((m + m.adjoint()) / 2.0);
}

Projector Projector::zero(Eigen::Index dim) {
  return Projector(ComplexMatrix::Zero(dim, dim));
}

Projector Projector::identity(Eigen::Index dim) {
  return Projector(ComplexMatrix::Identity(dim, dim));
}

Eigen::Index Projector::rank() const {
  return static_cast<Eigen::Index>(std::lround(matrix_.trace().real()));
}

Projector complement(const Projector& p) {
  return Projector::validated(
      ComplexMatrix::Identity(p.dim(), p.dim()) - p.matrix());
}

Projector meet(const Projector& p, const Projector& q) {
  require_same_dim(p, q, "meet");
  const ComplexMatrix sum = p.matrix() + q.matrix();
  return projector_from_window(sum, 2.0 - kMeetWindow, 2.0 + kMeetWindow);
}

Projector join(const Projector& p, const Projector& q) {
  require_same_dim(p, q, "join");
  const ComplexMatrix sum = p.matrix() + q.matrix();
  return projector_from_window(sum, kSupportFloor,
                               2.0 + kMeetWindow);
}

bool commute(const Projector& p, const Projector& q, double tol) {
  require_same_dim(p, q, "commute");
  return sup_norm(p.matrix() * q.matrix() - q.matrix() * p.matrix()) <= tol;
}

namespace {

// Shared enumeration core: evaluates both sides of the distributive law
// for every ordered triple over the given elements, reporting through a
// callback. Pairwise meets and joins are computed once.
template <std::size_t N, typename Report>
void enumerate_distributivity(const std::array<Projector, N>& elems,
                              Report&& report) {
  std::array<std::array<ComplexMatrix, N>, N> meets;
  std::array<std::array<ComplexMatrix, N>, N> joins;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      meets[i][j] = meet(elems[i], elems[j]).matrix();
      joins[i][j] = join(elems[i], elems[j]).matrix();
    }
  }
  for (std::size_t x = 0; x < N; ++x) {
    for (std::size_t y = 0; y < N; ++y) {
      for (std::size_t z = 0; z < N; ++z) {
        const ComplexMatrix lhs =
            meet(elems[x], Projector::validated(joins[y][z])).matrix();
        const ComplexMatrix rhs =
            join(Projector::validated(meets[x][y]),
                 Projector::validated(meets[x][z]))
                .matrix();
        report(x, y, z, lhs, rhs);
      }
    }
  }
}

}  // namespace

std::vector<DistributivityViolation> distributivity_violations(
    const Projector& p, const Projector& q, const Projector& r, double tol) {
  require_same_dim(p, q, "distributivity_violations");
  require_same_dim(p, r, "distributivity_violations");
  static const std::array<const char*, 6> names = {"P",  "Q",  "R",
                                                   "Pc", "Qc", "Rc"};
  const std::array<Projector, 6> elems = {
      p, q, r, complement(p), complement(q), complement(r)};
  std::vector<DistributivityViolation> violations;
  enumerate_distributivity(
      elems, [&](std::size_t x, std::size_t y, std::size_t z,
                 const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
        const double dev = sup_norm(lhs - rhs);
        if (dev > tol) {
          violations.push_back(
              DistributivityViolation{names[x], names[y], names[z], dev});
        }
      });
  return violations;
}

bool state_distributivity(const Projector& p, const Projector& q,
                          const StateVector& psi, double tol) {
  require_same_dim(p, q, "state_distributivity");
  if (psi.dim() != p.dim()) {
    throw std::invalid_argument(
        "state_distributivity: state dimension differs from projectors");
  }
  const std::array<Projector, 4> elems = {p, q, complement(p),
                                          complement(q)};
  bool holds = true;
  enumerate_distributivity(elems, [&](std::size_t, std::size_t, std::size_t,
                                      const ComplexMatrix& lhs,
                                      const ComplexMatrix& rhs) {
    if (!holds) return;
    const double dev = ((lhs - rhs) * psi.amplitudes()).norm();
    if (dev > tol) holds = false;
  });
  return holds;
}

}  // namespace qlm
