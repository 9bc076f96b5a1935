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

#include "qlm/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qlm {

double sup_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return sup_norm(m - m.adjoint()) <= tol;
}

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": matrix must be square, got " << m.rows() << "x"
       << m.cols();
    throw std::invalid_argument(os.str());
  }
  if (m.size() == 0) {
    std::ostringstream os;
    os << what << ": matrix must be nonempty";
    throw std::invalid_argument(os.str());
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    std::ostringstream os;
    os << what << ": input contains non-finite entries";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw std::invalid_argument("StateVector: amplitude vector is empty");
  }
  if (!amplitudes_.allFinite()) {
    throw std::invalid_argument(
        "StateVector: amplitudes contain non-finite entries");
  }
  const double norm = amplitudes_.norm();
  if (norm == 0.0) {
    throw std::invalid_argument(
        "StateVector: zero vector has no normalization");
  }
  amplitudes_ /= norm;
}

StateVector make_pure_state(const ComplexVector& amplitudes) {
  return StateVector(amplitudes);
}

bool states_equal(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  const double overlap = std::abs(a.amplitudes().dot(b.amplitudes()));
  return std::abs(overlap - 1.0) <= tol;
}

std::vector<DensityViolation> check_density(const ComplexMatrix& m,
                                            const Tolerances& tol) {
  require_square(m, "check_density");
  require_finite(m, "check_density");
  std::vector<DensityViolation> violations;

  const double herm_dev = sup_norm(m - m.adjoint());
  if (herm_dev > tol.hermiticity) {
    std::ostringstream os;
    os << "not Hermitian: sup|M - M^dagger| = " << herm_dev;
    violations.push_back(
        {DensityViolationKind::NotHermitian, herm_dev, os.str()});
  }

  // Positivity and trace are judged on the symmetrized matrix so a tiny
  // Hermiticity defect does not double-report.
  const ComplexMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h,
                                                      Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol.psd_floor) {
    std::ostringstream os;
    os << "not positive semidefinite: min eigenvalue = " << min_eig;
    violations.push_back(
        {DensityViolationKind::NotPositive, -min_eig, os.str()});
  }

  const double trace_dev = std::abs(h.trace().real() - 1.0) +
                           std::abs(h.trace().imag());
  if (trace_dev > tol.trace) {
    std::ostringstream os;
    os << "trace differs from one by " << trace_dev;
    violations.push_back(
        {DensityViolationKind::TraceNotOne, trace_dev, os.str()});
  }
  return violations;
}

DensityOperator DensityOperator::validated(const ComplexMatrix& m,
                                           const Tolerances& tol) {
  const auto violations = check_density(m, tol);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid density operator:";
    for (const auto& v : violations) os << " [" << v.message << "]";
    throw std::invalid_argument(os.str());
  }
  return DensityOperator((m + m.adjoint()) / 2.0);
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  const ComplexVector& v = psi.amplitudes();
  return DensityOperator(v * v.adjoint());
}

DensityOperator DensityOperator::unchecked(ComplexMatrix m) {
  return DensityOperator(std::move(m));
}

DensityOperator density_from_pure(const StateVector& psi) {
  return DensityOperator::from_pure(psi);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                     Eigen::Index dim_cap) {
  require_finite(a, "tensor");
  require_finite(b, "tensor");
  if (a.rows() * b.rows() > dim_cap || a.cols() * b.cols() > dim_cap) {
    std::ostringstream os;
    os << "tensor: product dimension " << a.rows() * b.rows() << "x"
       << a.cols() * b.cols() << " exceeds cap " << dim_cap;
    throw std::invalid_argument(os.str());
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b,
                     Eigen::Index dim_cap) {
  if (a.size() * b.size() > dim_cap) {
    std::ostringstream os;
    os << "tensor: product dimension " << a.size() * b.size()
       << " exceeds cap " << dim_cap;
    throw std::invalid_argument(os.str());
  }
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Eigen::Index dim_a,
                            Eigen::Index dim_b, Subsystem keep) {
  require_square(m, "partial_trace");
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != dim_a * dim_b) {
    std::ostringstream os;
    os << "partial_trace: matrix dimension " << m.rows()
       << " does not factor as " << dim_a << "*" << dim_b;
    throw std::invalid_argument(os.str());
  }
  if (keep == Subsystem::First) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i) {
      for (Eigen::Index j = 0; j < dim_a; ++j) {
        Complex sum = 0.0;
        for (Eigen::Index k = 0; k < dim_b; ++k) {
          sum += m(i * dim_b + k, j * dim_b + k);
        }
        out(i, j) = sum;
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Eigen::Index i = 0; i < dim_b; ++i) {
    for (Eigen::Index j = 0; j < dim_b; ++j) {
      Complex sum = 0.0;
      for (Eigen::Index k = 0; k < dim_a; ++k) {
        sum += m(k * dim_b + i, k * dim_b + j);
      }
      out(i, j) = sum;
    }
  }
  return out;
}

EigenSystem eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  require_finite(m, "eig_hermitian");
  const double herm_dev = sup_norm(m - m.adjoint());
  if (herm_dev > 1e-8) {
    std::ostringstream os;
    os << "eig_hermitian: input not Hermitian, sup|M - M^dagger| = "
       << herm_dev;
    throw std::invalid_argument(os.str());
  }
  const ComplexMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// Groups ascending eigenvalues whose neighbors sit within a 1e-9 relative
// gap and returns [start, end) index ranges.
std::vector<std::pair<Eigen::Index, Eigen::Index>> degeneracy_groups(
    const RealVector& values) {
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  std::vector<std::pair<Eigen::Index, Eigen::Index>> groups;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > 1e-9 * scale) {
      groups.emplace_back(start, i);
      start = i;
    }
  }
  return groups;
}

}  // namespace

HermitianObservable::HermitianObservable(const ComplexMatrix& m) {
  EigenSystem sys = eig_hermitian(m);
  matrix_ = (m + m.adjoint()) / 2.0;
  for (const auto& [start, end] : degeneracy_groups(sys.values)) {
    const Eigen::Index count = end - start;
    const ComplexMatrix basis = sys.vectors.middleCols(start, count);
    lines_.push_back(SpectralLine{
        sys.values.segment(start, count).mean(), basis * basis.adjoint()});
  }
}

SpectrumAdditivityReport spectrum_additivity_report(const ComplexMatrix& a,
                                                    const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(
        "spectrum_additivity_report: operands have different shapes");
  }
  EigenSystem ea = eig_hermitian(a);
  EigenSystem eb = eig_hermitian(b);
  EigenSystem esum = eig_hermitian(a + b);

  SpectrumAdditivityReport report;
  report.spec_a = ea.values;
  report.spec_b = eb.values;
  report.spec_sum = esum.values;
  report.pairwise_sums.reserve(ea.values.size() * eb.values.size());
  for (Eigen::Index i = 0; i < ea.values.size(); ++i) {
    for (Eigen::Index j = 0; j < eb.values.size(); ++j) {
      report.pairwise_sums.push_back(ea.values[i] + eb.values[j]);
    }
  }
  std::sort(report.pairwise_sums.begin(), report.pairwise_sums.end());

  const double scale =
      std::max({1.0, sup_norm(a), sup_norm(b)});
  report.commuting = sup_norm(a * b - b * a) <= 1e-9 * scale;
  if (report.commuting) {
    // Joint eigenbasis: diagonalize B inside each eigenspace of A, then
    // compare the aligned sums a_i + b_i with spec(A+B).
    std::vector<double> joint_sums;
    const ComplexMatrix bh = (b + b.adjoint()) / 2.0;
    for (const auto& [start, end] : degeneracy_groups(ea.values)) {
      const Eigen::Index count = end - start;
      const ComplexMatrix basis = ea.vectors.middleCols(start, count);
      const ComplexMatrix b_block = basis.adjoint() * bh * basis;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> sub(
          (b_block + b_block.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
      const double a_val = ea.values.segment(start, count).mean();
      for (Eigen::Index k = 0; k < count; ++k) {
        joint_sums.push_back(a_val + sub.eigenvalues()[k]);
      }
    }
    std::sort(joint_sums.begin(), joint_sums.end());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < esum.values.size(); ++i) {
      worst = std::max(worst, std::abs(joint_sums[i] - esum.values[i]));
    }
    report.additive = worst <= 1e-8 * scale;
  }
  return report;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix spin_observable(double theta) {
  return std::cos(theta) * pauli_z() + std::sin(theta) * pauli_x();
}

}  // namespace qlm
