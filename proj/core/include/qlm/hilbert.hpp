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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qlm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Entrywise sup norm; all tolerance checks in the library use this norm
// unless a function documents otherwise.
double sup_norm(const ComplexMatrix& m);

bool is_finite(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);

// Numeric guards shared by the validating constructors.
struct Tolerances {
  double hermiticity = 1e-10;  // sup norm of M - M^dagger
  double psd_floor = 1e-10;    // eigenvalues >= -psd_floor
  double trace = 1e-10;        // |tr M - 1|
};

// Largest tensor-product dimension accepted by default.
inline constexpr Eigen::Index kDefaultDimensionCap = 4096;

// Unit vector in C^d. The constructor normalizes; a zero or non-finite
// input is rejected.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }

 private:
  ComplexVector amplitudes_;
};

StateVector make_pure_state(const ComplexVector& amplitudes);

// True iff the states coincide up to a global phase: | |<a|b>| - 1 | <= tol.
bool states_equal(const StateVector& a, const StateVector& b,
                  double tol = 1e-10);

enum class DensityViolationKind { NotHermitian, NotPositive, TraceNotOne };

struct DensityViolation {
  DensityViolationKind kind;
  double magnitude;  // deviation that tripped the check
  std::string message;
};

// Hermitian, positive semidefinite, unit-trace operator.
class DensityOperator {
 public:
  static DensityOperator validated(const ComplexMatrix& m,
                                   const Tolerances& tol = {});
  static DensityOperator from_pure(const StateVector& psi);
  // Skips validation; for internal steps whose output is valid by
  // construction (integrator states, normalized conditional updates).
  static DensityOperator unchecked(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

// All violated density conditions, each reported separately; empty when
// m is a valid density operator.
std::vector<DensityViolation> check_density(const ComplexMatrix& m,
                                            const Tolerances& tol = {});

DensityOperator density_from_pure(const StateVector& psi);

// Kronecker product with the row-major block convention:
// (A (x) B)[(ia*dimB + ib), (ja*dimB + jb)] = A(ia,ja) * B(ib,jb).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                     Eigen::Index dim_cap = kDefaultDimensionCap);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b,
                     Eigen::Index dim_cap = kDefaultDimensionCap);

enum class Subsystem { First, Second };

// Partial trace of an operator on C^{dim_a} (x) C^{dim_b}; keeps the
// named factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, Eigen::Index dim_a,
                            Eigen::Index dim_b, Subsystem keep);

struct EigenSystem {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // column k pairs with values[k]; orthonormal
};

// Eigendecomposition for Hermitian input. Rejects matrices with
// sup_norm(M - M^dagger) > 1e-8; symmetrizes the remainder before solving.
EigenSystem eig_hermitian(const ComplexMatrix& m);

struct SpectralLine {
  double eigenvalue;      // representative value of the group
  ComplexMatrix projector;  // orthogonal projector onto the eigenspace
};

// Hermitian operator with its spectral decomposition. Nearly equal
// eigenvalues (relative gap <= 1e-9) are grouped into one eigenspace.
class HermitianObservable {
 public:
  explicit HermitianObservable(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<SpectralLine>& lines() const { return lines_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  std::vector<SpectralLine> lines_;
};

struct SpectrumAdditivityReport {
  RealVector spec_a;
  RealVector spec_b;
  RealVector spec_sum;               // spectrum of A + B
  std::vector<double> pairwise_sums;  // sorted multiset {a_i + b_j}
  bool commuting = false;
  // True iff A and B commute and spec(A+B) matches the joint-eigenbasis
  // sums a_i + b_i.
  bool additive = false;
};

SpectrumAdditivityReport spectrum_additivity_report(const ComplexMatrix& a,
                                                    const ComplexMatrix& b);

// Pauli matrices and the spin observable cos(theta)*sigma_z +
// sin(theta)*sigma_x used by the correlation fixtures.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix spin_observable(double theta);

}  // namespace qlm
