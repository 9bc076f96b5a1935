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

#include "qlm/instruments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qlm {

namespace {

std::string format_eigenvalue(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  // Avoid the "-0" label.
  if (std::string(buf) == "-0") return "0";
  return buf;
}

}  // namespace

Superoperator::Superoperator(std::vector<ComplexMatrix> kraus)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) {
    throw std::invalid_argument("Superoperator: empty Kraus list");
  }
  const Eigen::Index d = kraus_.front().rows();
  for (const auto& k : kraus_) {
    if (k.rows() != d || k.cols() != d) {
      throw std::invalid_argument(
          "Superoperator: Kraus operators must be square with equal "
          "dimensions");
    }
    if (!k.allFinite()) {
      throw std::invalid_argument("Superoperator: non-finite Kraus entries");
    }
  }
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
  for (const auto& k : kraus_) {
    out += k * rho * k.adjoint();
  }
  return out;
}

ComplexMatrix Superoperator::gram() const {
  ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
  for (const auto& k : kraus_) {
    out += k.adjoint() * k;
  }
  return out;
}

Effect Effect::validated(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.size() == 0) {
    throw std::invalid_argument("Effect: matrix must be square");
  }
  const double herm_dev = sup_norm(m - m.adjoint());
  if (herm_dev > tol) {
    std::ostringstream os;
    os << "Effect: not Hermitian, sup|M - M^dagger| = " << herm_dev;
    throw std::invalid_argument(os.str());
  }
  const ComplexMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h,
                                                      Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (lo < -tol || hi > 1.0 + tol) {
    std::ostringstream os;
    os << "Effect: spectrum [" << lo << ", " << hi << "] escapes [0, 1]";
    throw std::invalid_argument(os.str());
  }
  return Effect(h);
}

QuantumInstrument QuantumInstrument::validated(
    std::vector<std::string> outcomes, std::vector<Superoperator> maps,
    double tol) {
  if (outcomes.empty() || outcomes.size() != maps.size()) {
    throw std::invalid_argument(
        "QuantumInstrument: outcome labels and maps must pair up and be "
        "nonempty");
  }
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    for (std::size_t j = i + 1; j < outcomes.size(); ++j) {
      if (outcomes[i] == outcomes[j]) {
        throw std::invalid_argument(
            "QuantumInstrument: duplicate outcome label '" + outcomes[i] +
            "'");
      }
    }
  }
  const Eigen::Index d = maps.front().dim();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (const auto& m : maps) {
    if (m.dim() != d) {
      throw std::invalid_argument(
          "QuantumInstrument: outcome maps act on different spaces");
    }
    total += m.gram();
  }
  const double dev = sup_norm(total - ComplexMatrix::Identity(d, d));
  if (dev > tol) {
    std::ostringstream os;
    os << "QuantumInstrument: Kraus completeness fails, sup|sum K^dagger K "
          "- 1| = "
       << dev;
    throw std::invalid_argument(os.str());
  }
  return QuantumInstrument(std::move(outcomes), std::move(maps));
}

std::size_t QuantumInstrument::outcome_index(
    const std::string& outcome) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i] == outcome) return i;
  }
  throw std::invalid_argument("unknown outcome label '" + outcome + "'");
}

QuantumInstrument projection_instrument(const HermitianObservable& a) {
  std::vector<std::string> outcomes;
  std::vector<Superoperator> maps;
  for (const auto& line : a.lines()) {
    outcomes.push_back(format_eigenvalue(line.eigenvalue));
    maps.push_back(Superoperator({line.projector}));
  }
  return QuantumInstrument::validated(std::move(outcomes), std::move(maps));
}

QuantumInstrument yes_no_instrument(const Projector& p) {
  const ComplexMatrix pc =
      ComplexMatrix::Identity(p.dim(), p.dim()) - p.matrix();
  return QuantumInstrument::validated(
      {"yes", "no"},
      {Superoperator({p.matrix()}), Superoperator({pc})});
}

QuantumInstrument trivial_instrument(Eigen::Index dim,
                                     const std::string& outcome) {
  return QuantumInstrument::validated(
      {outcome}, {Superoperator({ComplexMatrix::Identity(dim, dim)})});
}

double outcome_probability(const QuantumInstrument& instr,
                           const std::string& outcome,
                           const DensityOperator& rho) {
  if (rho.dim() != instr.dim()) {
    throw std::invalid_argument(
        "outcome_probability: state dimension differs from instrument");
  }
  const std::size_t idx = instr.outcome_index(outcome);
  const double p = instr.maps()[idx].apply(rho.matrix()).trace().real();
  return std::clamp(p, 0.0, 1.0);
}

DensityOperator state_update(const QuantumInstrument& instr,
                             const std::string& outcome,
                             const DensityOperator& rho) {
  if (rho.dim() != instr.dim()) {
    throw std::invalid_argument(
        "state_update: state dimension differs from instrument");
  }
  const std::size_t idx = instr.outcome_index(outcome);
  ComplexMatrix sigma = instr.maps()[idx].apply(rho.matrix());
  const double p = sigma.trace().real();
  if (p < kNullEventThreshold) {
    std::ostringstream os;
    os << "state_update: conditioning on null event '" << outcome
       << "' (probability " << p << ")";
    throw std::runtime_error(os.str());
  }
  sigma /= p;
  return DensityOperator::unchecked((sigma + sigma.adjoint()) / 2.0);
}

std::vector<Effect> povm_of(const QuantumInstrument& instr) {
  std::vector<Effect> povm;
  povm.reserve(instr.maps().size());
  for (const auto& m : instr.maps()) {
    povm.push_back(Effect::validated(m.gram()));
  }
  return povm;
}

SequentialDistribution::SequentialDistribution(
    std::vector<std::vector<std::string>> step_outcomes,
    std::vector<double> probs)
    : step_outcomes_(std::move(step_outcomes)), probs_(std::move(probs)) {
  std::size_t expected = 1;
  for (const auto& labels : step_outcomes_) expected *= labels.size();
  if (expected != probs_.size()) {
    throw std::invalid_argument(
        "SequentialDistribution: table size does not match outcome counts");
  }
}

double SequentialDistribution::prob(
    const std::vector<std::size_t>& indices) const {
  if (indices.size() != step_outcomes_.size()) {
    throw std::invalid_argument(
        "SequentialDistribution: index tuple length mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t s = 0; s < indices.size(); ++s) {
    if (indices[s] >= step_outcomes_[s].size()) {
      throw std::invalid_argument(
          "SequentialDistribution: outcome index out of range");
    }
    flat = flat * step_outcomes_[s].size() + indices[s];
  }
  return probs_[flat];
}

double SequentialDistribution::prob(
    const std::vector<std::string>& outcomes) const {
  if (outcomes.size() != step_outcomes_.size()) {
    throw std::invalid_argument(
        "SequentialDistribution: outcome tuple length mismatch");
  }
  std::vector<std::size_t> indices(outcomes.size());
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    const auto& labels = step_outcomes_[s];
    const auto it = std::find(labels.begin(), labels.end(), outcomes[s]);
    if (it == labels.end()) {
      throw std::invalid_argument("unknown outcome label '" + outcomes[s] +
                                  "' at step " + std::to_string(s));
    }
    indices[s] = static_cast<std::size_t>(it - labels.begin());
  }
  return prob(indices);
}

SequentialDistribution SequentialDistribution::marginal(
    std::size_t prefix) const {
  if (prefix > step_outcomes_.size()) {
    throw std::invalid_argument(
        "SequentialDistribution: marginal prefix too long");
  }
  std::size_t tail = 1;
  for (std::size_t s = prefix; s < step_outcomes_.size(); ++s) {
    tail *= step_outcomes_[s].size();
  }
  std::vector<double> reduced(probs_.size() / tail, 0.0);
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    reduced[i / tail] += probs_[i];
  }
  return SequentialDistribution(
      {step_outcomes_.begin(), step_outcomes_.begin() + prefix},
      std::move(reduced));
}

double SequentialDistribution::total() const {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

namespace {

void fill_sequential(const std::vector<QuantumInstrument>& instruments,
                     std::size_t step, const ComplexMatrix& rho,
                     std::vector<double>& out) {
  if (step == instruments.size()) {
    out.push_back(rho.trace().real());
    return;
  }
  for (const auto& map : instruments[step].maps()) {
    fill_sequential(instruments, step + 1, map.apply(rho), out);
  }
}

}  // namespace

SequentialDistribution sequential_distribution(
    const std::vector<QuantumInstrument>& instruments,
    const DensityOperator& rho) {
  if (instruments.empty()) {
    throw std::invalid_argument("sequential_distribution: no instruments");
  }
  std::vector<std::vector<std::string>> step_outcomes;
  for (const auto& instr : instruments) {
    if (instr.dim() != rho.dim()) {
      throw std::invalid_argument(
          "sequential_distribution: instrument dimension differs from "
          "state");
    }
    step_outcomes.push_back(instr.outcomes());
  }
  std::vector<double> probs;
  fill_sequential(instruments, 0, rho.matrix(), probs);
  for (double& p : probs) p = std::clamp(p, 0.0, 1.0);
  return SequentialDistribution(std::move(step_outcomes), std::move(probs));
}

QuantumInstrument indirect_instrument(const DensityOperator& probe,
                                      const ComplexMatrix& u,
                                      const std::vector<Projector>& meter,
                                      std::vector<std::string> outcomes) {
  const Eigen::Index dp = probe.dim();
  if (u.rows() != u.cols() || u.rows() % dp != 0) {
    throw std::invalid_argument(
        "indirect_instrument: unitary dimension does not factor over the "
        "probe");
  }
  const Eigen::Index ds = u.rows() / dp;
  const double unitary_dev =
      sup_norm(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.rows()));
  if (unitary_dev > 1e-10) {
    std::ostringstream os;
    os << "indirect_instrument: interaction not unitary, sup|U^dagger U - "
          "1| = "
       << unitary_dev;
    throw std::invalid_argument(os.str());
  }
  if (meter.empty()) {
    throw std::invalid_argument("indirect_instrument: empty meter");
  }
  ComplexMatrix meter_sum = ComplexMatrix::Zero(dp, dp);
  for (const auto& m : meter) {
    if (m.dim() != dp) {
      throw std::invalid_argument(
          "indirect_instrument: meter projector dimension differs from "
          "probe");
    }
    meter_sum += m.matrix();
  }
  if (sup_norm(meter_sum - ComplexMatrix::Identity(dp, dp)) > 1e-10) {
    throw std::invalid_argument(
        "indirect_instrument: meter projectors do not resolve the probe "
        "identity");
  }
  for (std::size_t i = 0; i < meter.size(); ++i) {
    for (std::size_t j = i + 1; j < meter.size(); ++j) {
      if (sup_norm(meter[i].matrix() * meter[j].matrix()) > 1e-10) {
        throw std::invalid_argument(
            "indirect_instrument: meter projectors overlap");
      }
    }
  }
  if (outcomes.empty()) {
    for (std::size_t x = 0; x < meter.size(); ++x) {
      outcomes.push_back(std::to_string(x));
    }
  }
  if (outcomes.size() != meter.size()) {
    throw std::invalid_argument(
        "indirect_instrument: outcome labels do not pair with meter "
        "projectors");
  }

  // Probe spectral decomposition; zero-weight eigenvectors drop out.
  EigenSystem probe_sys = eig_hermitian(probe.matrix());
  std::vector<std::pair<double, ComplexVector>> probe_modes;
  for (Eigen::Index m = 0; m < probe_sys.values.size(); ++m) {
    if (probe_sys.values[m] > 1e-14) {
      probe_modes.emplace_back(probe_sys.values[m], probe_sys.vectors.col(m));
    }
  }

  std::vector<Superoperator> maps;
  for (const auto& mx : meter) {
    // Orthonormal basis of the meter projector's range.
    EigenSystem mx_sys = eig_hermitian(mx.matrix());
    std::vector<ComplexVector> range_basis;
    for (Eigen::Index r = 0; r < mx_sys.values.size(); ++r) {
      if (mx_sys.values[r] > 0.5) range_basis.push_back(mx_sys.vectors.col(r));
    }
    std::vector<ComplexMatrix> kraus;
    if (range_basis.empty() || probe_modes.empty()) {
      kraus.push_back(ComplexMatrix::Zero(ds, ds));
    }
    for (const auto& r : range_basis) {
      for (const auto& [weight, m] : probe_modes) {
        // K = sqrt(w) (1 (x) <r|) U (1 (x) |m>), assembled entrywise from
        // the composite index (i*dp + p).
        ComplexMatrix k = ComplexMatrix::Zero(ds, ds);
        for (Eigen::Index i = 0; i < ds; ++i) {
          for (Eigen::Index j = 0; j < ds; ++j) {
            Complex sum = 0.0;
            for (Eigen::Index pr = 0; pr < dp; ++pr) {
              for (Eigen::Index pc = 0; pc < dp; ++pc) {
                sum += std::conj(r(pr)) * u(i * dp + pr, j * dp + pc) * m(pc);
              }
            }
            k(i, j) = sum;
          }
        }
        kraus.push_back(std::sqrt(weight) * k);
      }
    }
    maps.push_back(Superoperator(std::move(kraus)));
  }
  return QuantumInstrument::validated(std::move(outcomes), std::move(maps));
}

namespace {

// Extends an isometry given by orthonormal columns placed at prescribed
// column indices to a full unitary via Gram-Schmidt over the standard
// basis.
ComplexMatrix complete_to_unitary(Eigen::Index n,
                                  const std::vector<Eigen::Index>& positions,
                                  const std::vector<ComplexVector>& columns) {
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  std::vector<ComplexVector> ortho;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    u.col(positions[c]) = columns[c];
    ortho.push_back(columns[c]);
  }
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (std::find(positions.begin(), positions.end(), c) == positions.end()) {
      free_cols.push_back(c);
    }
  }
  std::size_t next = 0;
  for (Eigen::Index e = 0; e < n && next < free_cols.size(); ++e) {
    ComplexVector v = ComplexVector::Zero(n);
    v(e) = 1.0;
    for (const auto& q : ortho) v -= q * q.dot(v);
    // Re-orthogonalize once; plain Gram-Schmidt drifts for near-parallel
    // candidates.
    for (const auto& q : ortho) v -= q * q.dot(v);
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    v /= norm;
    u.col(free_cols[next++]) = v;
    ortho.push_back(v);
  }
  if (next != free_cols.size()) {
    throw std::runtime_error(
        "unitary_dilation: failed to complete isometry to a unitary");
  }
  return u;
}

}  // namespace

UnitaryDilation unitary_dilation(const QuantumInstrument& instr) {
  const Eigen::Index ds = instr.dim();
  Eigen::Index total_kraus = 0;
  for (const auto& m : instr.maps()) {
    total_kraus += static_cast<Eigen::Index>(m.kraus().size());
  }
  const Eigen::Index dp = total_kraus;
  const Eigen::Index n = ds * dp;

  // Columns of the isometry V(|j> (x) |0>) = sum_k (K_k |j>) (x) |k>.
  std::vector<Eigen::Index> positions;
  std::vector<ComplexVector> columns;
  for (Eigen::Index j = 0; j < ds; ++j) {
    ComplexVector col = ComplexVector::Zero(n);
    Eigen::Index k_index = 0;
    for (const auto& m : instr.maps()) {
      for (const auto& k : m.kraus()) {
        for (Eigen::Index i = 0; i < ds; ++i) {
          col(i * dp + k_index) = k(i, j);
        }
        ++k_index;
      }
    }
    positions.push_back(j * dp);
    columns.push_back(col);
  }
  ComplexMatrix u = complete_to_unitary(n, positions, columns);

  ComplexVector probe_amp = ComplexVector::Zero(dp);
  probe_amp(0) = 1.0;
  DensityOperator probe =
      DensityOperator::from_pure(StateVector(probe_amp));

  std::vector<Projector> meter;
  Eigen::Index k_index = 0;
  for (const auto& m : instr.maps()) {
    ComplexMatrix proj = ComplexMatrix::Zero(dp, dp);
    for (std::size_t k = 0; k < m.kraus().size(); ++k) {
      proj(k_index, k_index) = 1.0;
      ++k_index;
    }
    meter.push_back(Projector::validated(proj));
  }
  return UnitaryDilation{std::move(probe), std::move(u), std::move(meter),
                         instr.outcomes()};
}

bool instruments_equal(const QuantumInstrument& a, const QuantumInstrument& b,
                       double tol) {
  if (a.dim() != b.dim()) return false;
  if (a.outcomes().size() != b.outcomes().size()) return false;
  const Eigen::Index d = a.dim();
  // Hermitian basis: E_ii, (E_ij + E_ji), (i E_ij - i E_ji).
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      ComplexMatrix h = ComplexMatrix::Zero(d, d);
      if (i == j) {
        h(i, i) = 1.0;
        basis.push_back(h);
      } else {
        h(i, j) = 1.0;
        h(j, i) = 1.0;
        basis.push_back(h);
        ComplexMatrix g = ComplexMatrix::Zero(d, d);
        g(i, j) = Complex(0.0, 1.0);
        g(j, i) = Complex(0.0, -1.0);
        basis.push_back(g);
      }
    }
  }
  for (std::size_t x = 0; x < a.maps().size(); ++x) {
    for (const auto& h : basis) {
      if (sup_norm(a.maps()[x].apply(h) - b.maps()[x].apply(h)) > tol) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace qlm
