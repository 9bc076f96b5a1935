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

#include "qlm/open_systems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qlm {

namespace {

constexpr double kClipFloor = 1e-8;
constexpr double kTraceDriftError = 1e-6;

double entropy_from_eigenvalues(const RealVector& values) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double p = values[i];
    if (p > 0.0) s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

}  // namespace

GkslGenerator::GkslGenerator(ComplexMatrix hamiltonian,
                             std::vector<ComplexMatrix> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  if (hamiltonian_.rows() != hamiltonian_.cols() ||
      hamiltonian_.size() == 0) {
    throw std::invalid_argument("GkslGenerator: Hamiltonian must be square");
  }
  if (!is_hermitian(hamiltonian_, 1e-8)) {
    throw std::invalid_argument(
        "GkslGenerator: Hamiltonian must be Hermitian");
  }
  hamiltonian_ = (hamiltonian_ + hamiltonian_.adjoint()) / 2.0;
  for (const auto& l : jumps_) {
    if (l.rows() != hamiltonian_.rows() || l.cols() != hamiltonian_.cols()) {
      throw std::invalid_argument(
          "GkslGenerator: jump operator dimension differs from the "
          "Hamiltonian");
    }
    if (!l.allFinite()) {
      throw std::invalid_argument(
          "GkslGenerator: jump operator has non-finite entries");
    }
  }
}

ComplexMatrix gksl_rhs(const GkslGenerator& gen, const ComplexMatrix& rho) {
  const ComplexMatrix& h = gen.hamiltonian();
  ComplexMatrix out = Complex(0.0, -1.0) * (h * rho - rho * h);
  for (const auto& l : gen.jumps()) {
    const ComplexMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

double von_neumann_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix(),
                                                      Eigen::EigenvaluesOnly);
  return entropy_from_eigenvalues(solver.eigenvalues());
}

double linear_entropy(const DensityOperator& rho) {
  return 1.0 - (rho.matrix() * rho.matrix()).trace().real();
}

Trajectory evolve(const GkslGenerator& gen, const DensityOperator& rho0,
                  double t_end, double dt) {
  if (rho0.dim() != gen.dim()) {
    throw std::invalid_argument(
        "evolve: state dimension differs from generator");
  }
  if (!(t_end > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("evolve: t_end and dt must be positive");
  }
  const long long steps = std::max(1LL, std::llround(t_end / dt));
  const double step = t_end / static_cast<double>(steps);

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);

  ComplexMatrix rho = rho0.matrix();
  for (long long n = 0; n <= steps; ++n) {
    const double t = step * static_cast<double>(n);
    // Record first, then advance; the loop records steps+1 states.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
    RealVector eigs = solver.eigenvalues();
    if (eigs.minCoeff() < -kClipFloor) {
      ++traj.clip_events;
      RealVector clipped = eigs.cwiseMax(0.0);
      const double total = clipped.sum();
      if (total <= 0.0) {
        throw std::runtime_error(
            "evolve: state collapsed to zero after clipping; use a smaller "
            "dt");
      }
      clipped /= total;
      rho = solver.eigenvectors() * clipped.asDiagonal() *
            solver.eigenvectors().adjoint();
      rho = (rho + rho.adjoint()) / 2.0;
      eigs = clipped;
    }
    const double drift = std::abs(rho.trace().real() - 1.0);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (drift > kTraceDriftError) {
      std::ostringstream os;
      os << "evolve: trace drift " << drift << " at t = " << t
         << " signals step instability; use a smaller dt";
      throw std::runtime_error(os.str());
    }

    traj.times.push_back(t);
    traj.states.push_back(DensityOperator::unchecked(rho));
    traj.s_von_neumann.push_back(entropy_from_eigenvalues(eigs));
    traj.s_linear.push_back(1.0 - eigs.squaredNorm());

    if (n == steps) break;
    const ComplexMatrix k1 = gksl_rhs(gen, rho);
    const ComplexMatrix k2 = gksl_rhs(gen, rho + 0.5 * step * k1);
    const ComplexMatrix k3 = gksl_rhs(gen, rho + 0.5 * step * k2);
    const ComplexMatrix k4 = gksl_rhs(gen, rho + step * k3);
    rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = (rho + rho.adjoint()) / 2.0;
  }
  return traj;
}

HumpReport hump_profile(const Trajectory& traj, int window,
                        double noise_floor) {
  const std::vector<double>& s = traj.s_von_neumann;
  const std::size_t n = s.size();
  if (n < 3) {
    throw std::invalid_argument(
        "hump_profile: trajectory needs at least three points");
  }
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("hump_profile: window must be odd and >= 1");
  }

  // Centered moving average, window clamped at the ends.
  const int half = window / 2;
  std::vector<double> smooth(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= static_cast<std::size_t>(half) ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += s[j];
    smooth[i] = acc / static_cast<double>(hi - lo + 1);
  }

  HumpReport report;
  std::size_t i = 1;
  while (i + 1 < n) {
    if (smooth[i] > smooth[i - 1] && smooth[i] >= smooth[i + 1]) {
      // Extend over a flat top; the peak index is the plateau start.
      std::size_t j = i;
      while (j + 1 < n && smooth[j + 1] == smooth[i]) ++j;
      if (j + 1 < n && smooth[j + 1] < smooth[i]) {
        // Valleys on either side of the peak.
        std::size_t left = i;
        while (left > 0 && smooth[left - 1] <= smooth[left]) --left;
        std::size_t right = j;
        while (right + 1 < n && smooth[right + 1] <= smooth[right]) ++right;
        const double rise = smooth[i] - smooth[left];
        const double fall = smooth[i] - smooth[right];
        if (rise > noise_floor && fall > noise_floor) {
          report.peaks.push_back(HumpPeak{traj.times[i], s[i], rise, fall,
                                          traj.times[left],
                                          traj.times[right]});
        }
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  report.hump_count = static_cast<int>(report.peaks.size());
  report.camel_shaped = report.hump_count >= 1;
  return report;
}

StationaryState stationary_state(const GkslGenerator& gen, double tol) {
  const Eigen::Index d = gen.dim();
  const Eigen::Index n = d * d;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  // Column-major vectorization: vec(A rho B) = (B^T (x) A) vec(rho).
  ComplexMatrix lmat = ComplexMatrix::Zero(n, n);
  const ComplexMatrix& h = gen.hamiltonian();
  lmat -= Complex(0.0, 1.0) * (tensor(id, h, n) - tensor(h.transpose(), id, n));
  for (const auto& l : gen.jumps()) {
    const ComplexMatrix ldl = l.adjoint() * l;
    lmat += tensor(l.conjugate(), l, n);
    lmat -= 0.5 * tensor(id, ldl, n);
    lmat -= 0.5 * tensor(ldl.transpose(), id, n);
  }

  Eigen::JacobiSVD<ComplexMatrix> svd(
      lmat, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sing = svd.singularValues();
  const double scale = sing.size() > 0 ? sing.maxCoeff() : 0.0;
  const double null_tol = std::max(1e-12, 1e-12 * scale);
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index i = 0; i < sing.size(); ++i) {
    if (sing[i] <= null_tol) null_cols.push_back(i);
  }
  if (scale == 0.0) {
    // Zero generator: every state is stationary.
    null_cols.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) null_cols[i] = i;
  }
  if (null_cols.empty()) {
    throw std::runtime_error(
        "stationary_state: generator kernel is empty at working precision");
  }

  // vec of the candidate: unique null direction, or the orthogonal
  // projection of the maximally mixed state onto the kernel.
  ComplexVector vec_candidate;
  const bool non_unique = null_cols.size() > 1;
  if (!non_unique) {
    vec_candidate = svd.matrixV().col(null_cols.front());
  } else {
    ComplexMatrix mixed = id / static_cast<double>(d);
    ComplexVector vec_mixed =
        Eigen::Map<ComplexVector>(mixed.data(), n);
    vec_candidate = ComplexVector::Zero(n);
    for (const Eigen::Index c : null_cols) {
      const ComplexVector basis_vec = svd.matrixV().col(c);
      vec_candidate += basis_vec * basis_vec.dot(vec_mixed);
    }
  }

  ComplexMatrix candidate =
      Eigen::Map<ComplexMatrix>(vec_candidate.data(), d, d);
  candidate = (candidate + candidate.adjoint()) / 2.0;
  const double tr = candidate.trace().real();
  if (std::abs(tr) < 1e-10) {
    throw std::runtime_error(
        "stationary_state: kernel holds no unit-trace density");
  }
  candidate /= tr;

  const double residual = sup_norm(gksl_rhs(gen, candidate));
  if (residual > tol) {
    std::ostringstream os;
    os << "stationary_state: candidate residual " << residual
       << " exceeds tolerance " << tol;
    throw std::runtime_error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(candidate,
                                                      Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-8) {
    throw std::runtime_error(
        "stationary_state: kernel candidate is not positive semidefinite");
  }
  return StationaryState{DensityOperator::unchecked(std::move(candidate)),
                         non_unique};
}

std::vector<DecisionOutcome> decision_distribution(
    const DensityOperator& rho, const HermitianObservable& basis,
    double decoherence_threshold) {
  if (rho.dim() != basis.dim()) {
    throw std::invalid_argument(
        "decision_distribution: state and observable dimensions differ");
  }
  const auto& lines = basis.lines();
  // Coherence across distinct eigenspaces disqualifies the state;
  // coherence inside a degenerate eigenspace is basis gauge and is fine.
  double off_mass = 0.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (i == j) continue;
      off_mass = std::max(
          off_mass, sup_norm(lines[i].projector * rho.matrix() *
                             lines[j].projector));
    }
  }
  if (off_mass > decoherence_threshold) {
    std::ostringstream os;
    os << "decision_distribution: state not decohered in decision basis "
          "(off-diagonal mass "
       << off_mass << ")";
    throw std::runtime_error(os.str());
  }
  std::vector<DecisionOutcome> outcomes;
  outcomes.reserve(lines.size());
  for (const auto& line : lines) {
    const double p =
        std::clamp((line.projector * rho.matrix()).trace().real(), 0.0, 1.0);
    outcomes.push_back(DecisionOutcome{line.eigenvalue, p});
  }
  return outcomes;
}

OrderStabilityReport order_stability_report(
    const GkslGenerator& gen, const DensityOperator& rho0, Eigen::Index dim_a,
    Eigen::Index dim_b, double t_end, double dt, double global_tol,
    double subsystem_min) {
  if (dim_a * dim_b != gen.dim()) {
    throw std::invalid_argument(
        "order_stability_report: subsystem dimensions do not factor the "
        "generator dimension");
  }
  const Trajectory traj = evolve(gen, rho0, t_end, dt);

  OrderStabilityReport report;
  report.times = traj.times;
  report.s_global = traj.s_von_neumann;
  report.s_linear = traj.s_linear;
  report.s_first.reserve(traj.states.size());
  report.s_second.reserve(traj.states.size());
  for (const auto& state : traj.states) {
    const ComplexMatrix ra =
        partial_trace(state.matrix(), dim_a, dim_b, Subsystem::First);
    const ComplexMatrix rb =
        partial_trace(state.matrix(), dim_a, dim_b, Subsystem::Second);
    report.s_first.push_back(
        von_neumann_entropy(DensityOperator::unchecked(ra)));
    report.s_second.push_back(
        von_neumann_entropy(DensityOperator::unchecked(rb)));
  }

  const auto increase = [](const std::vector<double>& series) {
    double max_val = series.front();
    for (const double v : series) max_val = std::max(max_val, v);
    return max_val - series.front();
  };
  report.global_increase = increase(report.s_global);
  report.max_subsystem_increase =
      std::max(increase(report.s_first), increase(report.s_second));
  report.order_stable = report.global_increase <= global_tol &&
                        report.max_subsystem_increase >= subsystem_min;
  return report;
}

}  // namespace qlm
