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

#include "qlm/contextuality.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qlm {

DichotomicObservable DichotomicObservable::validated(const ComplexMatrix& m,
                                                     double tol) {
  if (m.rows() != m.cols() || m.size() == 0) {
    throw std::invalid_argument(
        "DichotomicObservable: matrix must be square");
  }
  const double herm_dev = sup_norm(m - m.adjoint());
  if (herm_dev > tol) {
    std::ostringstream os;
    os << "DichotomicObservable: not Hermitian, sup|M - M^dagger| = "
       << herm_dev;
    throw std::invalid_argument(os.str());
  }
  const ComplexMatrix h = (m + m.adjoint()) / 2.0;
  const double invol_dev =
      sup_norm(h * h - ComplexMatrix::Identity(h.rows(), h.rows()));
  if (invol_dev > tol) {
    std::ostringstream os;
    os << "DichotomicObservable: spectrum is not {+1, -1}, sup|M^2 - 1| = "
       << invol_dev;
    throw std::invalid_argument(os.str());
  }
  return DichotomicObservable(h);
}

double correlation(const DensityOperator& rho, const DichotomicObservable& a,
                   const DichotomicObservable& b) {
  if (a.dim() * b.dim() != rho.dim()) {
    throw std::invalid_argument(
        "correlation: observable dimensions do not factor the state");
  }
  const double e =
      (tensor(a.matrix(), b.matrix(), rho.dim()) * rho.matrix())
          .trace()
          .real();
  if (e < -1.0 - 1e-10 || e > 1.0 + 1e-10) {
    std::ostringstream os;
    os << "correlation: value " << e << " escapes [-1, 1]";
    throw std::runtime_error(os.str());
  }
  return e;
}

ChshReport chsh(const DensityOperator& rho, const DichotomicObservable& a1,
                const DichotomicObservable& a2, const DichotomicObservable& b1,
                const DichotomicObservable& b2) {
  ChshReport report;
  report.e11 = correlation(rho, a1, b1);
  report.e12 = correlation(rho, a1, b2);
  report.e21 = correlation(rho, a2, b1);
  report.e22 = correlation(rho, a2, b2);
  report.s =
      std::abs(report.e11 + report.e12 + report.e21 - report.e22);
  if (report.s > kTsirelsonBound + 1e-9) {
    std::ostringstream os;
    os << "chsh: S = " << report.s
       << " exceeds the quantum bound; inputs are inconsistent";
    throw std::runtime_error(os.str());
  }
  return report;
}

namespace {

// Joint +-1 outcome distribution of a product observable pair, from the
// spectral projectors of each side.
std::array<double, 4> joint_outcome_probs(const DensityOperator& rho,
                                          const DichotomicObservable& a,
                                          const DichotomicObservable& b) {
  const ComplexMatrix ida =
      ComplexMatrix::Identity(a.dim(), a.dim());
  const ComplexMatrix idb =
      ComplexMatrix::Identity(b.dim(), b.dim());
  const ComplexMatrix pa_plus = (ida + a.matrix()) / 2.0;
  const ComplexMatrix pa_minus = (ida - a.matrix()) / 2.0;
  const ComplexMatrix pb_plus = (idb + b.matrix()) / 2.0;
  const ComplexMatrix pb_minus = (idb - b.matrix()) / 2.0;
  const auto prob = [&rho](const ComplexMatrix& pa, const ComplexMatrix& pb) {
    return std::clamp(
        (tensor(pa, pb, rho.dim()) * rho.matrix()).trace().real(), 0.0, 1.0);
  };
  // Order: (+,+), (+,-), (-,+), (-,-).
  return {prob(pa_plus, pb_plus), prob(pa_plus, pb_minus),
          prob(pa_minus, pb_plus), prob(pa_minus, pb_minus)};
}

double sampled_correlation(const DensityOperator& rho,
                           const DichotomicObservable& a,
                           const DichotomicObservable& b,
                           std::uint64_t trials, std::mt19937_64& rng) {
  const std::array<double, 4> p = joint_outcome_probs(rho, a, b);
  std::discrete_distribution<int> draw(p.begin(), p.end());
  static constexpr std::array<int, 4> sign = {+1, -1, -1, +1};
  long long acc = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    acc += sign[draw(rng)];
  }
  return static_cast<double>(acc) / static_cast<double>(trials);
}

}  // namespace

ChshReport chsh_sampled(const DensityOperator& rho,
                        const DichotomicObservable& a1,
                        const DichotomicObservable& a2,
                        const DichotomicObservable& b1,
                        const DichotomicObservable& b2, std::uint64_t trials,
                        std::uint64_t seed) {
  if (trials == 0) {
    throw std::invalid_argument("chsh_sampled: trials must be positive");
  }
  std::mt19937_64 rng(seed);
  ChshReport report;
  report.sampled = true;
  report.trials = trials;
  report.e11 = sampled_correlation(rho, a1, b1, trials, rng);
  report.e12 = sampled_correlation(rho, a1, b2, trials, rng);
  report.e21 = sampled_correlation(rho, a2, b1, trials, rng);
  report.e22 = sampled_correlation(rho, a2, b2, trials, rng);
  report.s =
      std::abs(report.e11 + report.e12 + report.e21 - report.e22);
  return report;
}

SlitConfiguration make_slit_configuration(std::vector<Projector> slits,
                                          Effect detector,
                                          StateVector source) {
  if (slits.size() != 3) {
    std::ostringstream os;
    os << "slit configuration: expected 3 slits, got " << slits.size();
    throw std::invalid_argument(os.str());
  }
  const Eigen::Index d = source.dim();
  for (const auto& slit : slits) {
    if (slit.dim() != d) {
      throw std::invalid_argument(
          "slit configuration: slit dimension differs from source");
    }
  }
  if (detector.dim() != d) {
    throw std::invalid_argument(
        "slit configuration: detector dimension differs from source");
  }
  for (std::size_t i = 0; i < slits.size(); ++i) {
    for (std::size_t j = i + 1; j < slits.size(); ++j) {
      const double overlap =
          sup_norm(slits[i].matrix() * slits[j].matrix());
      if (overlap > 1e-10) {
        std::ostringstream os;
        os << "slit configuration: slits " << i << " and " << j
           << " are not orthogonal (sup|P_i P_j| = " << overlap << ")";
        throw std::invalid_argument(os.str());
      }
    }
  }
  return SlitConfiguration{std::move(slits), std::move(detector),
                           std::move(source)};
}

double subset_probability(const SlitConfiguration& cfg,
                          const std::vector<int>& subset) {
  const Eigen::Index d = cfg.source.dim();
  ComplexMatrix ps = ComplexMatrix::Zero(d, d);
  for (const int i : subset) {
    if (i < 0 || i >= static_cast<int>(cfg.slits.size())) {
      throw std::invalid_argument("subset_probability: slit index out of "
                                  "range");
    }
    ps += cfg.slits[static_cast<std::size_t>(i)].matrix();
  }
  const ComplexVector filtered = ps * cfg.source.amplitudes();
  const double p =
      (filtered.adjoint() * cfg.detector.matrix() * filtered).value().real();
  return p;
}

double sorkin_residual(const SlitConfiguration& cfg) {
  const double p123 = subset_probability(cfg, {0, 1, 2});
  const double p12 = subset_probability(cfg, {0, 1});
  const double p13 = subset_probability(cfg, {0, 2});
  const double p23 = subset_probability(cfg, {1, 2});
  const double p1 = subset_probability(cfg, {0});
  const double p2 = subset_probability(cfg, {1});
  const double p3 = subset_probability(cfg, {2});
  return p123 - p12 - p13 - p23 + p1 + p2 + p3;
}

double two_slit_interference(const SlitConfiguration& cfg, int i, int j) {
  if (i == j) {
    throw std::invalid_argument(
        "two_slit_interference: slit indices must differ");
  }
  return subset_probability(cfg, {i, j}) - subset_probability(cfg, {i}) -
         subset_probability(cfg, {j});
}

DensityOperator contextual_conditioning(const DensityOperator& rho,
                                        Eigen::Index dim_first,
                                        Eigen::Index dim_second,
                                        const QuantumInstrument& instr,
                                        const std::string& outcome) {
  if (dim_first * dim_second != rho.dim()) {
    throw std::invalid_argument(
        "contextual_conditioning: factor dimensions do not match the "
        "state");
  }
  if (instr.dim() != dim_second) {
    throw std::invalid_argument(
        "contextual_conditioning: instrument acts on the second factor "
        "dimension");
  }
  // Extend each Kraus operator by the identity on the first factor.
  const ComplexMatrix id = ComplexMatrix::Identity(dim_first, dim_first);
  const std::size_t idx = instr.outcome_index(outcome);
  std::vector<ComplexMatrix> extended;
  for (const auto& k : instr.maps()[idx].kraus()) {
    extended.push_back(tensor(id, k, rho.dim()));
  }
  const Superoperator extended_map(std::move(extended));
  ComplexMatrix sigma = extended_map.apply(rho.matrix());
  const double p = sigma.trace().real();
  if (p < kNullEventThreshold) {
    std::ostringstream os;
    os << "contextual_conditioning: conditioning on null event '" << outcome
       << "' (probability " << p << ")";
    throw std::runtime_error(os.str());
  }
  sigma /= p;
  ComplexMatrix reduced =
      partial_trace(sigma, dim_first, dim_second, Subsystem::First);
  reduced = (reduced + reduced.adjoint()) / 2.0;
  return DensityOperator::unchecked(std::move(reduced));
}

}  // namespace qlm
