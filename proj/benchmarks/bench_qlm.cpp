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

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qlm/contextuality.hpp"
#include "qlm/effects.hpp"
#include "qlm/hilbert.hpp"
#include "qlm/instruments.hpp"
#include "qlm/logic.hpp"
#include "qlm/open_systems.hpp"
#include "qlm/random.hpp"

namespace {

using namespace qlm;

ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_ginibre(dim, dim, rng);
  return g + g.adjoint();
}

void bm_eig_hermitian(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const ComplexMatrix m = random_hermitian(state.range(0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_hermitian(m));
  }
}
BENCHMARK(bm_eig_hermitian)->Arg(4)->Arg(8)->Arg(16);

void bm_tensor(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Eigen::Index dim = state.range(0);
  const ComplexMatrix a = random_hermitian(dim, rng);
  const ComplexMatrix b = random_hermitian(dim, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tensor(a, b));
  }
}
BENCHMARK(bm_tensor)->Arg(4)->Arg(8);

void bm_evolve_step(benchmark::State& state) {
  ComplexMatrix jump = ComplexMatrix::Zero(2, 2);
  jump(0, 1) = 1.0;
  const GkslGenerator gen(ComplexMatrix::Zero(2, 2), {jump});
  ComplexMatrix excited = ComplexMatrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  const DensityOperator rho = DensityOperator::validated(excited);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(gen, rho, 1.0, 1.0 / steps));
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(bm_evolve_step)->Arg(100)->Arg(1000);

void bm_sequential_distribution(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const QuantumInstrument a =
      yes_no_instrument(random_projector(4, 2, rng));
  const QuantumInstrument b =
      yes_no_instrument(random_projector(4, 1, rng));
  const DensityOperator rho = random_density(4, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sequential_distribution({a, b, a}, rho));
  }
}
BENCHMARK(bm_sequential_distribution);

void bm_distributivity_violations(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto triple = random_noncommuting_triple(state.range(0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        distributivity_violations(triple[0], triple[1], triple[2]));
  }
}
BENCHMARK(bm_distributivity_violations)->Arg(2)->Arg(4);

void bm_chsh(benchmark::State& state) {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0;
  v(2) = -1.0;
  const DensityOperator rho = DensityOperator::from_pure(StateVector(v));
  const double pi = std::acos(-1.0);
  const auto a1 = DichotomicObservable::validated(spin_observable(0.0));
  const auto a2 = DichotomicObservable::validated(spin_observable(pi / 2.0));
  const auto b1 = DichotomicObservable::validated(spin_observable(pi / 4.0));
  const auto b2 = DichotomicObservable::validated(spin_observable(-pi / 4.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(chsh(rho, a1, a2, b1, b2));
  }
}
BENCHMARK(bm_chsh);

void bm_sorkin_residual(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const ComplexMatrix frame = random_unitary(4, rng);
  std::vector<Projector> slits = {
      Projector::from_orthonormal_basis(frame.col(0)),
      Projector::from_orthonormal_basis(frame.col(1)),
      Projector::from_orthonormal_basis(frame.rightCols(2))};
  const SlitConfiguration cfg = make_slit_configuration(
      slits, Effect::validated(ComplexMatrix::Identity(4, 4) * 0.5),
      random_pure_state(4, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorkin_residual(cfg));
  }
}
BENCHMARK(bm_sorkin_residual);

void bm_effect_profile(benchmark::State& state) {
  const auto [a, b] =
      record_update_instruments(record_family_reference_params());
  const DensityOperator rho =
      DensityOperator::from_pure(record_family_reference_state());
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_effect_profile(a, b, rho));
  }
}
BENCHMARK(bm_effect_profile);

}  // namespace

BENCHMARK_MAIN();
