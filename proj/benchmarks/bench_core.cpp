#include <benchmark/benchmark.h>

#include "adiaclone/protocols.hpp"

using namespace adiaclone;

namespace {

void BM_BuildBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool capped = state.range(1) != 0;
  for (auto _ : state) {
    auto basis = build_basis(BasisSpec::full(n, 1, capped ? std::optional<int>(1) : std::nullopt));
    benchmark::DoNotOptimize(basis);
  }
}
BENCHMARK(BM_BuildBasis)->Args({3, 1})->Args({3, 0})->Args({4, 0});

void BM_HamiltonianAt(benchmark::State& state) {
  const SystemParams p;
  const auto basis = build_basis(BasisSpec::full(3));
  const auto h = full_hamiltonian(p, DriveSchedule::standard(PulseParams{}, 3), basis);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h.matrix_at(t));
    t += 0.005;
  }
}
BENCHMARK(BM_HamiltonianAt);

// One trajectory of 1000 steps; items = steps.
void BM_SchrodingerSteps(benchmark::State& state) {
  const bool capped = state.range(0) != 0;
  ProtocolOptions options;
  if (!capped) options.basis.excitation_cap = std::nullopt;
  const TimeGrid grid{100.0, 105.0, 0.005, 1000};
  for (auto _ : state)
    benchmark::DoNotOptimize(prepare_w_state(SystemParams{}, PulseParams{}, ModelKind::Full, grid, options));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SchrodingerSteps)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_LindbladSteps(benchmark::State& state) {
  SystemParams p;
  p.kappa_c = p.kappa_f = p.gamma = 0.01;
  const TimeGrid grid{100.0, 105.0, 0.005, 1000};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        clone_phase_covariant(p, PulseParams{}, CloningInput{0.0}, ModelKind::Full, grid, ProtocolOptions{}));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_LindbladSteps)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
