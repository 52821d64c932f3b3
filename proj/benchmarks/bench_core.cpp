#include <benchmark/benchmark.h>

#include <cmath>

#include "cmkdv/painleve.hpp"
#include "cmkdv/pde.hpp"
#include "cmkdv/profile.hpp"
#include "cmkdv/scattering.hpp"
#include "cmkdv/spectral_functions.hpp"

using namespace cmkdv;

namespace {

const ScatteringSolver& perturbed() {
  static const ScatteringSolver solver(build_profile("tanh_plus_sech2:0.3", 30.0, 0.02));
  return solver;
}

void BM_S11RealAxis(benchmark::State& state) {
  const auto& solver = perturbed();
  double z = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.scattering_coeffs(z));
    z = z > 3.0 ? 0.37 : z + 0.01;
  }
}
BENCHMARK(BM_S11RealAxis);

void BM_DiscreteSpectrum(benchmark::State& state) {
  const auto& solver = perturbed();
  for (auto _ : state) benchmark::DoNotOptimize(solver.find_discrete_spectrum());
}
BENCHMARK(BM_DiscreteSpectrum)->Unit(benchmark::kMillisecond);

void BM_TEvalReflectionless(benchmark::State& state) {
  const SpectralFunctions sf({Complex{0.0, 1.0}}, [](double) { return 0.0; }, -2.0);
  for (auto _ : state) benchmark::DoNotOptimize(sf.T_eval(Complex{0.3, 0.4}));
}
BENCHMARK(BM_TEvalReflectionless);

void BM_Airy(benchmark::State& state) {
  double s = -7.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(airy(s));
    s = s > 7.9 ? -7.9 : s + 0.013;
  }
}
BENCHMARK(BM_Airy);

void BM_SolvePainleve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_p2(0.5));
}
BENCHMARK(BM_SolvePainleve)->Unit(benchmark::kMillisecond);

void BM_PdeRhs(benchmark::State& state) {
  const auto grid = UniformGrid::symmetric(static_cast<double>(state.range(0)), 0.05);
  const auto field = FieldState::from_function(grid, [](double x) { return Complex(std::tanh(x)); });
  std::vector<Complex> out;
  for (auto _ : state) {
    pde_rhs(field, {}, false, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size));
}
BENCHMARK(BM_PdeRhs)->Arg(20)->Arg(200);

}  // namespace
BENCHMARK_MAIN();
