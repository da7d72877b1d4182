// Serial reference kernels against their OpenMP versions. Thread count follows
// ANNULUS_EULER_THREADS (0 or unset: OpenMP default).

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "annulus/bernoulli.hpp"
#include "annulus/elliptic.hpp"
#include "annulus/grad_shafranov.hpp"
#include "annulus/parallel.hpp"
#include "annulus/pressure.hpp"
#include "annulus/transport.hpp"

using namespace annulus;

namespace {

AnnulusGrid grid_for(const benchmark::State& state) {
  const int nr = static_cast<int>(state.range(0));
  return {1.0, 2.0, nr, 2 * (nr - 1)};
}

std::vector<Complex> mode_systems(const AnnulusGrid& g) {
  const int nm = g.ntheta() / 2 + 1;
  std::vector<Complex> s(static_cast<std::size_t>(g.nr()) * nm);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = Complex(std::sin(0.1 * k), std::cos(0.07 * k));
  return s;
}

template <bool Parallel>
void BM_EllipticModes(benchmark::State& state) {
  const AnnulusGrid g = grid_for(state);
  const std::vector<Complex> input = mode_systems(g);
  for (auto _ : state) {
    std::vector<Complex> s = input;
    if constexpr (Parallel)
      kernels::solve_modes_parallel(g, s);
    else
      kernels::solve_modes_reference(g, s);
    benchmark::DoNotOptimize(s.data());
  }
}

PolarVectorField sample_perturbation(const AnnulusGrid& g) {
  return PolarVectorField::sample(
      g, [](double r, double t) { return 0.02 * std::cos(t) / r; },
      [](double r, double t) { return 0.05 / r + 0.02 * std::sin(2 * t) * (r - 1.0) * (2.0 - r); });
}

template <int Mode>  // 0 marching serial, 1 marching parallel, 2 full-path reference
void BM_Departure(benchmark::State& state) {
  const AnnulusGrid g = grid_for(state);
  const CharacteristicField field(sample_perturbation(g));
  for (auto _ : state) {
    ScalarField out = Mode == 2 ? kernels::departure_angles_reference(field, 4)
                                : kernels::departure_angles_marching(
                                      field, 4, Mode == 1 ? Execution::parallel : Execution::serial);
    benchmark::DoNotOptimize(out.values().data());
  }
}

template <bool Parallel>
void BM_StreamSource(benchmark::State& state) {
  const AnnulusGrid g = grid_for(state);
  const BernoulliProfile profile =
      build_profile(BoundaryFunction(1.0, {0.1}, {0.05}), BoundaryFunction(0.0, {0.02}, {0.03}), false, 1024);
  const StreamFunction phi{ScalarField::sample(g, [](double r, double t) { return 0.1 * std::sin(t) * (r - 1.0); }),
                           1.0};
  ScalarField rhs(g);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::stream_source_parallel(phi, profile, rhs);
    else
      kernels::stream_source_reference(phi, profile, rhs);
    benchmark::DoNotOptimize(rhs.values().data());
  }
}

template <bool Parallel>
void BM_ArcIntegrals(benchmark::State& state) {
  const AnnulusGrid g = grid_for(state);
  const ScalarField Gt = ScalarField::sample(g, [](double r, double t) { return std::sin(3 * t) / r + r * std::cos(t); });
  ScalarField out(g);
  std::vector<double> means;
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::arc_integrals_parallel(Gt, out, means);
    else
      kernels::arc_integrals_reference(Gt, out, means);
    benchmark::DoNotOptimize(out.values().data());
  }
}

template <bool Parallel>
void BM_FixedPointBC5(benchmark::State& state) {
  const AnnulusGrid g = grid_for(state);
  const VortexData d{BoundaryFunction(0.0, {0.005}, {}), BoundaryFunction::constant(0.0),
                     BoundaryFunction(0.0, {}, {0.004}), BoundaryFunction(0.0, {0.0, 0.003}, {}),
                     BoundaryFunction::constant(0.0), CircleMap(), 0.002};
  FixedPointConfig cfg;
  cfg.exec = Parallel ? Execution::parallel : Execution::serial;
  for (auto _ : state) {
    VortexSolution s = fixed_point(VortexKind::BC5, d, g, cfg);
    benchmark::DoNotOptimize(s.u.vr.values().data());
  }
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int nr : {65, 129, 257}) b->Arg(nr);
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_EllipticModes<false>)->Name("elliptic_modes/serial")->Apply(sizes);
BENCHMARK(BM_EllipticModes<true>)->Name("elliptic_modes/parallel")->Apply(sizes);
BENCHMARK(BM_Departure<0>)->Name("departure_marching/serial")->Apply(sizes);
BENCHMARK(BM_Departure<1>)->Name("departure_marching/parallel")->Apply(sizes);
BENCHMARK(BM_Departure<2>)->Name("departure_full_path/reference")->Arg(33)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StreamSource<false>)->Name("stream_source/serial")->Apply(sizes);
BENCHMARK(BM_StreamSource<true>)->Name("stream_source/parallel")->Apply(sizes);
BENCHMARK(BM_ArcIntegrals<false>)->Name("arc_integrals/serial")->Apply(sizes);
BENCHMARK(BM_ArcIntegrals<true>)->Name("arc_integrals/parallel")->Apply(sizes);
BENCHMARK(BM_FixedPointBC5<false>)->Name("fixed_point_bc5/serial")->Arg(65)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FixedPointBC5<true>)->Name("fixed_point_bc5/parallel")->Arg(65)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::AddCustomContext("threads", std::to_string(max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
