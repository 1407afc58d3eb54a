#include <benchmark/benchmark.h>

#include "scalardyn/bessel.hpp"
#include "scalardyn/dynamics.hpp"
#include "scalardyn/integrability.hpp"
#include "scalardyn/kgverify.hpp"
#include "scalardyn/quantities.hpp"

using namespace scalardyn;

static void BM_EvolveSpacelike(benchmark::State& st) {
  const auto bg = make_linear_z(1.0, 1.0, true);
  const auto s0 = PhaseSpaceState::instant(0, {0, 0, 0}, {0.1, 0, -0.5});
  EvolveOptions o;
  o.method = st.range(0) ? Integrator::rk4 : Integrator::dopri5;
  for (auto _ : st) benchmark::DoNotOptimize(evolve(s0, bg, 4.0, o).size());
}
BENCHMARK(BM_EvolveSpacelike)->Arg(0)->Arg(1);

static void BM_EvolvePlaneWaveMonitored(benchmark::State& st) {
  const auto bg = make_plane_wave(Profile::sin2(1.0, 0.8));
  const double pplus = (0.04 + 0.01 + 1.0 + 0.0) / (4 * 0.6);
  const auto s0 = PhaseSpaceState::extended(0, 0.0, 0.0, {0.1, 0.2}, pplus, 0.6, {0.2, -0.1});
  EvolveOptions o;
  o.monitored = planewave_quantities_set(bg);
  for (auto _ : st) benchmark::DoNotOptimize(evolve(s0, bg, 8.0, o).size());
}
BENCHMARK(BM_EvolvePlaneWaveMonitored);

static void BM_BesselI(benchmark::State& st) {
  const double z = static_cast<double>(st.range(0)) / 10.0;
  for (auto _ : st) benchmark::DoNotOptimize(bessel::bessel_i(cplx(0.4, 0.7), z));
}
BENCHMARK(BM_BesselI)->Arg(5)->Arg(50)->Arg(300);

static void BM_BesselK(benchmark::State& st) {
  const double z = static_cast<double>(st.range(0)) / 10.0;
  for (auto _ : st) benchmark::DoNotOptimize(bessel::bessel_k(cplx(0.4, 0.7), z));
}
BENCHMARK(BM_BesselK)->Arg(5)->Arg(50)->Arg(300);

static void BM_IndependenceRank(benchmark::State& st) {
  const auto bg = make_plane_wave(Profile::sin2(1.0, 0.8));
  const auto Q = planewave_quantities_set(bg);
  const auto states = random_states(Form::extended_front, static_cast<std::size_t>(st.range(0)), 3);
  for (auto _ : st) benchmark::DoNotOptimize(independence_rank(Q, states).rank);
}
BENCHMARK(BM_IndependenceRank)->Arg(20)->Arg(100);

static void BM_KgResidual(benchmark::State& st) {
  const auto bg = make_dilation(1.5);
  const auto phi = make_dilation_solution({0.5, 0.2}, 0.6, 1.5, cplx(1.0, 0.0), cplx(0.3, 0.1));
  const FourVector x{2.0, 0.1, -0.2, 0.3};
  for (auto _ : st) benchmark::DoNotOptimize(kg_residual(phi, bg, x));
}
BENCHMARK(BM_KgResidual);

BENCHMARK_MAIN();
