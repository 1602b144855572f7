#include <benchmark/benchmark.h>

#include <cmath>

#include "milneqed/cutoff.hpp"
#include "milneqed/fields.hpp"
#include "milneqed/sine_integral.hpp"
#include "milneqed/spin_algebra.hpp"
#include "milneqed/statistics.hpp"

namespace {

using namespace milneqed;

StaticChargeParams step_charge(double k1, double k2) {
  return StaticChargeParams::from_renormalized(1.0, CutoffProfile::step(k1, k2));
}

stats::Environment environment(double k1, double k2) {
  stats::Environment env;
  env.profile = CutoffProfile::step(k1, k2);
  env.dist = RDistribution::point_mass(FourVector::from_rapidity(0.8, {0.0, 0.0, 1.0}));
  env.q_ren = 1.0;
  return env;
}

void BM_SineIntegral(benchmark::State& state) {
  const double x = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sine_integral(x));
}
BENCHMARK(BM_SineIntegral)->DenseRange(-2, 5, 1);

void BM_ComSpinFrame(benchmark::State& state) {
  const FourVector R = FourVector::from_rapidity(0.7, {0.0, 0.6, 0.8});
  const FourVector k{1.0, 0.3, -0.4, std::sqrt(1.0 - 0.09 - 0.16)};
  for (auto _ : state) benchmark::DoNotOptimize(spin::minkowski_tetrad(spin::com_spin_frame(R, k, {1.0, 0.0})));
}
BENCHMARK(BM_ComSpinFrame);

void BM_PotentialA0(benchmark::State& state) {
  const auto p = step_charge(150.0, 1e4);
  for (auto _ : state) benchmark::DoNotOptimize(potential_A0(1e-3, 1e-3, p));
}
BENCHMARK(BM_PotentialA0);

void BM_PotentialAsymptoticSmoothed(benchmark::State& state) {
  const auto p = StaticChargeParams::from_renormalized(1.0, CutoffProfile::smoothed(150.0, 1e4, 500.0));
  for (auto _ : state) benchmark::DoNotOptimize(potential_asymptotic(1e-2, p));
}
BENCHMARK(BM_PotentialAsymptoticSmoothed)->Unit(benchmark::kMicrosecond);

void BM_RhoEff(benchmark::State& state) {
  const auto p = step_charge(150.0, 1e3);
  for (auto _ : state) benchmark::DoNotOptimize(rho_eff(5e-3, p));
}
BENCHMARK(BM_RhoEff);

void BM_TotalChargeSmoothed(benchmark::State& state) {
  const auto p = StaticChargeParams::from_renormalized(1.0, CutoffProfile::smoothed(0.0, 1e3, 50.0));
  for (auto _ : state) benchmark::DoNotOptimize(total_charge(p, 10.0));
}
BENCHMARK(BM_TotalChargeSmoothed)->Unit(benchmark::kMillisecond);

void BM_MeanExponent(benchmark::State& state) {
  const auto env = environment(10.0, 1e4);
  const auto traj = stats::Trajectory::uniform(FourVector::from_rapidity(0.0, {0.0, 0.0, 1.0}));
  for (auto _ : state) benchmark::DoNotOptimize(stats::mean_exponent(1e-3, traj, env));
}
BENCHMARK(BM_MeanExponent)->Unit(benchmark::kMicrosecond);

void BM_PhotonProbabilities(benchmark::State& state) {
  const auto env = environment(10.0, 1e4);
  const auto traj = stats::Trajectory::uniform(FourVector::from_rapidity(0.0, {0.0, 0.0, 1.0}));
  const auto n = stats::OscillatorCount::finite(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stats::photon_probabilities(1e-3, n, 30, traj, env));
}
BENCHMARK(BM_PhotonProbabilities)->Arg(1)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_MeanPhotons(benchmark::State& state) {
  auto env = environment(100.0, 1e3);
  env.dist = RDistribution::point_mass();
  const FourVector u = FourVector::from_rapidity(0.0, {0.0, 0.0, 1.0});
  const FourVector v = FourVector::from_rapidity(0.5, {0.0, 0.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(stats::mean_photons(u, v, env));
}
BENCHMARK(BM_MeanPhotons)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
