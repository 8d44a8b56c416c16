#include <benchmark/benchmark.h>

#include "isotherm/elliptic.hpp"
#include "isotherm/geometry.hpp"
#include "isotherm/grid.hpp"
#include "isotherm/helicoid.hpp"
#include "isotherm/kernel1d.hpp"
#include "isotherm/parabolic.hpp"
#include "isotherm/wkb.hpp"

using namespace isotherm;

namespace {

const TwoPhaseMedium kRef{1.0, 4.0};

void BM_HalflineQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernel1d::halfline_quadrature(0.3, 0.7, kRef));
}
BENCHMARK(BM_HalflineQuadrature);

void BM_HalflineClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernel1d::halfline_closed_form(0.3, 0.7, kRef));
}
BENCHMARK(BM_HalflineClosedForm);

void BM_RayExpansionHelicoid(benchmark::State& state) {
  const geometry::Helicoid surface;
  const auto foot = surface.nearest(geometry::Helicoid::point(0.5, 0.3));
  const std::shared_ptr<const geometry::NormalChart> chart = surface.chart(geometry::Side::inside);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const wkb::RayExpansion ex(chart, wkb::make_ray(surface, foot, geometry::Side::inside, {0.1}).u, order, surface.delta0());
    benchmark::DoNotOptimize(ex.at(0.2).A.back());
  }
}
BENCHMARK(BM_RayExpansionHelicoid)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_QuarterDiskHelmholtz(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const auto disk = grid::make_quarter_disk(1.0, kRef, 3.0, h);
  const auto sys = grid::assemble(disk.field, disk.chi);
  for (auto _ : state) benchmark::DoNotOptimize(elliptic::solve_helmholtz(sys, 10.0));
}
BENCHMARK(BM_QuarterDiskHelmholtz)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SphereEvolve(benchmark::State& state) {
  const geometry::Sphere sphere(1.0, 3);
  const auto mesh = parabolic::interface_mesh(sphere, kRef, 1.0 / 400.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(parabolic::evolve(mesh.system, 1.0, {mesh.interface_probe()}));
}
BENCHMARK(BM_SphereEvolve)->Unit(benchmark::kMillisecond);

void BM_HelicoidMonteCarlo(benchmark::State& state) {
  const auto x = helicoid::helicoid_point(0.8, 0.3);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(helicoid::u_gaussian_mc(x, 1.0, n, 1, 1).mean);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_HelicoidMonteCarlo)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
