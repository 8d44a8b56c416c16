#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "isotherm/errors.hpp"
#include "isotherm/geometry.hpp"
#include "isotherm/numerics.hpp"
#include "isotherm/parabolic.hpp"

using namespace isotherm;
using namespace isotherm::parabolic;

namespace {

const TwoPhaseMedium kRef{1.0, 4.0};

TimeSeries synthetic(const std::vector<double>& times, double (*u)(double)) {
  TimeSeries s;
  s.times = times;
  for (double t : times) s.probe_values.push_back({u(t)});
  return s;
}

}  // namespace

TEST(TimeGrid, GeometricWithIncludedTimes) {
  TimeGridSpec spec;
  spec.t_first = 1e-4;
  spec.ratio = 1.2;
  spec.include = {0.0123, 0.5};
  const auto t = make_time_grid(1.0, spec);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 1.0);
  EXPECT_EQ(t[1], 1e-4);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_GT(t[i], t[i - 1]);
  for (double s : spec.include) EXPECT_NE(std::find(t.begin(), t.end(), s), t.end());
  // away from the inserted points, successive ratios are the requested one
  EXPECT_NEAR(t[3] / t[2], 1.2, 1e-12);
  spec.include = {2.0};
  EXPECT_THROW(make_time_grid(1.0, spec), Error);
}

TEST(Evolve, ConstantDataStaysConstant) {
  auto f = grid::GridField::box(2, {12, 12, 1}, {0, 0, 0}, 0.1, 1.0);
  for (auto& b : f.boundary) b.value = [](const std::array<double, 3>&) { return 1.0; };
  const auto sys = grid::assemble(f, std::vector<double>(f.cells(), 1.0));
  const auto ts = evolve(sys, 0.5, {grid::grid_probe(f, {0.55, 0.62, 0.0})});
  EXPECT_NEAR(ts.min_value, 1.0, 1e-12);
  EXPECT_NEAR(ts.max_value, 1.0, 1e-12);
  for (const auto& row : ts.probe_values) EXPECT_NEAR(row[0], 1.0, 1e-12);
}

TEST(Evolve, PlaneInterfaceHoldsTheConstant) {
  const geometry::Hyperplane plane(3);
  const auto mesh = interface_mesh(plane, kRef, 1.0 / 200.0, 1.0);
  const auto ts = evolve(mesh.system, 1.0, {mesh.interface_probe()});
  const double k = interface_constant(kRef);
  EXPECT_EQ(k, 2.0 / 3.0);
  for (std::size_t i = 0; i < ts.times.size(); ++i) EXPECT_NEAR(ts.probe_values[i][0], k, 1e-6) << ts.times[i];
}

TEST(Evolve, BoundsAndOrdering) {
  const geometry::Sphere sphere(1.0, 3);
  const auto mesh = interface_mesh(sphere, kRef, 1.0 / 100.0, 0.5);
  std::vector<grid::Probe> probes;
  for (double r : {0.2, 0.6, 0.95, 1.0, 1.1, 2.0}) probes.push_back(mesh.probe_at(r));
  const auto hi = evolve(mesh.system, 0.5, probes);
  EvolveOptions opt;
  opt.initial = 0.5 * mesh.system.chi;
  const auto lo = evolve(mesh.system, 0.5, probes, opt);
  EXPECT_GE(hi.min_value, -1e-12);
  EXPECT_LE(hi.max_value, 1.0 + 1e-12);
  ASSERT_EQ(hi.times, lo.times);
  for (std::size_t i = 0; i < hi.times.size(); ++i)
    for (std::size_t p = 0; p < probes.size(); ++p) EXPECT_LE(lo.probe_values[i][p], hi.probe_values[i][p] + 1e-12);
  // heat enters Omega from outside: deeper points are colder at every time
  for (const auto& row : hi.probe_values) {
    EXPECT_LE(row[0], row[1] + 1e-12);
    EXPECT_LE(row[1], row[2] + 1e-12);
  }
}

TEST(Evolve, ImplicitStartLength) {
  const geometry::Hyperplane plane(3);
  const auto mesh = interface_mesh(plane, kRef, 1.0 / 50.0, 0.1);
  EvolveOptions opt;
  opt.time.implicit_steps = 25;
  const auto ts = evolve(mesh.system, 0.1, {mesh.interface_probe()}, opt);
  EXPECT_GE(ts.implicit_steps_taken, 25);
  EXPECT_LT(ts.implicit_steps_taken, static_cast<int>(ts.times.size()) - 1);
}

TEST(LaplaceStieltjes, ConstantSeriesGivesOne) {
  const auto s = synthetic(numerics::linspace(0.0, 0.2, 11), [](double) { return 1.0; });
  const auto r = laplace_stieltjes(s, 100.0);
  EXPECT_NEAR(r.tail_bound, std::exp(-20.0), 1e-22);
  EXPECT_NEAR(r.w_time[0], 1.0, 1e-14);
  EXPECT_THROW(laplace_stieltjes(s, 10.0), Error);
  try {
    laplace_stieltjes(s, 10.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::insufficient_horizon);
  }
}

TEST(LaplaceStieltjes, ExponentialClosedForm) {
  // lambda int e^{-lambda t} e^{-a t} dt = lambda / (lambda + a)
  std::vector<double> t{0.0};
  for (double s = 1e-6; s < 2.0; s *= 1.01) t.push_back(s);
  t.push_back(2.0);
  const auto s = synthetic(t, [](double x) { return std::exp(-3.0 * x); });
  for (double lambda : {10.0, 30.0, 100.0}) {
    const auto r = laplace_stieltjes(s, lambda);
    EXPECT_NEAR(r.w_time[0], lambda / (lambda + 3.0), 1e-5) << lambda;
  }
}

TEST(LaplaceStieltjes, AgreesWithEllipticSolve) {
  const geometry::Hyperplane plane(3);
  const double lmin = 10.0, t_end = 1.05 * std::log(1e6) / lmin;
  const auto mesh = interface_mesh(plane, kRef, 1.0 / 200.0, t_end);
  std::vector<grid::Probe> probes;
  for (double x : numerics::linspace(-0.5, 0.5, 10)) probes.push_back(mesh.probe_at(x));
  const auto ts = evolve(mesh.system, t_end, probes);
  for (double lambda : {10.0, 30.0, 100.0, 300.0}) {
    const auto r = transform_and_check(mesh.system, probes, ts, lambda);
    ASSERT_EQ(r.w_elliptic.size(), probes.size());
    for (std::size_t p = 0; p < probes.size(); ++p) EXPECT_NEAR(r.w_time[p], r.w_elliptic[p], 1e-3) << lambda;
  }
}

TEST(ConstancyProbe, PlaneEqualPhasesAndSphere) {
  const auto times = numerics::logspace(1e-3, 0.5, 7);
  const geometry::Hyperplane plane(3);
  const auto pl = interface_constancy_probe(plane, kRef, times, 1.0 / 100.0);
  EXPECT_LT(pl.max_deviation, 1e-6);
  const auto eq = interface_constancy_probe(plane, TwoPhaseMedium{2.0, 2.0}, times, 1.0 / 100.0);
  EXPECT_EQ(eq.k, 0.5);
  EXPECT_LT(eq.max_deviation, 1e-6);
  const geometry::Sphere sphere(1.0, 3);
  const auto sp = interface_constancy_probe(sphere, kRef, times, 1.0 / 100.0);
  EXPECT_GT(sp.end_deviation, 1e-2);
  EXPECT_GT(sp.end_deviation_refined, 1e-2);
  EXPECT_THROW(interface_constancy_probe(geometry::Helicoid(), kRef, times), Error);
}
