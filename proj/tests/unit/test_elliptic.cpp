#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "isotherm/elliptic.hpp"
#include "isotherm/errors.hpp"
#include "isotherm/numerics.hpp"

using namespace isotherm;
using namespace isotherm::elliptic;

namespace {

const TwoPhaseMedium kRef{1.0, 4.0};
const double kK = 2.0 / 3.0;

}  // namespace

TEST(RadialDirichlet, PlaneExponential) {
  const auto w = RadialSolution::dirichlet(RadialGeometry::make_plane(3), 2.0, 50.0, kK, Side::inside);
  EXPECT_DOUBLE_EQ(w.value(0.0), kK);
  const double mu = 5.0;
  for (double x : {0.1, 0.4, 1.0}) EXPECT_NEAR(w.value(x), kK * std::exp(-mu * x), 1e-15);
}

TEST(RadialDirichlet, SphereSinhClosedForm) {
  const auto g = RadialGeometry::sphere(1.0, 3);
  const double lambda = 400.0, mu = 20.0;
  const auto w = RadialSolution::dirichlet(g, 1.0, lambda, kK, Side::inside);
  for (double r : {0.05, 0.3, 0.7, 0.95, 1.0})
    EXPECT_NEAR(w.value(r), kK * std::sinh(mu * r) / (r * std::sinh(mu)), 1e-13);
  EXPECT_NEAR(w.normal_derivative(Side::inside), kK * (mu / std::tanh(mu) - 1.0), 1e-12);
  EXPECT_NEAR(w.normal_derivative(Side::inside) / kK, 19.0, 1e-12);
  // centre limit mu / sinh(mu)
  EXPECT_NEAR(w.value(0.0), kK * mu / std::sinh(mu), 1e-20);
}

TEST(RadialDirichlet, CylinderBesselClosedForm) {
  const auto g = RadialGeometry::cylinder(2.0, 3);
  const auto w = RadialSolution::dirichlet(g, 1.0, 1e4, kK, Side::inside);
  // mu = 100: I1/I0 ~ 1 - 1/(2 mu R)
  EXPECT_NEAR(w.normal_derivative(Side::inside), 99.75 * kK, 0.01);
  const auto g1 = RadialGeometry::cylinder(1.0, 3);
  const auto w1 = RadialSolution::dirichlet(g1, 1.0, 9.0, kK, Side::inside);
  for (double r : {0.1, 0.5, 0.9})
    EXPECT_NEAR(w1.value(r), kK * std::cyl_bessel_i(0.0, 3.0 * r) / std::cyl_bessel_i(0.0, 3.0), 1e-13);
}

TEST(RadialDirichlet, OutsideDecays) {
  const auto g = RadialGeometry::sphere(1.0, 3);
  const auto w = RadialSolution::dirichlet(g, 4.0, 16.0, 1.0, Side::outside);
  // sphere exterior: e^{-mu (r - R)} R / r with mu = 2
  for (double r : {1.0, 1.5, 3.0}) EXPECT_NEAR(w.value(r), std::exp(-2.0 * (r - 1.0)) / r, 1e-14);
  EXPECT_THROW(w.value(0.5), Error);
}

TEST(RadialDirichlet, OdeResidualAtSpotRadii) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.02, 0.98);
  for (int d : {2, 3, 4, 5}) {
    const auto g = RadialGeometry::sphere(1.0, d);
    const auto w = RadialSolution::dirichlet(g, 1.5, 30.0, kK, Side::inside);
    for (int i = 0; i < 16; ++i) EXPECT_LT(std::abs(w.ode_residual(ur(rng))), 1e-10) << "d=" << d;
    const auto o = RadialSolution::dirichlet(g, 1.5, 30.0, kK, Side::outside);
    for (int i = 0; i < 16; ++i) EXPECT_LT(std::abs(o.ode_residual(1.0 + 2.0 * ur(rng))), 1e-10) << "d=" << d;
  }
}

TEST(RadialDirichlet, LargeArgumentStaysFinite) {
  const auto w = RadialSolution::dirichlet(RadialGeometry::sphere(1.0, 3), 1.0, 1e8, kK, Side::inside);
  EXPECT_TRUE(std::isfinite(w.normal_derivative(Side::inside)));
  EXPECT_NEAR(w.normal_derivative(Side::inside), kK * (1e4 - 1.0), 1e-8);
  EXPECT_EQ(w.value(1.0), kK);
}

TEST(RadialTransmission, PlaneInterfaceIsK) {
  for (double lambda : {0.1, 10.0, 1e6}) {
    const auto w = RadialSolution::transmission(RadialGeometry::make_plane(3), kRef, lambda);
    EXPECT_NEAR(w.interface_value(), kK, 1e-15);
  }
}

TEST(RadialTransmission, EqualPhasesSphereClosedForm) {
  // rho_I = coth z - 1/z, rho_K = 1 + 1/z  =>  w(R) = (1 + 1/z) / (1 + coth z)
  for (double lambda : {1.0, 10.0, 100.0}) {
    const double z = std::sqrt(lambda / 2.0);
    const auto w = RadialSolution::transmission(RadialGeometry::sphere(1.0, 3), {2.0, 2.0}, lambda);
    EXPECT_NEAR(w.interface_value(), (1.0 + 1.0 / z) / (1.0 + 1.0 / std::tanh(z)), 1e-14);
  }
  const auto big = RadialSolution::transmission(RadialGeometry::sphere(1.0, 3), {2.0, 2.0}, 1e10);
  EXPECT_NEAR(big.interface_value(), 0.5, 1e-4);
}

TEST(RadialTransmission, FluxContinuityAndOde) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ul(0.0, 6.0), uR(0.3, 3.0);
  for (int i = 0; i < 20; ++i) {
    const double lambda = std::pow(10.0, ul(rng)), R = uR(rng);
    for (const auto& g : {RadialGeometry::sphere(R, 3), RadialGeometry::cylinder(R, 3)}) {
      const auto w = RadialSolution::transmission(g, kRef, lambda);
      const double in = kRef.sigma_s * w.normal_derivative(Side::inside);
      const double out = kRef.sigma_m * w.normal_derivative(Side::outside);
      EXPECT_NEAR(in, out, 1e-10 * std::max(1.0, std::abs(in)));
      EXPECT_NEAR(w.value(R), w.interface_value(), 1e-15);
      EXPECT_NEAR(w.value(std::nextafter(R, 0.0)), w.interface_value(), 1e-10);
      for (double f : {0.5, 0.9, 1.1, 2.0}) {
        const double r = f * R, scale = std::max(1.0, lambda);
        EXPECT_LT(std::abs(w.ode_residual(r)), 1e-10 * scale);
      }
    }
  }
}

TEST(RadialTransmission, LargeLambdaTendsToK) {
  const auto w = RadialSolution::transmission(RadialGeometry::sphere(1.0, 3), kRef, 1e8);
  EXPECT_NEAR(w.interface_value(), kK, 1e-3);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> us(-2.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    const TwoPhaseMedium m{std::exp(us(rng)), std::exp(us(rng))};
    const auto c = RadialSolution::transmission(RadialGeometry::cylinder(1.0, 3), m, 1e10);
    EXPECT_NEAR(c.interface_value(), interface_constant(m), 1e-3);
  }
}

TEST(RadialTransmission, ValuesBetweenZeroAndOne) {
  const auto w = RadialSolution::transmission(RadialGeometry::sphere(1.0, 3), kRef, 20.0);
  for (double r = 0.0; r < 4.0; r += 0.05) {
    EXPECT_GT(w.value(r), 0.0);
    EXPECT_LT(w.value(r), 1.0);
  }
}

TEST(CurvatureFit, CatalogSurfaces) {
  const auto plane = extract_mean_curvature(RadialGeometry::make_plane(3), kRef);
  EXPECT_LT(std::abs(plane.sum_kappa), 1e-8);
  const auto sphere = extract_mean_curvature(RadialGeometry::sphere(1.0, 3), kRef);
  EXPECT_NEAR(sphere.sum_kappa, 2.0, 0.02);
  EXPECT_NEAR(sphere.constant, -kK * 1.0 * 2.0 / 2.0, 0.01);
  const auto cyl = extract_mean_curvature(RadialGeometry::cylinder(2.0, 3), kRef);
  EXPECT_NEAR(cyl.sum_kappa, 0.5, 0.005);
  const auto s4 = extract_mean_curvature(RadialGeometry::sphere(2.0, 4), kRef);
  EXPECT_NEAR(s4.sum_kappa, 1.5, 0.015);
}

TEST(CurvatureFit, DefaultGrid) {
  const auto l = default_curvature_lambdas();
  ASSERT_EQ(l.size(), 49u);
  EXPECT_DOUBLE_EQ(l.front(), 1e2);
  EXPECT_NEAR(l.back(), 1e6, 1e-6);
  EXPECT_THROW(extract_mean_curvature(RadialGeometry::make_plane(3), kRef, {10.0, 20.0}), Error);
}

TEST(HigherOrder, PredictionArithmetic) {
  // catenoid waist, p = 2, sigma_s = 1, H2 = -1: -k/2
  EXPECT_NEAR(higher_order_prediction(kRef, 2, -1.0, Side::inside), -kK / 2.0, 1e-15);
  EXPECT_NEAR(higher_order_prediction(kRef, 2, -1.0, Side::inside) /
                  higher_order_prediction(kRef, 2, -1.0, Side::outside),
              0.25, 1e-15);
  EXPECT_EQ(higher_order_prediction(kRef, 2, 0.0, Side::inside), 0.0);
}

TEST(HigherOrder, CatenoidWaist) {
  auto cat = std::make_shared<geometry::Catenoid>(1.0);
  const auto fit = higher_order_fit(cat, kRef, 2, cat->nearest(cat->point(0.0, 0.0)));
  EXPECT_NEAR(fit.Hp, -1.0, 1e-10);
  EXPECT_NEAR(fit.coefficient_inside / fit.predicted_inside, 1.0, 0.1);
  EXPECT_NEAR(fit.coefficient_outside / fit.predicted_outside, 1.0, 0.1);
  EXPECT_NEAR(fit.ratio, 0.25, 0.025);
}

TEST(MaxPrinciple, RandomTrials) {
  const auto r1 = discrete_max_principle_check(100, 1.0, 7, 32);
  EXPECT_EQ(r1.trials, 100);
  EXPECT_GE(r1.min_value, -1e-12);
  EXPECT_TRUE(r1.passed);
  const auto r2 = discrete_max_principle_check(100, 10.0, 8);
  EXPECT_GE(r2.min_value, -1e-10);
}

TEST(MaxPrinciple, Deterministic) {
  const auto a = discrete_max_principle_check(10, 1.0, 99);
  const auto b = discrete_max_principle_check(10, 1.0, 99);
  EXPECT_EQ(a.min_value, b.min_value);
  EXPECT_EQ(a.worst_trial, b.worst_trial);
}

TEST(MaxPrinciple, LambdaZeroCounterexample) {
  const auto c = lambda_zero_counterexample(3, 512);
  EXPECT_GE(c.inner_boundary_value, 0.0);
  EXPECT_LT(c.min_interior, -0.4);
  EXPECT_NEAR(c.r_at_min, 2.0, 0.01);
  EXPECT_LT(c.max_profile_error, 1e-3);
}

TEST(GridHelmholtz, ZeroDataGivesZero) {
  auto f = grid::GridField::box(2, {12, 12, 1}, {0, 0, 0}, 0.1, 1.0);
  for (auto& b : f.boundary) b.value = [](const std::array<double, 3>&) { return 0.0; };
  grid_modified_helmholtz(f, 3.0, std::vector<double>(f.cells(), 0.0));
  for (double v : f.value) EXPECT_EQ(v, 0.0);
}

TEST(GridHelmholtz, PlaneLineMeshInterfaceIsK) {
  grid::LineMeshSpec spec;
  spec.h = 1e-2;
  spec.far_omega = spec.far_complement = 3.0;
  const auto mesh = grid::build_line_mesh(spec, kRef);
  const auto w = solve_helmholtz(mesh.system, 100.0);
  EXPECT_NEAR(mesh.interface_probe()(w), kK, 1e-10);
}

TEST(GridHelmholtz, RadialMeshConvergesToBessel) {
  // first-order sphere interface value from the radial mesh
  const double lambda = 25.0;
  const auto exact = RadialSolution::transmission(RadialGeometry::sphere(1.0, 3), kRef, lambda).interface_value();
  std::vector<double> err;
  for (double h : {0.02, 0.01, 0.005}) {
    grid::LineMeshSpec spec;
    spec.kind = grid::LineKind::radial;
    spec.d = 3;
    spec.R = 1.0;
    spec.h = h;
    spec.far_complement = 5.0;
    const auto mesh = grid::build_line_mesh(spec, kRef);
    err.push_back(std::abs(mesh.interface_probe()(solve_helmholtz(mesh.system, lambda)) - exact));
  }
  EXPECT_LT(err[2], err[1]);
  EXPECT_LT(err[1], err[0]);
  EXPECT_LT(err[2], 1e-3);
}
