#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "isotherm/errors.hpp"
#include "isotherm/geometry.hpp"

using namespace isotherm;
using namespace isotherm::geometry;

namespace {

Vec v3(double a, double b, double c) {
  Vec x(3);
  x << a, b, c;
  return x;
}

// Central-difference Laplacian of the distance from the projection.
double fd_laplacian_delta(const Surface& s, const Vec& x, double h) {
  double lap = 0.0;
  const double d0 = project(s, x).delta;
  for (int i = 0; i < x.size(); ++i) {
    Vec e = Vec::Zero(x.size());
    e(i) = h;
    lap += project(s, x + e).delta - 2.0 * d0 + project(s, x - e).delta;
  }
  return lap / (h * h);
}

double fd_grad_norm(const Surface& s, const Vec& x, double h) {
  double g2 = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    Vec e = Vec::Zero(x.size());
    e(i) = h;
    const double g = (project(s, x + e).delta - project(s, x - e).delta) / (2.0 * h);
    g2 += g * g;
  }
  return std::sqrt(g2);
}

// Random points at depth in (0.05, 0.4) delta0 on either side, near the patch centre.
std::vector<Vec> tube_points(const Surface& s, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.6, 0.6), depth(0.05, 0.4);
  std::vector<Vec> out;
  const double d0 = s.delta0();
  while (static_cast<int>(out.size()) < count) {
    Vec z;
    if (s.name() == "helicoid") z = Helicoid::point(u(rng), u(rng));
    else if (s.name() == "catenoid") z = static_cast<const Catenoid&>(s).point(u(rng), 3.0 * u(rng));
    else if (s.name() == "sphere") {
      z = v3(u(rng), u(rng), u(rng)).normalized() * static_cast<const Sphere&>(s).radius();
    } else {
      z = v3(0.0, u(rng), u(rng));
    }
    const auto p = s.nearest(z);
    const double sgn = (out.size() % 2 == 0) ? 1.0 : -1.0;  // outward normal: + goes outside
    out.push_back(p.z + sgn * depth(rng) * d0 * p.nu);
  }
  return out;
}

}  // namespace

TEST(Projection, Hyperplane) {
  const Hyperplane plane(3);
  const auto p = project(plane, v3(0.3, 5.0, -2.0));
  EXPECT_NEAR((p.z - v3(0.0, 5.0, -2.0)).norm(), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(p.delta, 0.3);
  EXPECT_EQ(p.side, Side::inside);
}

TEST(Projection, SphereExample) {
  const Sphere s(1.0, 3);
  const auto p = s.nearest(v3(0.0, 0.0, 0.4));
  EXPECT_NEAR((p.z - v3(0.0, 0.0, 1.0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(p.delta, 0.6, 1e-15);
  EXPECT_EQ(p.side, Side::inside);
}

TEST(Projection, OutsideTubeIsRejected) {
  const Sphere s(1.0, 3);
  // the centre is one reach deep
  EXPECT_THROW(project(s, v3(0.0, 0.0, 0.0)), Error);
  const Catenoid cat(1.0);
  EXPECT_THROW(project(cat, v3(0.0, 0.0, 0.0)), Error);
}

TEST(Projection, HelicoidFixedPoint) {
  const Helicoid h;
  const Vec x = Helicoid::point(0.7, -0.4);
  const auto p = project(h, x);
  EXPECT_NEAR(p.delta, 0.0, 1e-12);
  EXPECT_NEAR((p.z - x).norm(), 0.0, 1e-12);
}

TEST(Projection, ReconstructionAndIdempotence) {
  const std::vector<SurfacePtr> surfaces{std::make_shared<Sphere>(1.0, 3), std::make_shared<Cylinder>(1.5, 3),
                                         std::make_shared<Helicoid>(), std::make_shared<Catenoid>(1.0)};
  for (const auto& s : surfaces)
    for (const auto& x : tube_points(*s, 20, 3)) {
      const auto p = project(*s, x);
      const double sgn = p.side == Side::outside ? 1.0 : -1.0;
      EXPECT_NEAR((p.z + sgn * p.delta * p.nu - x).norm(), 0.0, 1e-10) << s->name();
      EXPECT_NEAR(p.nu.norm(), 1.0, 1e-12);
      EXPECT_NEAR(s->nearest(p.z).delta, 0.0, 1e-10) << s->name();
    }
}

TEST(Projection, Eikonal) {
  const std::vector<SurfacePtr> surfaces{std::make_shared<Sphere>(1.0, 3), std::make_shared<Helicoid>(),
                                         std::make_shared<Catenoid>(1.0)};
  for (const auto& s : surfaces)
    for (const auto& x : tube_points(*s, 10, 8)) EXPECT_NEAR(fd_grad_norm(*s, x, 1e-4), 1.0, 1e-6) << s->name();
}

TEST(Curvature, ElementarySymmetric) {
  const auto h0 = elementary_symmetric({0.0, 0.0, 0.0});
  for (double v : h0) EXPECT_EQ(v, 0.0);
  const auto h = elementary_symmetric({0.5, 0.5, 0.5});
  ASSERT_EQ(h.size(), 3u);
  EXPECT_DOUBLE_EQ(h[0], 1.5);
  EXPECT_DOUBLE_EQ(h[1], 0.75);
  EXPECT_DOUBLE_EQ(h[2], 0.125);
  const auto m = elementary_symmetric({2.0, -3.0, 5.0, 0.5});
  EXPECT_DOUBLE_EQ(m[0], 4.5);
  EXPECT_DOUBLE_EQ(m[3], -15.0);
}

TEST(Curvature, HelicoidPrincipalCurvatures) {
  const Helicoid h;
  for (double rho : {0.0, 0.5, 1.2}) {
    const auto c = curvature(h, h.nearest(Helicoid::point(rho, 0.3)));
    const double a = 1.0 / (1.0 + rho * rho);
    ASSERT_EQ(c.kappas.size(), 2u);
    EXPECT_NEAR(std::max(c.kappas[0], c.kappas[1]), a, 1e-10);
    EXPECT_NEAR(std::min(c.kappas[0], c.kappas[1]), -a, 1e-10);
    EXPECT_NEAR(c.H[0], 0.0, 1e-12);
    EXPECT_NEAR(c.H[1], -a * a, 1e-10);
  }
}

TEST(Curvature, CatenoidMinimal) {
  const Catenoid cat(1.0);
  for (double v : {0.0, 0.3, -0.7}) {
    const auto c = curvature(cat, cat.nearest(cat.point(v, 1.0)));
    EXPECT_NEAR(c.H[0], 0.0, 1e-12);
    const double ch = std::cosh(v);
    EXPECT_NEAR(c.H[1], -1.0 / (ch * ch * ch * ch), 1e-10);
  }
}

TEST(Curvature, Delta0Admissible) {
  const std::vector<SurfacePtr> surfaces{std::make_shared<Sphere>(1.0, 3), std::make_shared<Cylinder>(2.0, 3),
                                         std::make_shared<Helicoid>(), std::make_shared<Catenoid>(1.0)};
  for (const auto& s : surfaces) EXPECT_LT(s->max_abs_curvature(), 1.0 / (2.0 * s->delta0())) << s->name();
}

TEST(LaplacianOfDistance, ClosedForms) {
  const Hyperplane plane(3);
  EXPECT_EQ(laplacian_of_distance(plane, v3(0.4, 1.0, 2.0)), 0.0);
  const Sphere s(1.0, 3);
  EXPECT_NEAR(laplacian_of_distance(s, v3(0.75, 0.0, 0.0)), -8.0 / 3.0, 1e-14);
  // outside: (N-1) / (R + delta)
  EXPECT_NEAR(laplacian_of_distance(s, v3(0.0, 1.3, 0.0)), 2.0 / 1.3, 1e-14);
  EXPECT_THROW(laplacian_of_distance(s, v3(1.0, 0.0, 0.0)), Error);
}

TEST(LaplacianOfDistance, MatchesFiniteDifferences) {
  const std::vector<SurfacePtr> surfaces{std::make_shared<Sphere>(1.0, 3), std::make_shared<Cylinder>(1.5, 3),
                                         std::make_shared<Helicoid>(), std::make_shared<Catenoid>(1.0)};
  int checked = 0;
  for (const auto& s : surfaces)
    for (const auto& x : tube_points(*s, 5, 17)) {
      EXPECT_NEAR(fd_laplacian_delta(*s, x, 1e-4), laplacian_of_distance(*s, x), 1e-5) << s->name();
      ++checked;
    }
  EXPECT_EQ(checked, 20);
}

TEST(ProductExpansion, Examples) {
  const Sphere s(1.0, 3);
  const auto e = curvature_product_expansion(s, v3(0.7, 0.0, 0.0));
  EXPECT_NEAR(e.lhs, 0.49, 1e-15);
  EXPECT_NEAR(e.rhs, 0.49, 1e-15);
  const Catenoid cat(1.0);
  const auto p = cat.nearest(cat.point(0.0, 0.0));
  const auto w = curvature_product_expansion(cat, p.z - 0.2 * p.nu);
  // kappa = (1, -1): (1 - 0.2)(1 + 0.2) = 1 + H2 delta^2
  EXPECT_NEAR(w.lhs, 0.96, 1e-12);
  EXPECT_NEAR(w.rhs, 0.96, 1e-12);
}

TEST(ProductExpansion, AgreesOnRandomPoints) {
  const std::vector<SurfacePtr> surfaces{std::make_shared<Sphere>(2.0, 3), std::make_shared<Helicoid>(),
                                         std::make_shared<Catenoid>(1.0)};
  for (const auto& s : surfaces)
    for (const auto& x : tube_points(*s, 10, 23)) {
      const auto e = curvature_product_expansion(*s, x);
      EXPECT_NEAR(e.lhs, e.rhs, 1e-13 * std::abs(e.lhs));
    }
}

TEST(TangentialGradient, ConstantAlongNormals) {
  const Hyperplane plane(3);
  EXPECT_EQ(tangential_gradient_check(plane, v3(0.2, 0.1, 0.0), 1), 0.0);
  const Sphere s(1.0, 3);
  EXPECT_LT(tangential_gradient_check(s, v3(0.8, 0.1, 0.0), 1), 1e-6);
  const Helicoid h;
  for (const auto& x : tube_points(h, 10, 31)) EXPECT_LT(tangential_gradient_check(h, x, 2), 1e-5);
}

TEST(Graph, QuadraticMatchesSphereCurvatureAtApex) {
  const auto g = Graph::quadratic({1.0, 1.0}, 1.0);
  const auto p = g->nearest(v3(0.0, 0.0, 0.1));
  const auto c = curvature(*g, p);
  EXPECT_NEAR(std::abs(c.kappas[0]), 1.0, 1e-8);
  EXPECT_NEAR(std::abs(c.kappas[1]), 1.0, 1e-8);
  EXPECT_NEAR(p.delta, 0.1, 1e-12);
}
