#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "isotherm/errors.hpp"
#include "isotherm/helicoid.hpp"

using namespace isotherm;
using namespace isotherm::helicoid;

namespace {

double dist(const Point& a, const Point& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

// Omega = open unit ball; (1, 0, 0) sits on its boundary.
Domain unit_ball() {
  Domain d;
  d.name = "ball";
  d.contains = [](const Point& y) { return y[0] * y[0] + y[1] * y[1] + y[2] * y[2] < 1.0; };
  d.level = [](const Point& y) { return 1.0 - std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]); };
  return d;
}

}  // namespace

TEST(Membership, Examples) {
  EXPECT_TRUE(in_omega({0.0, 1.0, 0.0}));
  EXPECT_FALSE(in_omega({0.0, -1.0, 0.0}));
  EXPECT_NEAR(level(helicoid_point(2.0, 1.3)), 0.0, 1e-15);
  EXPECT_FALSE(in_omega({0.0, 0.0, 0.0}));
}

TEST(Symmetries, GroupLawAndInvolution) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const FlipMap g;
  for (int i = 0; i < 200; ++i) {
    const Point x{u(rng), u(rng), u(rng)};
    const ScrewMotion a{u(rng)}, b{u(rng)};
    EXPECT_LT(dist(a(b(x)), a.compose(b)(x)), 1e-13);
    EXPECT_LT(dist(a.inverse()(a(x)), x), 1e-13);
    EXPECT_EQ(g(g(x)), x);
    // screws preserve Omega, the flip swaps it with the complement
    if (std::abs(level(x)) > 1e-9) {
      EXPECT_EQ(in_omega(a(x)), in_omega(x));
      EXPECT_NE(in_omega(g(x)), in_omega(x));
    }
  }
  // on the helicoid the flip agrees with the screw by -2 x3
  const Point p = helicoid_point(0.8, 0.3);
  EXPECT_LT(dist(g(p), ScrewMotion{-2.0 * p[2]}(p)), 1e-14);
}

TEST(Symmetries, ReportIsClean) {
  const auto r = symmetry_identities_check(10000, 3);
  EXPECT_EQ(r.samples, 10000);
  EXPECT_EQ(r.screw_violations, 0);
  EXPECT_EQ(r.flip_violations, 0);
  EXPECT_LT(r.max_flip_screw_gap, 1e-12);
  EXPECT_LT(r.max_group_law_error, 1e-12);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(GaussianMc, HalfSpaceClosedForm) {
  const auto e = u_gaussian_mc(half_space_domain(), {1.0, 0.0, 0.0}, 0.25, 400000, 11);
  EXPECT_TRUE(e.within(0.5 * std::erfc(1.0), 4.0)) << e.mean << " +- " << e.stderr_;
  EXPECT_EQ(e.n, 400000u);
  EXPECT_EQ(e.seed, 11u);
  const auto deep = u_gaussian_mc(half_space_domain(), {1.0, 0.0, 0.0}, 0.01, 100000, 12);
  EXPECT_LT(deep.mean, 1e-4);
}

TEST(GaussianMc, DeterministicAcrossJobCounts) {
  const Point x = helicoid_point(0.8, 0.3);
  const auto a = u_gaussian_mc(x, 1.0, 200000, 42, 1);
  const auto b = u_gaussian_mc(x, 1.0, 200000, 42, 7);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.stderr_, b.stderr_);
  const auto c = u_gaussian_mc(x, 1.0, 200000, 43, 1);
  EXPECT_NE(a.mean, c.mean);
}

TEST(GaussianMc, HalfValueOnTheHelicoid) {
  for (double t : {0.1, 1.0, 10.0})
    for (const Point& x : {helicoid_point(0.8, 0.3), helicoid_point(0.0, 0.0), helicoid_point(-1.5, 2.0)}) {
      const auto e = u_gaussian_mc(x, t, 100000, 100 + static_cast<std::uint64_t>(10 * t));
      EXPECT_TRUE(e.within(0.5, 4.0)) << t << ": " << e.mean << " +- " << e.stderr_;
    }
}

TEST(Densities, BallDomainClosedForms) {
  // sphere of radius r about a boundary point of the unit ball: (1 + r/2)/2 outside
  const Domain d = unit_ball();
  const Point x{1.0, 0.0, 0.0};
  for (double r : {0.3, 1.0, 1.6}) {
    const auto cap = sphere_cap_density(d, x, r, 200000, 7);
    EXPECT_TRUE(cap.within(0.5 + r / 4.0, 4.0)) << r << ": " << cap.mean;
    const auto ball = ball_density(d, x, r, 200000, 8);
    EXPECT_TRUE(ball.within(0.5 + 3.0 * r / 16.0, 4.0)) << r << ": " << ball.mean;
  }
}

TEST(Densities, BallIsShellAverageOfCaps) {
  // r'^2-weighted average over eight shells (midpoint in r'^3) against the direct ball estimate
  const Domain d = unit_ball();
  const Point x{1.0, 0.0, 0.0};
  const double r = 1.2;
  double avg = 0.0, var = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double rs = r * std::cbrt((i + 0.5) / 8.0);
    const auto cap = sphere_cap_density(d, x, rs, 100000, 200 + static_cast<std::uint64_t>(i));
    avg += cap.mean / 8.0;
    var += cap.stderr_ * cap.stderr_ / 64.0;
  }
  const auto ball = ball_density(d, x, r, 400000, 300);
  EXPECT_LT(std::abs(avg - ball.mean), 4.0 * std::sqrt(var + ball.stderr_ * ball.stderr_) + 1e-3);
  const auto hc = ball_density(helicoid_domain(), helicoid_point(0.8, 0.3), 1.0, 100000, 9);
  EXPECT_TRUE(hc.within(0.5, 4.0));
}

TEST(Densities, RequireSurfacePoint) {
  EXPECT_THROW(sphere_cap_density(helicoid_domain(), {0.0, 1.0, 0.0}, 1.0, 100, 1), Error);
  EXPECT_THROW(ball_density(unit_ball(), {0.5, 0.0, 0.0}, 1.0, 100, 1), Error);
  EXPECT_THROW(u_gaussian_mc({0.0, 1.0, 0.0}, -1.0, 100, 1), Error);
}

TEST(ProofReplay, SumAndScrewDifference) {
  const auto r = proof_replay(helicoid_point(0.8, 0.3), 1.0, 0.7, 100000, 17);
  EXPECT_EQ(r.u_x.seed, 17u);
  EXPECT_EQ(r.u_gx.seed, 18u);
  EXPECT_EQ(r.u_kx.seed, 19u);
  EXPECT_LT(std::abs(r.sum - 1.0), 4.0 * r.sum_stderr);
  EXPECT_LT(std::abs(r.screw_diff), 4.0 * r.screw_stderr);
  EXPECT_TRUE(r.consistent);
}
