#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "isotherm/errors.hpp"
#include "isotherm/kernel1d.hpp"
#include "isotherm/medium.hpp"
#include "isotherm/numerics.hpp"

using namespace isotherm;

namespace {

const TwoPhaseMedium kRef{1.0, 4.0};

}  // namespace

TEST(Medium, InterfaceConstantValues) {
  EXPECT_DOUBLE_EQ(interface_constant({1.0, 1.0}), 0.5);
  EXPECT_NEAR(interface_constant({1.0, 4.0}), 2.0 / 3.0, 1e-16);
  EXPECT_NEAR(interface_constant({4.0, 1.0}), 1.0 / 3.0, 1e-16);
}

TEST(Medium, SwapDuality) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const TwoPhaseMedium m{std::exp(d(rng)), std::exp(d(rng))};
    EXPECT_NEAR(interface_constant(m) + interface_constant(m.swapped()), 1.0, 1e-15);
  }
}

TEST(Medium, PhasesDistinctIsExact) {
  EXPECT_FALSE(TwoPhaseMedium(2.0, 2.0).phases_distinct());
  EXPECT_TRUE(TwoPhaseMedium(2.0, std::nextafter(2.0, 3.0)).phases_distinct());
}

TEST(Medium, RejectsNonPositiveConductivity) {
  EXPECT_THROW(TwoPhaseMedium(0.0, 1.0), Error);
  EXPECT_THROW(TwoPhaseMedium(1.0, -2.0), Error);
}

TEST(GaussianKernel, PeakEvenAndScaling) {
  EXPECT_DOUBLE_EQ(gaussian_kernel(0.0, 1.0, 1.0), 1.0 / std::sqrt(4.0 * M_PI));
  EXPECT_DOUBLE_EQ(gaussian_kernel(0.7, 0.3, 2.0), gaussian_kernel(-0.7, 0.3, 2.0));
  for (double z : {0.1, 0.5, 2.0})
    EXPECT_NEAR(gaussian_kernel(z, 0.4, 3.0), gaussian_kernel(z / std::sqrt(3.0), 0.4, 1.0) / std::sqrt(3.0), 1e-15);
  double prev = gaussian_kernel(0.0, 0.5, 1.0);
  for (double z = 0.1; z < 5.0; z += 0.1) {
    const double g = gaussian_kernel(z, 0.5, 1.0);
    EXPECT_LT(g, prev);
    prev = g;
  }
  EXPECT_THROW(gaussian_kernel(0.0, 0.0, 1.0), Error);
  EXPECT_THROW(gaussian_kernel(0.0, 1.0, 0.0), Error);
}

TEST(GaussianKernel, UnitMassByQuadrature) {
  const double t = 0.5, s = 3.0, w = 40.0 * std::sqrt(t * s);
  const double mass = numerics::integrate([&](double z) { return gaussian_kernel(z, t, s); }, -w, w, 1e-13);
  EXPECT_NEAR(mass, 1.0, 1e-12);
}

TEST(Kernel1d, EqualPhasesCollapseToGaussian) {
  const TwoPhaseMedium one{1.0, 1.0};
  EXPECT_NEAR(kernel1d::eval_kernel(0.3, -0.2, 0.5, one), gaussian_kernel(0.5, 0.5, 1.0), 1e-16);
  const auto a = kernel1d::amplitudes(one);
  EXPECT_EQ(a.reflect_m, 0.0);
  EXPECT_EQ(a.transmit_s, 1.0);
}

TEST(Kernel1d, TransmissionPiece) {
  // x1 < 0 < y1: transmitted Gaussian of the sigma_m phase
  const double expected = (2.0 * 2.0 / 3.0) * gaussian_kernel(-0.5 - 2.0 * 0.5, 1.0, 4.0);
  const auto piece = kernel1d::eval_kernel_piece(-0.5, 0.5, 1.0, kRef);
  EXPECT_EQ(piece.region, kernel1d::Region::minus_plus);
  EXPECT_NEAR(piece.value, expected, 1e-15);
}

TEST(Kernel1d, ContinuousAcrossSourceInterface) {
  for (double x1 : {-0.7, -0.1, 0.2, 1.3})
    for (double t : {0.01, 0.3, 2.0}) {
      const double below = kernel1d::eval_kernel(x1, -1e-13, t, kRef);
      const double above = kernel1d::eval_kernel(x1, 1e-13, t, kRef);
      EXPECT_NEAR(below, above, 1e-10 * (1.0 + std::abs(below)));
    }
}

TEST(Kernel1d, FluxMatchingAtInterface) {
  // sigma dG/dx1 continuous across x1 = 0 for a fixed source point
  const double h = 1e-6;
  for (double y : {-0.6, -0.05, 0.3})
    for (double t : {0.05, 0.5}) {
      const double gm = (kernel1d::eval_kernel(0.0, y, t, kRef) - kernel1d::eval_kernel(-h, y, t, kRef)) / h;
      const double gp = (kernel1d::eval_kernel(h, y, t, kRef) - kernel1d::eval_kernel(0.0, y, t, kRef)) / h;
      EXPECT_NEAR(kRef.sigma_m * gm, kRef.sigma_s * gp, 1e-4 * (1.0 + std::abs(gm)));
    }
}

TEST(Kernel1d, NonNegative) {
  for (double x1 = -2.0; x1 <= 2.0; x1 += 0.25)
    for (double y1 = -2.0; y1 <= 2.0; y1 += 0.25) EXPECT_GE(kernel1d::eval_kernel(x1, y1, 0.2, kRef), 0.0);
  EXPECT_THROW(kernel1d::eval_kernel(0.0, 0.0, -1.0, kRef), Error);
}

TEST(Kernel1d, MassIsOne) {
  EXPECT_NEAR(kernel1d::kernel_mass(0.4, 0.2, kRef), 1.0, 1e-10);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-2.0, 2.0), ul(-3.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    const double x = ux(rng), t = std::pow(10.0, ul(rng));
    EXPECT_NEAR(kernel1d::kernel_mass(x, t, kRef), 1.0, 1e-10) << "x=" << x << " t=" << t;
  }
}

TEST(Kernel1d, InterfaceValueIsConstantInTime) {
  const double k = interface_constant(kRef);
  EXPECT_NEAR(kernel1d::halfline_closed_form(0.0, 0.7, kRef), 2.0 / 3.0, 1e-15);
  for (double t : numerics::logspace(1e-3, 1e3, 25)) {
    EXPECT_NEAR(kernel1d::halfline_closed_form(0.0, t, kRef), k, 1e-10);
    EXPECT_NEAR(kernel1d::halfline_quadrature(0.0, t, kRef), k, 1e-10);
    EXPECT_NEAR(kernel1d::halfline_closed_form(0.0, t, {2.5, 2.5}), 0.5, 1e-15);
  }
}

TEST(Kernel1d, ClosedFormMatchesOnePhaseErfc) {
  // equal phases: u = erfc(x / (2 sqrt(t sigma))) / 2
  const TwoPhaseMedium m{2.0, 2.0};
  for (double x : {-1.0, -0.2, 0.3, 1.5})
    for (double t : {0.01, 0.5, 4.0})
      EXPECT_NEAR(kernel1d::halfline_closed_form(x, t, m), 0.5 * std::erfc(x / (2.0 * std::sqrt(2.0 * t))), 1e-15);
}

TEST(Kernel1d, TwoWayAgreementGrid) {
  const auto ts = numerics::logspace(1e-3, 10.0, 10);
  const auto xs = numerics::linspace(-2.0, 2.0, 10);
  for (double x : xs)
    for (double t : ts) {
      const auto v = kernel1d::halfline_solution(x, t, kRef);
      EXPECT_LT(v.abs_diff, 1e-10);
      EXPECT_GE(v.closed_form, 0.0);
      EXPECT_LE(v.closed_form, 1.0);
    }
}

TEST(Kernel1d, ComplementWithoutCancellation) {
  for (double x : {-0.5, -2.0, -6.0}) {
    const double c = kernel1d::halfline_complement(x, 0.01, kRef);
    EXPECT_GT(c, 0.0);
    if (x > -1.0) EXPECT_NEAR(c, 1.0 - kernel1d::halfline_closed_form(x, 0.01, kRef), 1e-15);
  }
}

TEST(Kernel1d, DeepPointSmallTime) { EXPECT_LT(kernel1d::halfline_closed_form(3.0, 0.01, kRef), 1e-8); }

TEST(Kernel1d, MonotoneInPosition) {
  double prev = 1.0;
  for (double x = -3.0; x <= 3.0; x += 0.1) {
    const double u = kernel1d::halfline_closed_form(x, 0.3, kRef);
    EXPECT_LE(u, prev);
    prev = u;
  }
}

TEST(DecayEnvelope, OnePhaseRate) {
  const TwoPhaseMedium one{1.0, 1.0};
  const auto ts = numerics::logspace(1e-3, 1.0, 30);
  const auto e = kernel1d::fit_decay_envelope({{1.0, 1.0}}, ts, one);
  EXPECT_NEAR(e.b, 0.25, 0.2 * 0.25);
  EXPECT_LE(e.max_log_excess, 1e-12);
}

TEST(DecayEnvelope, EnvelopeHoldsEverywhere) {
  const auto ts = numerics::logspace(1e-3, 1.0, 30);
  const std::vector<kernel1d::DecaySample> pts{{0.5, 0.5}, {0.8, 0.5}, {-0.5, 0.5}, {-1.2, 0.5}};
  const auto e = kernel1d::fit_decay_envelope(pts, ts, kRef);
  for (const auto& p : pts)
    for (double t : ts) {
      const double v = p.x1 > 0 ? kernel1d::halfline_closed_form(p.x1, t, kRef)
                                : kernel1d::halfline_complement(p.x1, t, kRef);
      EXPECT_LE(v, e.B * std::exp(-e.b / t) * (1.0 + 1e-12));
    }
}

TEST(DecayEnvelope, FastPhaseBound) {
  const auto ts = numerics::logspace(1e-3, 1.0, 30);
  const auto e = kernel1d::fit_decay_envelope({{0.5, 0.5}}, ts, kRef);
  EXPECT_GE(e.b, 0.9 * 0.25 / (4.0 * kRef.sigma_s));
}

TEST(DecayEnvelope, TinyValuesAtSmallTime) {
  EXPECT_LT(kernel1d::halfline_closed_form(1.0, 1e-3, kRef), 1e-20);
  EXPECT_LT(kernel1d::halfline_complement(-1.0, 1e-3, kRef), 1e-20);
}

TEST(DecayEnvelope, RejectsCloseSamples) {
  EXPECT_THROW(kernel1d::fit_decay_envelope({{0.1, 0.5}}, {0.1}, kRef), Error);
}
