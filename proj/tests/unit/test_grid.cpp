#include <gtest/gtest.h>

#include <Eigen/SparseCholesky>
#include <cmath>
#include <random>

#include "isotherm/errors.hpp"
#include "isotherm/grid.hpp"

using namespace isotherm;
using namespace isotherm::grid;

namespace {

const TwoPhaseMedium kRef{1.0, 4.0};

void expect_m_matrix(const SpMat& A) {
  for (int c = 0; c < A.outerSize(); ++c) {
    double diag = 0.0, off = 0.0;
    for (SpMat::InnerIterator it(A, c); it; ++it) {
      if (it.row() == it.col()) {
        diag = it.value();
      } else {
        EXPECT_LE(it.value(), 0.0);
        off += std::abs(it.value());
      }
    }
    EXPECT_GT(diag, 0.0);
    EXPECT_GE(diag, off * (1.0 - 1e-14));
  }
}

}  // namespace

TEST(DiskArea, ExactPieces) {
  const double R = 1.3;
  EXPECT_NEAR(disk_rectangle_area(0, 2, 0, 2, R), M_PI * R * R / 4.0, 1e-14);
  EXPECT_DOUBLE_EQ(disk_rectangle_area(0.1, 0.3, 0.2, 0.5, R), 0.2 * 0.3);
  EXPECT_EQ(disk_rectangle_area(1.0, 1.5, 1.0, 1.5, R), 0.0);
  // strip 0 < x < R: half the quarter disk is at x < R / sqrt(2) ... checked by symmetry
  const double a = disk_rectangle_area(0, 0.4, 0, 2, R), b = disk_rectangle_area(0, 2, 0, 0.4, R);
  EXPECT_NEAR(a, b, 1e-14);
}

TEST(DiskArea, AdditiveAndMatchesMonteCarlo) {
  const double R = 1.0;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double total = 0.0;
  const int n = 16;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      total += disk_rectangle_area(i * 1.25 / n, (i + 1) * 1.25 / n, j * 1.25 / n, (j + 1) * 1.25 / n, R);
  EXPECT_NEAR(total, M_PI / 4.0, 1e-13);
  // a cell cut by the circle
  const double x0 = 0.6, x1 = 0.9, y0 = 0.55, y1 = 0.8;
  int hits = 0;
  const int m = 400000;
  for (int k = 0; k < m; ++k) {
    const double x = x0 + (x1 - x0) * u(rng), y = y0 + (y1 - y0) * u(rng);
    hits += x * x + y * y < R * R;
  }
  const double mc = (x1 - x0) * (y1 - y0) * hits / m;
  EXPECT_NEAR(disk_rectangle_area(x0, x1, y0, y1, R), mc, 4e-4);
}

TEST(Assembly, HelmholtzIsMMatrix) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ls(std::log(0.25), std::log(4.0));
  auto f = GridField::box(2, {10, 9, 1}, {0, 0, 0}, 0.1, 1.0);
  for (auto& s : f.sigma) s = std::exp(ls(rng));
  for (auto& b : f.boundary) b.value = [](const std::array<double, 3>&) { return 0.5; };
  f.boundary[2].type = BoundaryType::neumann;
  const auto sys = assemble(f, std::vector<double>(f.cells(), 0.0));
  for (double lambda : {1e-3, 1.0, 100.0}) expect_m_matrix(sys.helmholtz(lambda));
  const SpMat Kt = sys.K.transpose();
  EXPECT_NEAR((sys.K - Kt).norm(), 0.0, 1e-12);
  for (int i = 0; i < sys.size(); ++i) EXPECT_EQ(sys.mass(i), 1.0);
}

TEST(Assembly, HarmonicMeanFace) {
  // two cells: face conductance 2 s1 s2 / (s1 + s2) / h^2, Neumann elsewhere
  auto f = GridField::box(1, {2, 1, 1}, {0, 0, 0}, 0.5, 1.0);
  f.sigma = {1.0, 4.0};
  f.boundary[0].type = f.boundary[1].type = BoundaryType::neumann;
  const auto sys = assemble(f, {0.0, 0.0});
  EXPECT_NEAR(sys.K.coeff(0, 1), -(2.0 * 4.0 / 5.0) / 0.25, 1e-14);
}

TEST(Assembly, ConstantStateIsStationary) {
  // Dirichlet 1 everywhere: K 1 = b
  auto f = GridField::box(3, {5, 6, 4}, {0, 0, 0}, 0.2, 1.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> us(0.5, 3.0);
  for (auto& s : f.sigma) s = us(rng);
  for (auto& b : f.boundary) b.value = [](const std::array<double, 3>&) { return 1.0; };
  const auto sys = assemble(f, std::vector<double>(f.cells(), 1.0));
  const Vector ones = Vector::Ones(sys.size());
  EXPECT_NEAR((sys.K * ones - sys.b).lpNorm<Eigen::Infinity>(), 0.0, 1e-11);
}

TEST(Probe, InterpolatesLinearFieldsExactly) {
  auto f = GridField::box(2, {8, 8, 1}, {0, 0, 0}, 0.125, 1.0);
  Vector u(f.cells());
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) {
      const auto c = f.centre(i, j, 0);
      u(f.index(i, j, 0)) = 2.0 * c[0] - 3.0 * c[1] + 0.5;
    }
  for (const auto& p : std::vector<std::array<double, 3>>{{0.3, 0.41, 0}, {0.5, 0.5, 0}, {0.8, 0.2, 0}})
    EXPECT_NEAR(grid_probe(f, p)(u), 2.0 * p[0] - 3.0 * p[1] + 0.5, 1e-14);
}

TEST(Solver, CgMatchesDirect) {
  auto f = GridField::box(2, {30, 30, 1}, {0, 0, 0}, 1.0 / 30, 1.0);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> us(0.25, 4.0), ub(0.0, 1.0);
  for (auto& s : f.sigma) s = us(rng);
  for (auto& b : f.boundary) b.value = [](const std::array<double, 3>& p) { return p[0] * p[1]; };
  const auto sys = assemble(f, std::vector<double>(f.cells(), 0.0));
  const SpMat A = sys.helmholtz(5.0);
  Vector rhs = sys.b;
  for (int i = 0; i < rhs.size(); ++i) rhs(i) += ub(rng) * sys.mass(i);
  SolveInfo info;
  const Vector x = solve_spd(A, rhs, 1e-12, 20000, nullptr, &info);
  Eigen::SimplicialLDLT<SpMat> ldlt(A);
  const Vector y = ldlt.solve(rhs);
  EXPECT_LT((x - y).lpNorm<Eigen::Infinity>(), 1e-9);
  EXPECT_GT(info.iterations, 0);
  EXPECT_LE(info.relative_residual, 1e-12);
  EXPECT_THROW(solve_spd(A, rhs, 1e-14, 1), Error);
}

TEST(LineMesh, PlaneLayout) {
  LineMeshSpec spec;
  spec.h = 0.01;
  spec.far_omega = spec.far_complement = 2.0;
  const auto m = build_line_mesh(spec, kRef);
  EXPECT_EQ(m.x[static_cast<std::size_t>(m.interface_index)], 0.0);
  EXPECT_DOUBLE_EQ(m.system.chi(m.interface_index), interface_constant(kRef));
  for (std::size_t i = 1; i < m.x.size(); ++i) EXPECT_GT(m.x[i], m.x[i - 1]);
  for (int i = 0; i < m.system.size(); ++i) {
    EXPECT_GE(m.system.chi(i), 0.0);
    EXPECT_LE(m.system.chi(i), 1.0);
  }
  expect_m_matrix(m.system.helmholtz(1.0));
}

TEST(LineMesh, RadialProbeAndSymmetry) {
  LineMeshSpec spec;
  spec.kind = LineKind::radial;
  spec.d = 3;
  spec.R = 1.0;
  spec.h = 0.02;
  spec.far_complement = 3.0;
  const auto m = build_line_mesh(spec, kRef);
  EXPECT_TRUE(m.symmetric_lo);
  EXPECT_EQ(m.x.front(), 0.0);
  EXPECT_NEAR(m.x[static_cast<std::size_t>(m.interface_index)], 1.0, 1e-14);
  Vector u = Vector::Zero(m.system.size());
  for (int i = 0; i < u.size(); ++i) u(i) = m.x[static_cast<std::size_t>(i)];
  EXPECT_NEAR(m.probe_at(0.537)(u), 0.537, 1e-14);
  EXPECT_NEAR(m.interface_probe()(u), 1.0, 1e-14);
  expect_m_matrix(m.system.helmholtz(1.0));
}

TEST(QuarterDisk, SetupConsistency) {
  const auto d = make_quarter_disk(1.0, kRef, 3.0, 0.1);
  ASSERT_EQ(d.field.n[0], 30);
  double in = 0.0;
  for (double c : d.chi) {
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
    in += (1.0 - c) * 0.01;
  }
  EXPECT_NEAR(in, M_PI / 4.0, 1e-13);
  EXPECT_EQ(d.field.boundary[0].type, BoundaryType::neumann);
  EXPECT_EQ(d.field.boundary[1].type, BoundaryType::dirichlet);
  // face conductivities lie between the phases
  for (int a = 0; a < 2; ++a)
    for (double s : d.field.face_sigma[static_cast<std::size_t>(a)])
      if (s > 0.0) {
        EXPECT_GE(s, 1.0 - 1e-15);
        EXPECT_LE(s, 4.0 + 1e-15);
      }
  EXPECT_THROW(make_quarter_disk(1.0, kRef, 0.5, 0.1), Error);
}
