#include "isotherm/elliptic.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "isotherm/errors.hpp"
#include "isotherm/numerics.hpp"
#include "isotherm/wkb.hpp"

namespace isotherm::elliptic {

// ------------------------------------------------------------------ curvature read-out

std::vector<double> default_curvature_lambdas() { return numerics::logspace(1e2, 1e6, 49); }

CurvatureFit extract_mean_curvature(const RadialGeometry& g, const TwoPhaseMedium& medium,
                                    const std::vector<double>& lambdas) {
  require(lambdas.size() >= 3, "curvature fit needs at least three lambda values");
  const double k = interface_constant(medium), ss = medium.sigma_s;
  CurvatureFit fit;
  fit.lambdas = lambdas;
  std::vector<std::vector<double>> rows;
  std::vector<double> y, wts;
  double scale = 0.0;
  for (double lambda : lambdas) {
    const auto sol = RadialSolution::dirichlet(g, ss, lambda, k, Side::inside);
    const double flux = ss * sol.normal_derivative(Side::inside);
    fit.flux.push_back(flux);
    scale = std::max(scale, std::abs(flux));
    rows.push_back({1.0, 1.0 / std::sqrt(lambda)});
    y.push_back(flux - k * std::sqrt(ss * lambda));
    wts.push_back(std::sqrt(lambda));
  }
  const auto lf = numerics::weighted_least_squares(rows, y, wts);
  fit.constant = lf.coefficients[0];
  fit.slope = lf.coefficients[1];
  fit.residual_norm = lf.residual_norm;
  // rounding in sigma dw/dnu sets a floor below which the residual carries no information
  const double floor = 1e-10 * scale;
  if (lf.residual_norm > 0.01 * std::abs(fit.constant) && lf.residual_norm > floor)
    fail(ErrorCode::fit_unstable, "curvature fit residual " + std::to_string(lf.residual_norm) +
                                      " exceeds 1% of the constant term " + std::to_string(fit.constant));
  fit.sum_kappa = -2.0 * fit.constant / (k * ss);
  fit.mean_curvature = g.N > 1 ? fit.sum_kappa / (g.N - 1) : 0.0;
  return fit;
}

// ------------------------------------------------------------------ higher order

std::vector<double> default_higher_order_lambdas() { return numerics::logspace(1e4, 1e8, 33); }

double higher_order_prediction(const TwoPhaseMedium& medium, int p, double Hp, Side side) {
  const double k = interface_constant(medium);
  double fact = 1.0;
  for (int i = 2; i <= p; ++i) fact *= i;
  const double base = k * std::sqrt(medium.sigma_s) * fact * std::pow(2.0, -p) * Hp;
  if (side == Side::inside) return base * (p % 2 ? -1.0 : 1.0) * std::pow(medium.sigma_s, 0.5 * p);
  return base * std::pow(medium.sigma_m, 0.5 * p);
}

HigherOrderFit higher_order_fit(const geometry::SurfacePtr& surface, const TwoPhaseMedium& medium, int p,
                                const geometry::ProjectionResult& foot, const std::vector<double>& lambdas) {
  require(surface != nullptr, "surface is null");
  require(p >= 2 && p <= surface->dimension() - 1, "order p must satisfy 2 <= p <= N - 1");
  const auto curv = geometry::curvature(*surface, foot);
  for (int i = 1; i < p; ++i)
    if (std::abs(curv.H[static_cast<std::size_t>(i - 1)]) > 1e-9)
      fail(ErrorCode::unsupported_geometry, "lower curvature symmetric functions must vanish at the footpoint");
  HigherOrderFit out;
  out.p = p;
  out.Hp = curv.H[static_cast<std::size_t>(p - 1)];
  const double k = interface_constant(medium);
  for (Side side : {Side::inside, Side::outside}) {
    wkb::BarrierFamily::Options opt;
    opt.order = 3;
    opt.allow_slab_surrogate = true;
    wkb::BarrierFamily fam(surface, medium, side, opt);
    const double u = surface->chart(side)->coordinate(foot);
    fam.set_calibration(fam.calibrate({u}));
    const double lambda_n = fam.calibration()->lambda_n;
    const double s = fam.sigma();
    std::vector<std::vector<double>> rows;
    std::vector<double> y, wts, gaps, used;
    for (double lambda : lambdas) {
      if (lambda < lambda_n) continue;
      const auto sw = fam.boundary_sandwich(u, lambda);
      const double mid = 0.5 * (sw.lower + sw.upper);
      const double e = 1.0 / std::sqrt(lambda);
      rows.push_back({e, e * e, e * e * e});
      y.push_back(s * mid - k * std::sqrt(medium.sigma_s * lambda));
      wts.push_back(lambda);
      gaps.push_back(0.5 * s * std::abs(sw.upper - sw.lower));
      used.push_back(lambda);
    }
    if (rows.size() < 6)
      fail(ErrorCode::threshold_not_met, "fewer than six lambda values above the calibrated threshold " +
                                             std::to_string(lambda_n));
    const auto lf = numerics::weighted_least_squares(rows, y, wts);
    const double c = lf.coefficients[0];
    for (std::size_t i = 0; i < used.size(); ++i) {
      out.max_half_gap = std::max(out.max_half_gap, gaps[i]);
      if (gaps[i] > std::abs(c) / std::sqrt(used[i]))
        fail(ErrorCode::sandwich_too_loose, "barrier gap exceeds the fitted term at lambda " + std::to_string(used[i]));
    }
    if (side == Side::inside) {
      out.coefficient_inside = c;
      out.predicted_inside = higher_order_prediction(medium, p, out.Hp, side);
      out.lambdas = used;
    } else {
      out.coefficient_outside = c;
      out.predicted_outside = higher_order_prediction(medium, p, out.Hp, side);
    }
  }
  out.ratio = out.coefficient_inside / out.coefficient_outside;
  out.predicted_ratio = out.predicted_inside / out.predicted_outside;
  return out;
}

// ------------------------------------------------------------------ discrete solves

grid::Vector solve_helmholtz(const grid::FvSystem& system, double lambda, const grid::Vector* guess,
                             grid::SolveInfo* info) {
  require(lambda >= 0.0, "lambda must be non-negative");
  const grid::Vector rhs = lambda * system.mass.cwiseProduct(system.chi) + system.b;
  return grid::solve_spd(system.helmholtz(lambda), rhs, 1e-11, 20000, guess, info);
}

grid::SolveInfo grid_modified_helmholtz(grid::GridField& field, double lambda, const std::vector<double>& source) {
  const auto sys = grid::assemble(field, source);
  grid::SolveInfo info;
  const grid::Vector w = solve_helmholtz(sys, lambda, nullptr, &info);
  field.value.assign(w.data(), w.data() + w.size());
  return info;
}

MaxPrincipleReport discrete_max_principle_check(int trials, double lambda, std::uint64_t seed, int n) {
  require(trials > 0 && n >= 2 && lambda > 0.0, "max-principle check needs trials > 0, n >= 2, lambda > 0");
  MaxPrincipleReport rep;
  rep.trials = trials;
  rep.min_value = INFINITY;
  for (int t = 0; t < trials; ++t) {
    numerics::CounterRng rng(seed, static_cast<std::uint64_t>(t));
    auto g = grid::GridField::box(2, {n, n, 1}, {0, 0, 0}, 1.0 / n);
    for (double& s : g.sigma) s = std::exp(std::log(0.25) + rng.uniform() * std::log(16.0));
    std::vector<double> chi(static_cast<std::size_t>(g.cells()));
    // sparse non-negative sources with many exact zeros
    for (double& c : chi) c = rng.uniform() < 0.5 ? 0.0 : rng.uniform();
    for (int f = 0; f < 4; ++f) {
      const double amp = rng.uniform(), ph = 2.0 * std::numbers::pi * rng.uniform();
      const bool zero = rng.uniform() < 0.3;
      g.boundary[f].type = grid::BoundaryType::dirichlet;
      g.boundary[f].value = [amp, ph, zero](const std::array<double, 3>& p) {
        return zero ? 0.0 : amp * (0.5 + 0.5 * std::sin(7.0 * p[0] + 5.0 * p[1] + ph));
      };
    }
    const auto sys = grid::assemble(g, chi);
    Eigen::SimplicialLDLT<grid::SpMat> ldlt(sys.helmholtz(lambda));
    if (ldlt.info() != Eigen::Success) fail(ErrorCode::non_convergence, "LDLT factorization failed");
    const grid::Vector w = ldlt.solve(lambda * sys.mass.cwiseProduct(sys.chi) + sys.b);
    const double m = w.minCoeff();
    if (m < rep.min_value) {
      rep.min_value = m;
      rep.worst_trial = t;
    }
  }
  rep.passed = rep.min_value >= -1e-12;
  return rep;
}

CounterexampleReport lambda_zero_counterexample(int N, int cells) {
  require(N >= 3 && cells >= 4, "counterexample needs N >= 3 and at least four cells");
  // radial finite volumes with exact shell resistances on [1, 2]
  const double a = 1.0, b = 2.0, h = (b - a) / cells;
  auto profile = [N](double r) { return std::pow(r, 2.0 - N) - 1.0; };
  auto resist = [N](double r0, double r1) { return (std::pow(r0, 2.0 - N) - std::pow(r1, 2.0 - N)) / (N - 2.0); };
  const int n = cells - 1;
  Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 0), rhs = Eigen::VectorXd::Zero(n);
  const double g0 = 0.0, g1 = profile(b);
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < cells; ++i) {
    const double T = 1.0 / resist(a + i * h, a + (i + 1) * h);
    const int l = i - 1, r = i;  // unknown indices of the segment ends
    if (l >= 0) trip.emplace_back(l, l, T);
    if (r < n) trip.emplace_back(r, r, T);
    if (l >= 0 && r < n) {
      trip.emplace_back(l, r, -T);
      trip.emplace_back(r, l, -T);
    } else if (l < 0) {
      rhs[r] += T * g0;
    } else {
      rhs[l] += T * g1;
    }
  }
  grid::SpMat K(n, n);
  K.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<grid::SpMat> ldlt(K);
  const Eigen::VectorXd w = ldlt.solve(rhs);
  CounterexampleReport rep;
  rep.inner_boundary_value = g0;
  rep.min_interior = INFINITY;
  for (int i = 0; i < n; ++i) {
    const double r = a + (i + 1) * h;
    rep.max_profile_error = std::max(rep.max_profile_error, std::abs(w[i] - profile(r)));
    if (w[i] < rep.min_interior) {
      rep.min_interior = w[i];
      rep.r_at_min = r;
    }
  }
  return rep;
}

DiskStudy disk_interface_study(const TwoPhaseMedium& medium, double lambda, double R, const std::vector<double>& hs) {
  require(hs.size() >= 2, "disk study needs at least two mesh sizes");
  DiskStudy st;
  const double smax = std::max(medium.sigma_s, medium.sigma_m);
  st.far_distance = 10.0 / std::sqrt(lambda / smax);
  st.exact = RadialSolution::transmission(RadialGeometry::cylinder(R, 2), medium, lambda).interface_value();
  std::vector<std::vector<double>> rows;
  std::vector<double> y, wts;
  for (double h : hs) {
    auto setup = grid::make_quarter_disk(R, medium, R + st.far_distance, h);
    DiskStudyLevel lv;
    lv.h = h;
    lv.iterations = grid_modified_helmholtz(setup.field, lambda, setup.chi).iterations;
    const grid::Vector w = Eigen::Map<const grid::Vector>(setup.field.value.data(), setup.field.cells());
    const int angles = 64;
    double sum = 0.0;
    for (int i = 0; i < angles; ++i) {
      const double th = (i + 0.5) * 0.5 * std::numbers::pi / angles;
      sum += grid::grid_probe(setup.field, {R * std::cos(th), R * std::sin(th), 0.0})(w);
    }
    lv.interface_mean = sum / angles;
    lv.error = std::abs(lv.interface_mean - st.exact);
    st.levels.push_back(lv);
    rows.push_back({1.0, std::log(h)});
    y.push_back(std::log(std::max(lv.error, 1e-300)));
    wts.push_back(1.0);
  }
  st.observed_order = numerics::weighted_least_squares(rows, y, wts).coefficients[1];
  return st;
}

}  // namespace isotherm::elliptic
