#include "isotherm/parabolic.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <memory>

#include "isotherm/elliptic.hpp"
#include "isotherm/errors.hpp"

namespace isotherm::parabolic {

std::vector<double> make_time_grid(double t_end, const TimeGridSpec& spec) {
  require(t_end > 0.0 && spec.t_first > 0.0 && spec.ratio > 1.0, "time grid needs t_end > 0, t_first > 0, ratio > 1");
  std::vector<double> t{0.0};
  for (double s = std::min(spec.t_first, t_end); s < t_end; s *= spec.ratio) t.push_back(s);
  t.push_back(t_end);
  for (double s : spec.include) {
    require(s > 0.0 && s <= t_end, "included times must lie in (0, t_end]");
    t.push_back(s);
  }
  std::sort(t.begin(), t.end());
  std::vector<double> out{0.0};
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double prev = out.back();
    if (t[i] - prev <= 1e-12 * t[i]) {
      // keep an exact included value over a nearby geometric point
      if (std::find(spec.include.begin(), spec.include.end(), t[i]) != spec.include.end() || t[i] == t_end)
        out.back() = t[i];
      continue;
    }
    out.push_back(t[i]);
  }
  return out;
}

namespace {

class StepSolver {
 public:
  StepSolver(const grid::FvSystem& sys) : sys_(sys), direct_(sys.size() <= 60000) {}

  // (M + c K) x = rhs
  grid::Vector solve(double c, const grid::Vector& rhs, const grid::Vector& guess) {
    grid::SpMat A = sys_.K * c;
    for (int i = 0; i < sys_.size(); ++i) A.coeffRef(i, i) += sys_.mass[i];
    if (direct_) {
      if (!ldlt_) {
        ldlt_ = std::make_unique<Eigen::SimplicialLDLT<grid::SpMat>>();
        ldlt_->analyzePattern(A);
      }
      ldlt_->factorize(A);
      if (ldlt_->info() != Eigen::Success) fail(ErrorCode::non_convergence, "time-step factorization failed");
      return ldlt_->solve(rhs);
    }
    return grid::solve_spd(A, rhs, 1e-12, 20000, &guess);
  }

 private:
  const grid::FvSystem& sys_;
  bool direct_;
  std::unique_ptr<Eigen::SimplicialLDLT<grid::SpMat>> ldlt_;
};

}  // namespace

TimeSeries evolve(const grid::FvSystem& sys, double t_end, const std::vector<grid::Probe>& probes,
                  const EvolveOptions& options) {
  TimeSeries ts;
  ts.times = make_time_grid(t_end, options.time);
  grid::Vector u = options.initial ? *options.initial : sys.chi;
  require(u.size() == sys.size(), "initial data size mismatch");
  // Gershgorin bound on the spectrum of M^{-1} K
  double rho = 0.0;
  {
    grid::Vector rows = grid::Vector::Zero(sys.size());
    for (int k = 0; k < sys.K.outerSize(); ++k)
      for (grid::SpMat::InnerIterator it(sys.K, k); it; ++it) rows[it.row()] += std::abs(it.value());
    for (int i = 0; i < sys.size(); ++i) rho = std::max(rho, rows[i] / sys.mass[i]);
  }
  auto record = [&](const grid::Vector& v) {
    std::vector<double> row;
    row.reserve(probes.size());
    for (const auto& p : probes) row.push_back(p(v));
    ts.probe_values.push_back(std::move(row));
    if (options.store_fields) ts.fields.push_back(v);
  };
  ts.min_value = u.minCoeff();
  ts.max_value = u.maxCoeff();
  record(u);
  StepSolver solver(sys);
  double damping = 1.0;
  for (std::size_t k = 1; k < ts.times.size(); ++k) {
    const double dt = ts.times[k] - ts.times[k - 1];
    const bool implicit = options.scheme == Scheme::implicit_euler || ts.implicit_steps_taken < options.time.implicit_steps ||
                          damping > 1e-10;
    grid::Vector rhs;
    if (implicit) {
      rhs = sys.mass.cwiseProduct(u) + dt * sys.b;
      u = solver.solve(dt, rhs, u);
      damping /= 1.0 + dt * rho;
      ++ts.implicit_steps_taken;
    } else {
      rhs = sys.mass.cwiseProduct(u) - 0.5 * dt * (sys.K * u) + dt * sys.b;
      u = solver.solve(0.5 * dt, rhs, u);
    }
    ts.min_value = std::min(ts.min_value, u.minCoeff());
    ts.max_value = std::max(ts.max_value, u.maxCoeff());
    record(u);
  }
  return ts;
}

TransformResult laplace_stieltjes(const TimeSeries& series, double lambda, double tolerance) {
  require(lambda > 0.0, "lambda must be positive");
  require(series.times.size() >= 2 && series.times.front() == 0.0, "series must start at t = 0");
  TransformResult r;
  r.lambda = lambda;
  const double T = series.times.back();
  r.tail_bound = std::exp(-lambda * T);
  if (r.tail_bound > tolerance)
    fail(ErrorCode::insufficient_horizon, "tail bound exp(-lambda T) = " + std::to_string(r.tail_bound) +
                                              " exceeds tolerance " + std::to_string(tolerance));
  const std::size_t np = series.probe_values.front().size();
  r.w_time.assign(np, 0.0);
  for (std::size_t k = 1; k < series.times.size(); ++k) {
    const double a = series.times[k - 1], b = series.times[k], d = b - a;
    const double x = lambda * d;
    const double Eb = std::exp(-lambda * b);
    const double diff = Eb * std::expm1(x);  // e^{-lambda a} - e^{-lambda b}
    // E(b) (expm1(x) - x) / lambda, with the series for small x
    const double g = x < 1e-3 ? Eb * x * x * (0.5 + x * (1.0 / 6.0 + x / 24.0)) / lambda
                              : Eb * (std::expm1(x) - x) / lambda;
    for (std::size_t p = 0; p < np; ++p) {
      const double ua = series.probe_values[k - 1][p], ub = series.probe_values[k][p];
      r.w_time[p] += ua * diff + (ub - ua) / d * g;
    }
  }
  for (std::size_t p = 0; p < np; ++p) r.w_time[p] += series.probe_values.back()[p] * r.tail_bound;
  return r;
}

TransformResult transform_and_check(const grid::FvSystem& system, const std::vector<grid::Probe>& probes,
                                    const TimeSeries& series, double lambda, double tolerance) {
  TransformResult r = laplace_stieltjes(series, lambda, tolerance);
  const grid::Vector w = elliptic::solve_helmholtz(system, lambda);
  for (const auto& p : probes) r.w_elliptic.push_back(p(w));
  return r;
}

grid::LineMesh interface_mesh(const geometry::Surface& surface, const TwoPhaseMedium& medium, double h,
                              double t_end) {
  const auto g = elliptic::RadialGeometry::from_surface(surface);
  grid::LineMeshSpec spec;
  spec.h = h;
  spec.far_omega = 8.0 * std::sqrt(medium.sigma_s * t_end) + 1.0;
  spec.far_complement = 8.0 * std::sqrt(medium.sigma_m * t_end) + 1.0;
  if (g.plane) {
    spec.kind = grid::LineKind::plane;
  } else {
    spec.kind = grid::LineKind::radial;
    spec.d = g.d;
    spec.R = g.R;
  }
  return grid::build_line_mesh(spec, medium);
}

ConstancyProbe interface_constancy_probe(const geometry::Surface& surface, const TwoPhaseMedium& medium,
                                         const std::vector<double>& t_grid, double h) {
  require(!t_grid.empty(), "time grid is empty");
  ConstancyProbe out;
  out.k = interface_constant(medium);
  out.times = t_grid;
  const double t_end = *std::max_element(t_grid.begin(), t_grid.end());
  auto run = [&](double hh) {
    const auto mesh = interface_mesh(surface, medium, hh, t_end);
    EvolveOptions opt;
    opt.time.include = t_grid;
    const auto ts = evolve(mesh.system, t_end, {mesh.interface_probe()}, opt);
    std::vector<double> dev;
    for (double t : t_grid) {
      const auto it = std::find(ts.times.begin(), ts.times.end(), t);
      const auto idx = static_cast<std::size_t>(it - ts.times.begin());
      dev.push_back(std::abs(ts.probe_values[idx][0] - out.k));
    }
    return dev;
  };
  out.deviation = run(h);
  out.deviation_refined = run(0.5 * h);
  for (double d : out.deviation) out.max_deviation = std::max(out.max_deviation, d);
  const auto last = static_cast<std::size_t>(std::max_element(t_grid.begin(), t_grid.end()) - t_grid.begin());
  out.end_deviation = out.deviation[last];
  out.end_deviation_refined = out.deviation_refined[last];
  // second-order extrapolation; stable when the refinement moves the value by < 10%
  out.end_deviation_extrapolated = out.end_deviation_refined + (out.end_deviation_refined - out.end_deviation) / 3.0;
  out.richardson_stable = std::abs(out.end_deviation - out.end_deviation_refined) <= 0.1 * out.end_deviation_refined &&
                          out.end_deviation_extrapolated > 0.0;
  return out;
}

}  // namespace isotherm::parabolic
