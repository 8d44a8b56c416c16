#include <algorithm>
#include <cmath>

#include "isotherm/errors.hpp"
#include "isotherm/wkb.hpp"

namespace isotherm::wkb {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// Depth of y measured into `side` (negative across the surface).
double signed_depth(const geometry::Surface& surface, const Vec& y, Side side, double& u,
                    const geometry::NormalChart& chart) {
  const auto p = geometry::project(surface, y);
  u = chart.coordinate(p);
  return (p.side == side ? 1.0 : -1.0) * p.delta;
}

}  // namespace

double near_boundary_prediction(int p, int s, double Hp) {
  return -std::pow(2.0, -(s + 1)) * ((p % 2 == 0) ? 1.0 : -1.0) * factorial(s + 2) * binomial(p, s + 2) * Hp;
}

NearBoundaryLaw near_boundary_law(const geometry::Surface& surface, const geometry::ProjectionResult& foot, int p,
                                  int s, LaplacianMethod method, int samples) {
  require(p >= 2, "near-boundary law needs p >= 2");
  require(s >= 0 && s <= p - 2, "s must lie in 0..p-2");
  const Side side = Side::inside;
  std::shared_ptr<const geometry::NormalChart> chart = surface.chart(side);
  if (!chart) fail(ErrorCode::unsupported_geometry, "no normal chart for surface " + surface.name());
  const double d0 = surface.delta0();
  const int order = std::max(1, s);
  const auto curv = geometry::curvature(surface, foot);
  for (int i = 0; i + 1 < p; ++i)
    if (std::abs(curv.H[static_cast<std::size_t>(i)]) > 1e-10)
      fail(ErrorCode::invalid_argument, "H_1..H_{p-1} must vanish at the footpoint");
  const double Hp = curv.H.at(static_cast<std::size_t>(p - 1));

  NearBoundaryLaw law;
  law.coefficient_predicted = near_boundary_prediction(p, s, Hp);
  law.exponent_predicted = p - 2 - s;
  law.delta = numerics::logspace(1e-3 * d0, 1e-1 * d0, samples);

  const double u0 = chart->coordinate(foot);
  const RayExpansion ex(chart, u0, order, d0);
  const Vec n_in = -foot.nu;

  if (method == LaplacianMethod::jet) {
    for (double d : law.delta) law.lapA.push_back(ex.at(d).lapA[static_cast<std::size_t>(s)]);
  } else {
    // Ambient 2N+1 point stencil; each off-ray point gets its own ray expansion.
    const double h = 1e-3 * d0;
    const int N = surface.dimension();
    for (double d : law.delta) {
      const Vec x = foot.z + d * n_in;
      auto value_at = [&](const Vec& y) {
        double u;
        const double t = signed_depth(surface, y, side, u, *chart);
        if (s == 0) {
          const auto kap = chart->kappas(u, 0);
          double prod = 1.0;
          for (const auto& k : kap) prod *= 1.0 - k.value() * t;
          return 1.0 / std::sqrt(prod);
        }
        const RayExpansion local(chart, u, order, d0);
        return local.at(t).A[static_cast<std::size_t>(s)];
      };
      const double centre = value_at(x);
      double lap = 0.0;
      for (int k = 0; k < N; ++k) {
        Vec e = Vec::Zero(N);
        e(k) = h;
        lap += value_at(x + e) - 2.0 * centre + value_at(x - e);
      }
      law.lapA.push_back(lap / (h * h));
    }
  }

  // exponent from log|Delta A_s| against log delta
  std::vector<std::vector<double>> design;
  std::vector<double> y, w;
  for (std::size_t i = 0; i < law.delta.size(); ++i) {
    const double v = std::abs(law.lapA[i]);
    if (!(v > 0)) fail(ErrorCode::fit_unstable, "Laplacian vanishes on the fit window");
    design.push_back({1.0, std::log(law.delta[i])});
    y.push_back(std::log(v));
    w.push_back(1.0);
  }
  law.exponent_measured = numerics::weighted_least_squares(design, y, w).coefficients[1];
  if (std::abs(law.exponent_measured - law.exponent_predicted) > 0.1)
    fail(ErrorCode::fit_unstable, "fitted exponent " + std::to_string(law.exponent_measured) + " deviates from " +
                                      std::to_string(law.exponent_predicted));

  // leading coefficient from c delta^e + c' delta^{e+1}
  design.clear();
  y.clear();
  for (std::size_t i = 0; i < law.delta.size(); ++i) {
    const double de = std::pow(law.delta[i], law.exponent_predicted);
    design.push_back({de, de * law.delta[i]});
    y.push_back(law.lapA[i]);
  }
  law.coefficient_measured = numerics::weighted_least_squares(design, y, w).coefficients[0];
  return law;
}

// ------------------------------------------------------------------ corrector

double HarmonicCorrector::operator()(double delta) const {
  require(delta >= 0 && delta <= delta0 * (1 + 1e-12), "corrector evaluated outside its tube");
  if (kind == Kind::slab || d == 1) return 2.0 * delta / delta0;
  const double sgn = side == Side::inside ? -1.0 : 1.0;
  const double r = R + sgn * delta, ro = R + sgn * delta0;
  if (d == 2) return 2.0 * std::log(r / R) / std::log(ro / R);
  const double e = 2.0 - d;
  return 2.0 * (std::pow(r, e) - std::pow(R, e)) / (std::pow(ro, e) - std::pow(R, e));
}

double HarmonicCorrector::depth_derivative_at_surface() const {
  if (kind == Kind::slab || d == 1) return 2.0 / delta0;
  const double sgn = side == Side::inside ? -1.0 : 1.0;
  const double ro = R + sgn * delta0;
  if (d == 2) return 2.0 * sgn / (R * std::log(ro / R));
  const double e = 2.0 - d;
  return 2.0 * sgn * e * std::pow(R, e - 1) / (std::pow(ro, e) - std::pow(R, e));
}

HarmonicCorrector make_corrector(const geometry::Surface& surface, Side side, double delta0,
                                 bool allow_slab_surrogate) {
  HarmonicCorrector psi;
  psi.delta0 = delta0;
  psi.side = side;
  const auto model = surface.radial_model();
  if (model) {
    psi.d = model->d;
    psi.R = model->R;
    psi.kind = model->d == 1 ? HarmonicCorrector::Kind::slab : HarmonicCorrector::Kind::radial;
    if (psi.kind == HarmonicCorrector::Kind::radial && side == Side::inside && delta0 >= model->R)
      fail(ErrorCode::degenerate_tube, "inner tube reaches the centre");
    return psi;
  }
  if (!allow_slab_surrogate)
    fail(ErrorCode::unsupported_geometry, "no closed-form harmonic corrector on the " + surface.name() + " tube");
  return psi;
}

double harmonic_corrector(const geometry::Surface& surface, const Vec& x, bool allow_slab_surrogate) {
  const auto p = geometry::project(surface, x);
  const double d0 = surface.delta0();
  if (p.delta > d0) fail(ErrorCode::outside_tube, "point beyond the corrector tube");
  return make_corrector(surface, p.side, d0, allow_slab_surrogate)(p.delta);
}

// ------------------------------------------------------------------ barrier family

BarrierFamily::BarrierFamily(geometry::SurfacePtr surface, TwoPhaseMedium medium, Side side, Options options)
    : surface_(std::move(surface)), medium_(medium), side_(side), order_(options.order) {
  require(surface_ != nullptr, "barrier needs a surface");
  require(order_ >= 1, "barrier order must be >= 1");
  chart_ = surface_->chart(side_);
  if (!chart_) fail(ErrorCode::unsupported_geometry, "no normal chart for surface " + surface_->name());
  delta0_ = options.delta0.value_or(surface_->delta0());
  require(surface_->max_abs_curvature() * 2.0 * delta0_ < 1.0, "delta0 violates max|kappa| < 1/(2 delta0)");
  psi_ = make_corrector(*surface_, side_, delta0_, options.allow_slab_surrogate);
  nodes_ = options.chebyshev_nodes;
}

double BarrierFamily::sigma() const { return side_ == Side::inside ? medium_.sigma_s : medium_.sigma_m; }

double BarrierFamily::amplitude() const {
  const double k = interface_constant(medium_);
  return side_ == Side::inside ? k : 1.0 - k;
}

double BarrierFamily::eta() const { return 0.5 * delta0_ / std::sqrt(sigma()); }

const RayExpansion& BarrierFamily::expansion(double u) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(u);
  if (it == cache_.end())
    it = cache_.emplace(u, std::make_shared<RayExpansion>(chart_, u, order_, delta0_, nodes_)).first;
  return *it->second;
}

void BarrierFamily::locate(const Vec& x, double& u, double& delta) const {
  const auto p = geometry::project(*surface_, x);
  if (p.side != side_ && p.delta > 1e-12) fail(ErrorCode::invalid_argument, "point lies on the other side");
  if (p.delta > delta0_ * (1 + 1e-12)) fail(ErrorCode::outside_tube, "point beyond the barrier tube");
  u = chart_->coordinate(p);
  delta = p.delta;
}

double BarrierFamily::f(double u, double delta, double lambda, int sign) const {
  require(lambda > 0, "lambda must be positive");
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  const auto v = expansion(u).at(delta);
  const double eps = std::sqrt(sigma() / lambda), mu = std::sqrt(lambda / sigma());
  double sum = 0.0, ej = 1.0;
  for (int j = 0; j < order_; ++j) {
    sum += ej * v.A[static_cast<std::size_t>(j)];
    ej *= eps;
  }
  sum += ej * (v.A[static_cast<std::size_t>(order_)] + sign * v.B);
  return amplitude() * std::exp(-mu * delta) * sum;
}

double BarrierFamily::f(const Vec& x, double lambda, int sign) const {
  double u, d;
  locate(x, u, d);
  return f(u, d, lambda, sign);
}

EllipticResidual BarrierFamily::elliptic_residual(double u, double delta, double lambda, int sign) const {
  require(lambda > 0, "lambda must be positive");
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  const RayExpansion& ex = expansion(u);
  const auto jets = ex.jets(delta);
  const double s = sigma(), eps = std::sqrt(s / lambda), mu = std::sqrt(lambda / s);
  // P = A_0 + sum eps^j A_j + eps^n A_{n,+-}
  Jet2 P = jets[0].truncated(2);
  double ej = 1.0;
  for (int j = 1; j <= order_; ++j) {
    ej *= eps;
    P += jets[static_cast<std::size_t>(j)].truncated(2) * ej;
  }
  P += jets[static_cast<std::size_t>(order_ + 1)].truncated(2) * (ej * sign);
  // Delta(e^{-mu delta} P) = e^{-mu delta}(Delta P - 2 mu dP/ddelta - mu (Delta delta) P + mu^2 P); the mu^2
  // term cancels against lambda / sigma exactly.
  const double lap_delta = ex.lap_delta_jet(delta, 0).value();
  const double lapP = ex.laplacian(P, delta).value();
  const double lhs_core = lapP - 2.0 * mu * (P(0, 1) + 0.5 * lap_delta * P.value());
  const double pref = amplitude() * s * std::exp(-mu * delta);
  EllipticResidual r;
  r.lhs = pref * lhs_core;
  const auto v = ex.at(delta);
  const double lap_forced = v.lapA[static_cast<std::size_t>(order_)] + sign * v.lapB;
  r.rhs = pref * std::pow(eps, order_ - 1) * (-2.0 * sign + eps * lap_forced);
  r.sign_ok = sign > 0 ? r.lhs < 0 : r.lhs > 0;
  return r;
}

EllipticResidual BarrierFamily::elliptic_residual(const Vec& x, double lambda, int sign) const {
  double u, d;
  locate(x, u, d);
  return elliptic_residual(u, d, lambda, sign);
}

Calibration BarrierFamily::calibrate(const std::vector<double>& footpoints_u,
                                     const std::function<double(double)>& exact_outer) const {
  require(!footpoints_u.empty(), "calibration needs footpoints");
  Calibration cal;
  cal.eta = eta();
  const double s = sigma();
  struct Sample {
    double lap_plus, lap_minus;
  };
  std::vector<Sample> tube;
  struct Outer {
    std::vector<double> A;
    double B;
  };
  std::vector<Outer> outer;
  const auto depths = numerics::linspace(0.0, delta0_, 17);
  for (double u : footpoints_u) {
    const RayExpansion& ex = expansion(u);
    for (double d : depths) {
      const auto v = ex.at(d);
      const double ln = v.lapA[static_cast<std::size_t>(order_)];
      tube.push_back({ln + v.lapB, ln - v.lapB});
      cal.c_n = std::max({cal.c_n, std::abs(ln + v.lapB), std::abs(ln - v.lapB)});
    }
    const auto v = ex.at(delta0_);
    outer.push_back({v.A, v.B});
  }
  auto holds = [&](double lambda) {
    const double eps = std::sqrt(s / lambda), mu = std::sqrt(lambda / s);
    for (const auto& t : tube)
      if (!(-2.0 + eps * t.lap_plus < 0) || !(2.0 + eps * t.lap_minus > 0)) return false;
    const double bound = std::exp(-cal.eta * std::sqrt(lambda));
    for (const auto& o : outer)
      for (int sign : {1, -1}) {
        double sum = 0.0, ej = 1.0;
        for (int j = 0; j < order_; ++j) {
          sum += ej * o.A[static_cast<std::size_t>(j)];
          ej *= eps;
        }
        sum += ej * (o.A[static_cast<std::size_t>(order_)] + sign * o.B);
        if (std::abs(amplitude() * std::exp(-mu * delta0_) * sum) > bound) return false;
      }
    if (exact_outer && exact_outer(lambda) > bound) return false;
    return true;
  };
  // log scan, confirm on the remaining scan points, then bisect in log lambda
  const double cap = 1e10;
  std::vector<double> scan;
  for (double l = 1e-2; l <= cap * 1.0000001; l *= 2.0) scan.push_back(l);
  int first = -1;
  for (int i = static_cast<int>(scan.size()) - 1; i >= 0; --i) {
    if (holds(scan[static_cast<std::size_t>(i)]))
      first = i;
    else
      break;
  }
  if (first < 0) fail(ErrorCode::threshold_not_found, "no lambda_n <= 1e10 satisfies the barrier conditions");
  if (first == 0) {
    cal.lambda_n = scan[0];
    return cal;
  }
  double lo = std::log(scan[static_cast<std::size_t>(first - 1)]), hi = std::log(scan[static_cast<std::size_t>(first)]);
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (holds(std::exp(mid)))
      hi = mid;
    else
      lo = mid;
  }
  cal.lambda_n = std::exp(hi);
  return cal;
}

double BarrierFamily::w(double u, double delta, double lambda, int sign) const {
  if (!calibration_) fail(ErrorCode::threshold_not_met, "barrier family is not calibrated");
  if (lambda < calibration_->lambda_n)
    fail(ErrorCode::threshold_not_met,
         "lambda " + std::to_string(lambda) + " below lambda_n " + std::to_string(calibration_->lambda_n));
  return f(u, delta, lambda, sign) + sign * psi_(delta) * std::exp(-calibration_->eta * std::sqrt(lambda));
}

double BarrierFamily::w(const Vec& x, double lambda, int sign) const {
  double u, d;
  locate(x, u, d);
  return w(u, d, lambda, sign);
}

double BarrierFamily::boundary_flux(double u, double lambda, int sign) const {
  if (!calibration_) fail(ErrorCode::threshold_not_met, "barrier family is not calibrated");
  if (lambda < calibration_->lambda_n) fail(ErrorCode::threshold_not_met, "lambda below lambda_n");
  const auto v = expansion(u).at(0.0);
  const double s = sigma(), eps = std::sqrt(s / lambda), mu = std::sqrt(lambda / s);
  // d/dtau [e^{-mu tau} P] at 0 with P(0) = 1
  double dP = v.dA[0], ej = 1.0;
  for (int j = 1; j <= order_; ++j) {
    ej *= eps;
    dP += ej * v.dA[static_cast<std::size_t>(j)];
  }
  dP += ej * sign * v.dB;
  const double flux_f = amplitude() * (mu - dP);
  return flux_f - sign * psi_.depth_derivative_at_surface() * std::exp(-calibration_->eta * std::sqrt(lambda));
}

BarrierFamily::Sandwich BarrierFamily::boundary_sandwich(double u, double lambda) const {
  return {boundary_flux(u, lambda, +1), boundary_flux(u, lambda, -1)};
}

}  // namespace isotherm::wkb
