#include "isotherm/wkb.hpp"

#include <algorithm>
#include <cmath>

#include "isotherm/errors.hpp"

namespace isotherm::wkb {

namespace {
constexpr int kForcingDegree = 2;
}

NormalRay make_ray(const geometry::Surface& surface, const geometry::ProjectionResult& foot, Side side,
                   const std::vector<double>& samples) {
  NormalRay ray;
  ray.z = foot.z;
  ray.n = side == Side::inside ? Vec(-foot.nu) : Vec(foot.nu);
  ray.side = side;
  const auto chart = surface.chart(side);
  ray.u = chart ? chart->coordinate(foot) : 0.0;
  ray.samples = samples;
  for (std::size_t i = 1; i < samples.size(); ++i)
    require(samples[i] > samples[i - 1], "ray samples must be increasing");
  return ray;
}

NormalRay ray_through(const geometry::Surface& surface, const Vec& x, const std::vector<double>& samples) {
  const auto foot = geometry::project(surface, x);
  return make_ray(surface, foot, foot.side, samples);
}

double compute_a0(const geometry::Surface& surface, const Vec& x) {
  const auto p = geometry::project(surface, x);
  const auto kappas = surface.kappas_at(p);
  const double sg = p.side == Side::inside ? 1.0 : -1.0;
  double prod = 1.0;
  std::vector<double> kk;
  for (double k : kappas) {
    const double f = 1.0 - sg * k * p.delta;
    if (!(f > 0)) fail(ErrorCode::degenerate_tube, "1 - kappa delta <= 0");
    prod *= f;
    kk.push_back(sg * k);
  }
  // the same product through the elementary symmetric functions
  const auto H = geometry::elementary_symmetric(kk);
  double alt = 1.0, dp = 1.0;
  for (std::size_t i = 0; i < H.size(); ++i) {
    dp *= p.delta;
    alt += ((i % 2 == 0) ? -1.0 : 1.0) * H[i] * dp;
  }
  if (std::abs(alt - prod) > 1e-12 * std::abs(prod))
    fail(ErrorCode::degenerate_tube, "product expansion cross-check failed");
  return 1.0 / std::sqrt(prod);
}

// ------------------------------------------------------------------ RayExpansion

RayExpansion::RayExpansion(std::shared_ptr<const geometry::NormalChart> chart, double u0, int order,
                           double delta_max, int nodes)
    : chart_(std::move(chart)), u0_(u0), order_(order), delta_max_(delta_max) {
  require(chart_ != nullptr, "ray expansion needs a normal chart");
  require(order >= 1, "order must be >= 1");
  require(delta_max > 0, "ray length must be positive");
  require(nodes >= 5, "too few Chebyshev nodes");
  lo_ = -0.05 * delta_max_;
  top_degree_ = 2 * order_ + 2;

  const auto taus = numerics::ChebSeries::lobatto_nodes(nodes, lo_, delta_max_);
  cumulative_.assign(static_cast<std::size_t>(order_ + 2), {});
  offset_.assign(static_cast<std::size_t>(order_ + 2), {});

  auto store = [&](int level, const std::vector<std::vector<double>>& samples) {
    auto& cum = cumulative_[static_cast<std::size_t>(level)];
    auto& off = offset_[static_cast<std::size_t>(level)];
    for (const auto& col : samples) {
      cum.push_back(numerics::ChebSeries(lo_, delta_max_, col).cumulative());
      off.push_back(cum.back()(0.0));
    }
  };

  for (int j = 1; j <= order_; ++j) {
    const int dj = degree(j);
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(dj + 1),
                                             std::vector<double>(taus.size()));
    for (std::size_t m = 0; m < taus.size(); ++m) {
      const Levels lv = eval(taus[m], j - 1, false);
      const Jet2 a0 = lv.A[0].truncated(dj);
      const Jet2 g = (lv.lap[static_cast<std::size_t>(j - 1)] * 0.5) / a0;
      for (int a = 0; a <= dj; ++a) samples[static_cast<std::size_t>(a)][m] = g(a, 0);
    }
    store(j, samples);
  }
  {
    std::vector<std::vector<double>> samples(kForcingDegree + 1, std::vector<double>(taus.size()));
    for (std::size_t m = 0; m < taus.size(); ++m) {
      const Jet2 inv = Jet2(kForcingDegree, 1.0) / a0_jet(taus[m], kForcingDegree);
      for (int a = 0; a <= kForcingDegree; ++a) samples[static_cast<std::size_t>(a)][m] = inv(a, 0);
    }
    store(order_ + 1, samples);
  }
}

double RayExpansion::integral(int level, int a, double delta) const {
  if (delta == 0.0) return 0.0;
  const auto L = static_cast<std::size_t>(level), A = static_cast<std::size_t>(a);
  return cumulative_[L][A](delta) - offset_[L][A];
}

Jet2 RayExpansion::lap_delta_jet(double tau0, int degree) const {
  const auto kap = chart_->kappas(u0_, degree);
  const Jet2 tau = Jet2::variable_s(degree, tau0);
  Jet2 L(degree, 0.0);
  for (const auto& k : kap) L -= k / (1.0 - k * tau);
  return L;
}

Jet2 RayExpansion::a0_jet(double tau0, int degree) const {
  const auto kap = chart_->kappas(u0_, degree);
  const Jet2 tau = Jet2::variable_s(degree, tau0);
  Jet2 prod(degree, 1.0);
  for (const auto& k : kap) {
    const Jet2 f = 1.0 - k * tau;
    if (!(f.value() > 0)) fail(ErrorCode::degenerate_tube, "1 - kappa tau <= 0 along the ray");
    prod = prod * f;
  }
  return pow(prod, -0.5);
}

Jet2 RayExpansion::laplacian(const Jet2& f, double tau0) const {
  const int d = f.degree();
  require(d >= 2, "Laplacian needs a jet of degree >= 2");
  const Jet2 fs = f.ds();
  Jet2 result = fs.ds() + lap_delta_jet(tau0, d - 2) * fs.truncated(d - 2);
  if (chart_->has_tangential()) {
    const auto kap = chart_->kappas(u0_, d - 1);
    const Jet2 tau = Jet2::variable_s(d - 1, tau0);
    Jet2 J(d - 1, 1.0);
    for (const auto& k : kap) J = J * (1.0 - k * tau);
    const Jet2 sqrt_g = chart_->area_factor(u0_, d - 1) * J;
    const Jet2 flux = chart_->conductance(u0_, tau0, d - 1) * f.du();
    result += flux.du() / sqrt_g.truncated(d - 2);
  }
  return result;
}

RayExpansion::Levels RayExpansion::eval(double delta, int ready, bool with_forcing) const {
  Levels lv;
  const Jet2 a0 = a0_jet(delta, top_degree_);
  lv.A.push_back(a0);
  lv.lap.push_back(laplacian(a0, delta));
  for (int j = 1; j <= ready; ++j) {
    const int dj = degree(j);
    const Jet2 a0j = a0.truncated(dj);
    const Jet2 g = (lv.lap[static_cast<std::size_t>(j - 1)] * 0.5) / a0j;
    Jet2 inner = g.integrate_s();
    for (int a = 0; a <= dj; ++a) inner(a, 0) = integral(j, a, delta);
    const Jet2 Aj = a0j * inner;
    lv.A.push_back(Aj);
    lv.lap.push_back(laplacian(Aj, delta));
  }
  if (with_forcing) {
    const Jet2 a0b = a0.truncated(kForcingDegree);
    Jet2 inner = (Jet2(kForcingDegree, 1.0) / a0b).integrate_s();
    for (int a = 0; a <= kForcingDegree; ++a) inner(a, 0) = integral(order_ + 1, a, delta);
    lv.B = a0b * inner;
    lv.lapB = laplacian(lv.B, delta);
  }
  return lv;
}

RayExpansion::Values RayExpansion::at(double delta) const {
  const Levels lv = eval(delta, order_, true);
  Values v;
  for (std::size_t j = 0; j < lv.A.size(); ++j) {
    v.A.push_back(lv.A[j].value());
    v.dA.push_back(lv.A[j](0, 1));
    v.lapA.push_back(lv.lap[j].value());
  }
  v.B = lv.B.value();
  v.dB = lv.B(0, 1);
  v.lapB = lv.lapB.value();
  v.lap_delta = lap_delta_jet(delta, 0).value();
  return v;
}

std::vector<Jet2> RayExpansion::jets(double delta) const {
  Levels lv = eval(delta, order_, true);
  lv.A.push_back(lv.B);
  return lv.A;
}

// ------------------------------------------------------------------ tables and identities

WkbCoefficientTable compute_coefficients(const NormalRay& ray, int n, const geometry::Surface& surface,
                                         const RayExpansion* reuse) {
  require(n >= 1, "order must be >= 1");
  require(!ray.samples.empty(), "ray has no samples");
  require(ray.samples.front() >= 0, "ray samples must be nonnegative");
  const double tmax = ray.samples.back();
  if (!(tmax < surface.reach(ray.side))) fail(ErrorCode::stencil_out_of_tube, "ray leaves the tubular neighborhood");
  std::unique_ptr<RayExpansion> own;
  const RayExpansion* ex = reuse;
  if (!ex || ex->order() != n || ex->delta_max() < tmax || ex->side() != ray.side) {
    std::shared_ptr<const geometry::NormalChart> chart = surface.chart(ray.side);
    if (!chart) fail(ErrorCode::unsupported_geometry, "no normal chart for surface " + surface.name());
    own = std::make_unique<RayExpansion>(chart, ray.u, n, std::max(tmax, surface.delta0()));
    ex = own.get();
  }
  WkbCoefficientTable t;
  t.order = n;
  t.side = ray.side;
  t.tau = ray.samples;
  t.A.assign(static_cast<std::size_t>(n), {});
  t.lapA.assign(static_cast<std::size_t>(n), {});
  for (double tau : ray.samples) {
    const auto v = ex->at(tau);
    for (int j = 0; j < n; ++j) {
      t.A[static_cast<std::size_t>(j)].push_back(v.A[static_cast<std::size_t>(j)]);
      t.lapA[static_cast<std::size_t>(j)].push_back(v.lapA[static_cast<std::size_t>(j)]);
    }
    const double An = v.A[static_cast<std::size_t>(n)], lapAn = v.lapA[static_cast<std::size_t>(n)];
    t.A_plus.push_back(An + v.B);
    t.A_minus.push_back(An - v.B);
    t.lapA_plus.push_back(lapAn + v.lapB);
    t.lapA_minus.push_back(lapAn - v.lapB);
  }
  return t;
}

double gradient_identity_residual(const geometry::Surface& surface, const RayExpansion& expansion, int j, int sign,
                                  const Vec& x, double h) {
  const int n = expansion.order();
  require(j >= 0 && j <= n, "coefficient index out of range");
  require(j < n || sign == 1 || sign == -1, "A_{n,+-} needs a sign");
  require(h > 0, "step must be positive");
  const auto foot = geometry::project(surface, x);
  const Side side = expansion.side();
  const double sg = foot.side == side ? 1.0 : -1.0;
  const double delta = sg * foot.delta;
  const Vec grad = side == Side::inside ? Vec(-foot.nu) : Vec(foot.nu);

  auto depth_of = [&](const Vec& y) {
    const auto py = geometry::project(surface, y);
    return (py.side == side ? 1.0 : -1.0) * py.delta;
  };
  auto coefficient = [&](const RayExpansion::Values& v) {
    return j < n ? v.A[static_cast<std::size_t>(j)] : v.A[static_cast<std::size_t>(n)] + sign * v.B;
  };
  const double dp = depth_of(x + h * grad), dm = depth_of(x - h * grad);
  const auto vp = expansion.at(dp), vm = expansion.at(dm), v0 = expansion.at(delta);
  const double directional = (coefficient(vp) - coefficient(vm)) / (2.0 * h);

  auto kap = surface.kappas_at(foot);
  if (side == Side::outside)
    for (double& k : kap) k = -k;
  double lap_delta = 0.0;
  for (double k : kap) lap_delta -= k / (1.0 - k * delta);

  double rhs = -0.5 * lap_delta * coefficient(v0);
  if (j >= 1) rhs += 0.5 * v0.lapA[static_cast<std::size_t>(j - 1)];
  if (j == n) rhs += sign;
  return std::abs(directional - rhs);
}

}  // namespace isotherm::wkb
