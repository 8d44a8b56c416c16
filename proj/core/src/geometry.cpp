#include "isotherm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isotherm/errors.hpp"

namespace isotherm::geometry {

const char* to_string(Side side) { return side == Side::inside ? "inside" : "outside"; }

std::unique_ptr<NormalChart> Surface::chart(Side) const { return nullptr; }

double Surface::delta0() const {
  if (delta0_) return *delta0_;
  const double kmax = max_abs_curvature();
  return kmax > 0 ? 0.45 / kmax : 0.45;
}

void Surface::set_delta0(double d0) {
  require(d0 > 0, "delta0 must be positive");
  const double kmax = max_abs_curvature();
  require(kmax * 2.0 * d0 < 1.0, "delta0 violates max|kappa| < 1/(2 delta0)");
  delta0_ = d0;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec unit(int N, int axis) {
  Vec e = Vec::Zero(N);
  e(axis) = 1.0;
  return e;
}

struct Minimum1d {
  double s;
  double value;
  bool ambiguous;
};

// Global minimum of a smooth 1D energy on [lo, hi]: grid seeds, then safeguarded Newton on
// every grid-local minimum. Two distinct minimizers with the same energy are flagged.
Minimum1d minimize_1d(const std::function<double(double)>& E, const std::function<double(double)>& dE,
                      const std::function<double(double)>& d2E, double lo, double hi, int grid = 96) {
  std::vector<double> s(static_cast<std::size_t>(grid + 1)), e(s.size());
  for (int i = 0; i <= grid; ++i) {
    s[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / grid;
    e[static_cast<std::size_t>(i)] = E(s[static_cast<std::size_t>(i)]);
  }
  const double hstep = (hi - lo) / grid;
  std::vector<Minimum1d> found;
  for (int i = 0; i <= grid; ++i) {
    const auto I = static_cast<std::size_t>(i);
    const bool left_ok = i == 0 || e[I] <= e[I - 1];
    const bool right_ok = i == grid || e[I] <= e[I + 1];
    if (!(left_ok && right_ok)) continue;
    double a = std::max(lo, s[I] - hstep), b = std::min(hi, s[I] + hstep);
    double x = s[I];
    for (int it = 0; it < 100; ++it) {
      const double g = dE(x), h = d2E(x);
      if (g > 0)
        b = std::min(b, x);
      else
        a = std::max(a, x);
      double nx = (h > 0) ? x - g / h : x - (g > 0 ? 1 : -1) * 0.5 * (b - a);
      if (!(nx > a && nx < b)) nx = 0.5 * (a + b);
      const double step = std::abs(nx - x);
      x = nx;
      if (step < 1e-14 * (1.0 + std::abs(x))) break;
    }
    found.push_back({x, E(x), false});
  }
  std::sort(found.begin(), found.end(), [](auto& p, auto& q) { return p.value < q.value; });
  Minimum1d best = found.front();
  for (std::size_t i = 1; i < found.size(); ++i) {
    const bool distinct = std::abs(found[i].s - best.s) > 1e-7 * (1.0 + std::abs(best.s));
    if (distinct && std::abs(found[i].value - best.value) <= 1e-12 * (1.0 + best.value)) best.ambiguous = true;
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------- hyperplane

Hyperplane::Hyperplane(int N) : N_(N) { require(N >= 2, "hyperplane needs N >= 2"); }

ProjectionResult Hyperplane::nearest(const Vec& x) const {
  require(x.size() == N_, "point dimension mismatch");
  ProjectionResult p;
  p.z = x;
  p.z(0) = 0.0;
  p.delta = std::abs(x(0));
  p.nu = -unit(N_, 0);
  p.side = x(0) >= 0 ? Side::inside : Side::outside;
  return p;
}

std::vector<double> Hyperplane::kappas_at(const ProjectionResult&) const {
  return std::vector<double>(static_cast<std::size_t>(N_ - 1), 0.0);
}

double Hyperplane::reach(Side) const { return kInf; }

// ---------------------------------------------------------------- sphere

Sphere::Sphere(double R, int N) : R_(R), N_(N) {
  require(R > 0, "sphere radius must be positive");
  require(N >= 2, "sphere needs N >= 2");
}

ProjectionResult Sphere::nearest(const Vec& x) const {
  require(x.size() == N_, "point dimension mismatch");
  const double r = x.norm();
  if (r < 1e-300) fail(ErrorCode::ambiguous_projection, "sphere centre has no unique nearest point");
  ProjectionResult p;
  p.nu = x / r;
  p.z = R_ * p.nu;
  p.delta = std::abs(R_ - r);
  p.side = r <= R_ ? Side::inside : Side::outside;
  return p;
}

std::vector<double> Sphere::kappas_at(const ProjectionResult&) const {
  return std::vector<double>(static_cast<std::size_t>(N_ - 1), 1.0 / R_);
}

double Sphere::reach(Side side) const { return side == Side::inside ? R_ : kInf; }

// ---------------------------------------------------------------- cylinder

Cylinder::Cylinder(double R, int N) : R_(R), N_(N) {
  require(R > 0, "cylinder radius must be positive");
  require(N >= 2, "cylinder needs N >= 2");
}

ProjectionResult Cylinder::nearest(const Vec& x) const {
  require(x.size() == N_, "point dimension mismatch");
  const double r = std::hypot(x(0), x(1));
  if (r < 1e-300) fail(ErrorCode::ambiguous_projection, "cylinder axis has no unique nearest point");
  ProjectionResult p;
  p.nu = Vec::Zero(N_);
  p.nu(0) = x(0) / r;
  p.nu(1) = x(1) / r;
  p.z = x;
  p.z(0) = R_ * p.nu(0);
  p.z(1) = R_ * p.nu(1);
  p.delta = std::abs(R_ - r);
  p.side = r <= R_ ? Side::inside : Side::outside;
  return p;
}

std::vector<double> Cylinder::kappas_at(const ProjectionResult&) const {
  std::vector<double> k(static_cast<std::size_t>(N_ - 1), 0.0);
  k[0] = 1.0 / R_;
  return k;
}

double Cylinder::reach(Side side) const { return side == Side::inside ? R_ : kInf; }

// ---------------------------------------------------------------- catenoid

Catenoid::Catenoid(double c, double v_patch) : c_(c), v_patch_(v_patch) {
  require(c > 0, "catenoid waist must be positive");
  require(v_patch > 0, "catenoid patch must be positive");
}

double Catenoid::level(const Vec& x) const { return c_ * std::cosh(x(2) / c_) - std::hypot(x(0), x(1)); }

Vec Catenoid::point(double v, double theta) const {
  const double r = c_ * std::cosh(v / c_);
  return Eigen::Vector3d(r * std::cos(theta), r * std::sin(theta), v);
}

Vec Catenoid::inward_normal(double v, double theta) const {
  const double C = std::cosh(v / c_);
  return Eigen::Vector3d(-std::cos(theta) / C, -std::sin(theta) / C, std::sinh(v / c_) / C);
}

ProjectionResult Catenoid::nearest(const Vec& x) const {
  require(x.size() == 3, "catenoid lives in R^3");
  const double r = std::hypot(x(0), x(1)), z = x(2);
  if (r < 1e-300) fail(ErrorCode::ambiguous_projection, "catenoid axis has no unique nearest point");
  const double theta = std::atan2(x(1), x(0));
  const double c = c_;
  auto E = [&](double v) {
    const double dr = r - c * std::cosh(v / c);
    return dr * dr + (z - v) * (z - v);
  };
  auto dE = [&](double v) { return 2.0 * ((c * std::cosh(v / c) - r) * std::sinh(v / c) + (v - z)); };
  auto d2E = [&](double v) {
    const double C = std::cosh(v / c), S = std::sinh(v / c);
    return 2.0 * (S * S + (c * C - r) * C / c + 1.0);
  };
  const double d0 = std::abs(r - c * std::cosh(z / c)) + 1e-12;
  const auto m = minimize_1d(E, dE, d2E, z - d0, z + d0);
  if (m.ambiguous) fail(ErrorCode::ambiguous_projection, "two nearest meridian points on the catenoid");
  ProjectionResult p;
  p.z = point(m.s, theta);
  p.delta = (x - p.z).norm();
  p.nu = -inward_normal(m.s, theta);
  p.side = level(x) >= 0 ? Side::inside : Side::outside;
  p.params = {m.s, theta};
  return p;
}

std::vector<double> Catenoid::kappas_at(const ProjectionResult& p) const {
  const double C = std::cosh(p.params.at(0) / c_);
  const double b = 1.0 / (c_ * C * C);
  return {-b, b};
}

// ---------------------------------------------------------------- helicoid

Helicoid::Helicoid(double rho_patch) : rho_patch_(rho_patch) { require(rho_patch > 0, "helicoid patch must be positive"); }

double Helicoid::level(const Vec& x) const { return x(1) * std::cos(x(2)) - x(0) * std::sin(x(2)); }

Vec Helicoid::point(double rho, double s) { return Eigen::Vector3d(rho * std::cos(s), rho * std::sin(s), s); }

Vec Helicoid::inward_normal(double rho, double s) {
  const double W = std::sqrt(1.0 + rho * rho);
  return Eigen::Vector3d(-std::sin(s) / W, std::cos(s) / W, -rho / W);
}

ProjectionResult Helicoid::nearest(const Vec& x) const {
  require(x.size() == 3, "helicoid lives in R^3");
  const double x1 = x(0), x2 = x(1), x3 = x(2);
  auto rho = [&](double s) { return x1 * std::cos(s) + x2 * std::sin(s); };
  auto q = [&](double s) { return -x1 * std::sin(s) + x2 * std::cos(s); };
  auto E = [&](double s) { return q(s) * q(s) + (x3 - s) * (x3 - s); };
  auto dE = [&](double s) { return -2.0 * (rho(s) * q(s) + x3 - s); };
  auto d2E = [&](double s) { return 2.0 * (rho(s) * rho(s) + 1.0 - q(s) * q(s)); };
  const double d0 = std::abs(q(x3)) + 1e-12;
  const auto m = minimize_1d(E, dE, d2E, x3 - d0, x3 + d0);
  if (m.ambiguous) fail(ErrorCode::ambiguous_projection, "two nearest points on the helicoid");
  const double r = rho(m.s);
  ProjectionResult p;
  p.z = point(r, m.s);
  p.delta = (x - p.z).norm();
  p.nu = -inward_normal(r, m.s);
  p.side = level(x) >= 0 ? Side::inside : Side::outside;
  p.params = {r, m.s};
  return p;
}

std::vector<double> Helicoid::kappas_at(const ProjectionResult& p) const {
  const double r = p.params.at(0);
  const double a = 1.0 / (1.0 + r * r);
  return {a, -a};
}

// ---------------------------------------------------------------- graph

Graph::Graph(Function phi, int N, double box_half_width, double max_curvature, std::string label)
    : phi_(std::move(phi)), N_(N), box_(box_half_width), max_curvature_(max_curvature), label_(std::move(label)) {
  require(N >= 2, "graph needs N >= 2");
  require(box_half_width > 0, "graph box must be positive");
  require(phi_.value && phi_.gradient && phi_.hessian, "graph needs value, gradient and hessian");
}

double Graph::level(const Vec& x) const { return x(N_ - 1) - phi_.value(x.head(N_ - 1)); }

double Graph::reach(Side) const { return delta0(); }

ProjectionResult Graph::nearest(const Vec& x) const {
  require(x.size() == N_, "point dimension mismatch");
  const int m = N_ - 1;
  const Vec xp = x.head(m);
  const double xn = x(m);
  auto energy = [&](const Vec& y) {
    const double dz = phi_.value(y) - xn;
    return 0.5 * ((y - xp).squaredNorm() + dz * dz);
  };
  auto newton = [&](Vec y) {
    for (int it = 0; it < 100; ++it) {
      const double dz = phi_.value(y) - xn;
      const Vec g = phi_.gradient(y);
      const Vec grad = (y - xp) + dz * g;
      const Mat hess = Mat::Identity(m, m) + g * g.transpose() + dz * phi_.hessian(y);
      Vec step = hess.ldlt().solve(grad);
      if (!step.allFinite()) step = grad;
      double t = 1.0;
      const double e0 = energy(y);
      while (t > 1e-8 && energy(y - t * step) > e0 + 1e-16) t *= 0.5;
      y -= t * step;
      if ((t * step).norm() < 1e-13 * (1.0 + y.norm())) break;
    }
    return y;
  };
  // The nearest point lies within the vertical distance of x'.
  const double d0 = std::abs(xn - phi_.value(xp)) + 1e-12;
  const int per_axis = m == 1 ? 41 : (m == 2 ? 17 : 7);
  std::vector<Vec> seeds;
  std::vector<double> seed_energy;
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  while (true) {
    Vec y(m);
    for (int i = 0; i < m; ++i) y(i) = xp(i) - d0 + 2.0 * d0 * idx[static_cast<std::size_t>(i)] / (per_axis - 1);
    seeds.push_back(y);
    seed_energy.push_back(energy(y));
    int k = 0;
    while (k < m && ++idx[static_cast<std::size_t>(k)] == per_axis) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == m) break;
  }
  std::vector<std::size_t> order(seeds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return seed_energy[a] < seed_energy[b]; });
  struct Cand {
    Vec y;
    double e;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < std::min<std::size_t>(6, order.size()); ++i) {
    Vec y = newton(seeds[order[i]]);
    cands.push_back({y, energy(y)});
  }
  std::sort(cands.begin(), cands.end(), [](auto& a, auto& b) { return a.e < b.e; });
  const Cand& best = cands.front();
  for (std::size_t i = 1; i < cands.size(); ++i) {
    const bool distinct = (cands[i].y - best.y).norm() > 1e-6 * (1.0 + best.y.norm());
    if (distinct && std::abs(cands[i].e - best.e) <= 1e-12 * (1.0 + best.e))
      fail(ErrorCode::ambiguous_projection, "two minimizers of the graph distance");
  }
  if ((best.y.array().abs() > box_).any()) fail(ErrorCode::outside_tube, "footpoint leaves the graph box");
  ProjectionResult p;
  p.z = Vec(N_);
  p.z.head(m) = best.y;
  p.z(m) = phi_.value(best.y);
  p.delta = (x - p.z).norm();
  const Vec g = phi_.gradient(best.y);
  Vec n_in(N_);
  n_in.head(m) = -g;
  n_in(m) = 1.0;
  n_in /= n_in.norm();
  p.nu = -n_in;
  p.side = level(x) >= 0 ? Side::inside : Side::outside;
  p.params.assign(best.y.data(), best.y.data() + m);
  return p;
}

std::vector<double> Graph::kappas_at(const ProjectionResult& p) const {
  const int m = N_ - 1;
  const Vec y = Eigen::Map<const Vec>(p.params.data(), m);
  const Vec g = phi_.gradient(y);
  const double W = std::sqrt(1.0 + g.squaredNorm());
  const Mat I = Mat::Identity(m, m) + g * g.transpose();
  const Mat II = phi_.hessian(y) / W;
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(II, I);
  std::vector<double> k(es.eigenvalues().data(), es.eigenvalues().data() + m);
  std::sort(k.begin(), k.end(), std::greater<>());
  return k;
}

std::shared_ptr<Graph> Graph::quadratic(const std::vector<double>& a, double box_half_width) {
  const int m = static_cast<int>(a.size());
  const Vec av = Eigen::Map<const Vec>(a.data(), m);
  Function f;
  f.value = [av](const Vec& y) { return 0.5 * (av.array() * y.array().square()).sum(); };
  f.gradient = [av](const Vec& y) -> Vec { return av.array() * y.array(); };
  f.hessian = [av](const Vec&) -> Mat { return av.asDiagonal(); };
  const double kmax = av.cwiseAbs().maxCoeff();
  return std::make_shared<Graph>(f, m + 1, box_half_width, kmax, "graph-quadratic");
}

std::shared_ptr<Graph> Graph::sine_product(double A, double w, double box_half_width) {
  Function f;
  f.value = [A, w](const Vec& y) { return A * std::sin(w * y(0)) * std::sin(w * y(1)); };
  f.gradient = [A, w](const Vec& y) -> Vec {
    return Eigen::Vector2d(A * w * std::cos(w * y(0)) * std::sin(w * y(1)), A * w * std::sin(w * y(0)) * std::cos(w * y(1)));
  };
  f.hessian = [A, w](const Vec& y) -> Mat {
    const double s0 = std::sin(w * y(0)), s1 = std::sin(w * y(1)), c0 = std::cos(w * y(0)), c1 = std::cos(w * y(1));
    Eigen::Matrix2d h;
    h << -A * w * w * s0 * s1, A * w * w * c0 * c1, A * w * w * c0 * c1, -A * w * w * s0 * s1;
    return h;
  };
  return std::make_shared<Graph>(f, 3, box_half_width, 2.0 * std::abs(A) * w * w, "graph-sine");
}

// ---------------------------------------------------------------- free functions

ProjectionResult project(const Surface& surface, const Vec& x) {
  ProjectionResult p = surface.nearest(x);
  if (!(p.delta < surface.reach(p.side)))
    fail(ErrorCode::outside_tube, "distance " + std::to_string(p.delta) + " reaches the projection limit of the " +
                                      surface.name());
  return p;
}

std::vector<double> elementary_symmetric(const std::vector<double>& kappas) {
  // Vieta: coefficients of prod (1 + kappa_j X)
  std::vector<double> e(kappas.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t j = 0; j < kappas.size(); ++j)
    for (std::size_t i = j + 1; i >= 1; --i) e[i] += kappas[j] * e[i - 1];
  return {e.begin() + 1, e.end()};
}

CurvatureData curvature(const Surface& surface, const ProjectionResult& p) {
  CurvatureData c;
  c.kappas = surface.kappas_at(p);
  c.H = elementary_symmetric(c.kappas);
  return c;
}

double laplacian_of_distance(const std::vector<double>& kappas, double delta, Side side) {
  double s = 0.0;
  for (double k : kappas) {
    if (side == Side::inside) {
      const double d = 1.0 - k * delta;
      if (!(d > 0)) fail(ErrorCode::degenerate_tube, "1 - kappa delta <= 0");
      s -= k / d;
    } else {
      const double d = 1.0 + k * delta;
      if (!(d > 0)) fail(ErrorCode::degenerate_tube, "1 + kappa delta <= 0");
      s += k / d;
    }
  }
  return s;
}

double laplacian_of_distance(const Surface& surface, const Vec& x) {
  const ProjectionResult p = project(surface, x);
  if (p.delta <= 1e-13) fail(ErrorCode::on_surface, "laplacian of distance is one-sided on the surface");
  return laplacian_of_distance(surface.kappas_at(p), p.delta, p.side);
}

ProductExpansion curvature_product_expansion(const Surface& surface, const Vec& x) {
  const ProjectionResult p = project(surface, x);
  const CurvatureData c = curvature(surface, p);
  double lhs = 1.0;
  for (double k : c.kappas) lhs *= 1.0 - k * p.delta;
  double rhs = 1.0, dp = 1.0;
  for (std::size_t i = 0; i < c.H.size(); ++i) {
    dp *= p.delta;
    rhs += ((i % 2 == 0) ? -1.0 : 1.0) * c.H[i] * dp;
  }
  return {lhs, rhs};
}

double tangential_gradient_check(const Surface& surface, const Vec& x, int i, double h) {
  const ProjectionResult p = project(surface, x);
  require(i >= 1 && i < surface.dimension(), "H index out of range");
  const Vec grad_delta = p.side == Side::inside ? Vec(-p.nu) : Vec(p.nu);
  const int N = surface.dimension();
  auto H = [&](const Vec& y) {
    return curvature(surface, project(surface, y)).H[static_cast<std::size_t>(i - 1)];
  };
  double acc = 0.0;
  for (int k = 0; k < N; ++k) {
    const Vec e = unit(N, k) * h;
    acc += grad_delta(k) * (H(x + e) - H(x - e)) / (2.0 * h);
  }
  return std::abs(acc);
}

Vec march(const ProjectionResult& foot, double tau) {
  const Vec n_side = foot.side == Side::inside ? Vec(-foot.nu) : Vec(foot.nu);
  return foot.z + tau * n_side;
}

}  // namespace isotherm::geometry
