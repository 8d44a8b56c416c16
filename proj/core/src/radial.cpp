#include <cmath>

#include "isotherm/elliptic.hpp"
#include "isotherm/errors.hpp"
#include "isotherm/numerics.hpp"

namespace isotherm::elliptic {

RadialGeometry RadialGeometry::from_surface(const geometry::Surface& surface) {
  const auto m = surface.radial_model();
  if (!m) fail(ErrorCode::unsupported_geometry, surface.name() + " has no radial closed form");
  RadialGeometry g;
  g.plane = m->d == 1;
  g.d = m->d;
  g.N = surface.dimension();
  g.R = m->R;
  return g;
}

double RadialGeometry::sum_kappa() const { return plane ? 0.0 : (d - 1) / R; }

namespace {

double nu_of(int d) { return 0.5 * d - 1.0; }

}  // namespace

RadialSolution RadialSolution::dirichlet(const RadialGeometry& g, double sigma, double lambda, double boundary_value,
                                         Side side) {
  require(sigma > 0.0 && lambda > 0.0, "Dirichlet solution needs sigma > 0 and lambda > 0");
  require(g.plane || (g.R > 0.0 && g.d >= 2), "radial geometry needs R > 0 and d >= 2");
  RadialSolution s;
  s.g_ = g;
  s.mode_ = Mode::dirichlet;
  s.side_ = side;
  s.lambda_ = lambda;
  s.sigma_in_ = s.sigma_out_ = sigma;
  s.mu_in_ = s.mu_out_ = std::sqrt(lambda / sigma);
  s.alpha_ = boundary_value;
  return s;
}

RadialSolution RadialSolution::transmission(const RadialGeometry& g, const TwoPhaseMedium& medium, double lambda) {
  require(lambda > 0.0, "transmission solution needs lambda > 0");
  require(g.plane || (g.R > 0.0 && g.d >= 2), "radial geometry needs R > 0 and d >= 2");
  RadialSolution s;
  s.g_ = g;
  s.mode_ = Mode::transmission;
  s.lambda_ = lambda;
  s.sigma_in_ = medium.sigma_s;
  s.sigma_out_ = medium.sigma_m;
  s.mu_in_ = std::sqrt(lambda / medium.sigma_s);
  s.mu_out_ = std::sqrt(lambda / medium.sigma_m);
  double rho_i = 1.0, rho_k = 1.0;
  if (!g.plane) {
    const double nu = nu_of(g.d);
    const double zs = s.mu_in_ * g.R, zm = s.mu_out_ * g.R;
    rho_i = numerics::bessel_i_scaled(nu + 1.0, zs) / numerics::bessel_i_scaled(nu, zs);
    rho_k = numerics::bessel_k_scaled(nu + 1.0, zm) / numerics::bessel_k_scaled(nu, zm);
  }
  const double a = std::sqrt(medium.sigma_m) * rho_k;
  s.alpha_ = a / (std::sqrt(medium.sigma_s) * rho_i + a);
  return s;
}

RadialSolution::Profile RadialSolution::inner(double r) const {
  const double mu = mu_in_;
  if (g_.plane) {
    const double e = std::exp(-mu * r);
    return {e, -mu * e, mu * mu * e};
  }
  const double nu = nu_of(g_.d), R = g_.R, Z = mu * R;
  const double base = numerics::bessel_i_scaled(nu, Z);
  if (r < 1e-10 * R) {
    // limits at the centre: g'' (0) = mu^2 g(0) / d
    const double g0 = std::exp(nu * std::log(0.5 * Z) - std::lgamma(nu + 1.0) - Z) / base;
    return {g0, 0.0, mu * mu * g0 / g_.d};
  }
  const double z = mu * r;
  // ratios by division so that the interface value is reproduced exactly
  const double s = std::pow(R / r, nu) * std::exp(z - Z);
  const double i0 = numerics::bessel_i_scaled(nu, z) / base, i1 = numerics::bessel_i_scaled(nu + 1.0, z) / base;
  return {s * i0, mu * s * i1, s * (mu * mu * i0 - mu * (g_.d - 1) / r * i1)};
}

RadialSolution::Profile RadialSolution::outer(double r) const {
  const double mu = mu_out_;
  if (g_.plane) {
    const double e = std::exp(mu * r);
    return {e, mu * e, mu * mu * e};
  }
  const double nu = nu_of(g_.d), R = g_.R, Z = mu * R, z = mu * r;
  const double base = numerics::bessel_k_scaled(nu, Z);
  const double s = std::pow(R / r, nu) * std::exp(Z - z);
  const double k0 = numerics::bessel_k_scaled(nu, z) / base, k1 = numerics::bessel_k_scaled(nu + 1.0, z) / base;
  return {s * k0, -mu * s * k1, s * (mu * mu * k0 + mu * (g_.d - 1) / r * k1)};
}

namespace {

void check_argument(bool plane, double r) { require(plane || r >= 0.0, "radius must be non-negative"); }

}  // namespace

double RadialSolution::value(double r) const {
  check_argument(g_.plane, r);
  if (mode_ == Mode::dirichlet) {
    if (side_ == Side::inside) {
      require(in_omega(r) || r == (g_.plane ? 0.0 : g_.R), "point lies outside the solved side");
      return alpha_ * inner(r).g;
    }
    require(!in_omega(r), "point lies outside the solved side");
    return alpha_ * outer(r).g;
  }
  return in_omega(r) ? alpha_ * inner(r).g : 1.0 - (1.0 - alpha_) * outer(r).g;
}

double RadialSolution::derivative(double r) const {
  check_argument(g_.plane, r);
  if (mode_ == Mode::dirichlet) return alpha_ * (side_ == Side::inside ? inner(r).dg : outer(r).dg);
  return in_omega(r) ? alpha_ * inner(r).dg : -(1.0 - alpha_) * outer(r).dg;
}

double RadialSolution::second_derivative(double r) const {
  check_argument(g_.plane, r);
  if (mode_ == Mode::dirichlet) return alpha_ * (side_ == Side::inside ? inner(r).d2g : outer(r).d2g);
  return in_omega(r) ? alpha_ * inner(r).d2g : -(1.0 - alpha_) * outer(r).d2g;
}

double RadialSolution::ode_residual(double r) const {
  const bool omega = mode_ == Mode::dirichlet ? side_ == Side::inside : in_omega(r);
  const double sigma = omega ? sigma_in_ : sigma_out_;
  const double chi = mode_ == Mode::transmission && !omega ? 1.0 : 0.0;
  double lap = second_derivative(r);
  if (!g_.plane && r > 0.0) lap += (g_.d - 1) / r * derivative(r);
  if (!g_.plane && r == 0.0) lap *= g_.d;
  return sigma * lap - lambda_ * value(r) + lambda_ * chi;
}

double RadialSolution::interface_value() const { return alpha_; }

double RadialSolution::normal_derivative(Side side) const {
  // plane: nu = -e1, so dw/dnu = -w'; radial: nu = e_r
  const double sgn = g_.plane ? -1.0 : 1.0;
  const double at = g_.plane ? 0.0 : g_.R;
  if (mode_ == Mode::dirichlet) {
    require(side == side_, "Dirichlet solution is defined on one side only");
    return sgn * alpha_ * (side == Side::inside ? inner(at).dg : outer(at).dg);
  }
  if (side == Side::inside) return sgn * alpha_ * inner(at).dg;
  return -sgn * (1.0 - alpha_) * outer(at).dg;
}

}  // namespace isotherm::elliptic
