#include <cmath>

#include "isotherm/errors.hpp"
#include "isotherm/geometry.hpp"

namespace isotherm::geometry {

Jet2 NormalChart::area_factor(double, int degree) const { return Jet2(degree, 1.0); }
Jet2 NormalChart::conductance(double, double, int degree) const { return Jet2(degree, 0.0); }

namespace {

double side_sign(Side side) { return side == Side::inside ? 1.0 : -1.0; }

// Fields on plane, sphere and cylinder tubes depend on depth only.
class ConstantChart final : public NormalChart {
 public:
  ConstantChart(Side side, std::vector<double> kappas) : NormalChart(side), kappas_(std::move(kappas)) {
    for (double& k : kappas_) k *= side_sign(side);
  }
  int curvature_count() const override { return static_cast<int>(kappas_.size()); }
  std::vector<Jet2> kappas(double, int degree) const override {
    std::vector<Jet2> r;
    for (double k : kappas_) r.emplace_back(degree, k);
    return r;
  }
  double coordinate(const ProjectionResult&) const override { return 0.0; }

 private:
  std::vector<double> kappas_;
};

// u = rho. Metric in Fermi coordinates (rho, s, tau) with sqrt(g) = W (1 - a^2 tau^2).
class HelicoidChart final : public NormalChart {
 public:
  explicit HelicoidChart(Side side) : NormalChart(side) {}
  int curvature_count() const override { return 2; }
  std::vector<Jet2> kappas(double u0, int degree) const override {
    const Jet2 rho = Jet2::variable_u(degree, u0);
    const Jet2 a = Jet2(degree, 1.0) / (1.0 + rho * rho);
    const double sg = side_sign(side_);
    return {a * sg, a * (-sg)};
  }
  bool has_tangential() const override { return true; }
  Jet2 area_factor(double u0, int degree) const override {
    const Jet2 rho = Jet2::variable_u(degree, u0);
    return sqrt(1.0 + rho * rho);
  }
  Jet2 conductance(double u0, double tau0, int degree) const override {
    const Jet2 rho = Jet2::variable_u(degree, u0);
    const Jet2 tau = Jet2::variable_s(degree, tau0);
    const Jet2 W = sqrt(1.0 + rho * rho);
    const Jet2 a = Jet2(degree, 1.0) / (1.0 + rho * rho);
    const Jet2 at2 = a * a * tau * tau;
    return W * (1.0 + at2) / (1.0 - at2);
  }
  double coordinate(const ProjectionResult& p) const override { return p.params.at(0); }
};

// u = v along the meridian; the coordinate lines are principal.
class CatenoidChart final : public NormalChart {
 public:
  CatenoidChart(Side side, double c) : NormalChart(side), c_(c) {}
  int curvature_count() const override { return 2; }
  std::vector<Jet2> kappas(double u0, int degree) const override {
    const Jet2 b = curvature_b(u0, degree);
    const double sg = side_sign(side_);
    return {b * (-sg), b * sg};
  }
  bool has_tangential() const override { return true; }
  Jet2 area_factor(double u0, int degree) const override {
    const Jet2 C = cosh(Jet2::variable_u(degree, u0) * (1.0 / c_));
    return C * C * c_;
  }
  Jet2 conductance(double u0, double tau0, int degree) const override {
    const Jet2 b = curvature_b(u0, degree);
    const Jet2 tau = Jet2::variable_s(degree, tau0);
    const double sg = side_sign(side_);
    return c_ * (1.0 - sg * b * tau) / (1.0 + sg * b * tau);
  }
  double coordinate(const ProjectionResult& p) const override { return p.params.at(0); }

 private:
  Jet2 curvature_b(double u0, int degree) const {
    const Jet2 C = cosh(Jet2::variable_u(degree, u0) * (1.0 / c_));
    return Jet2(degree, 1.0 / c_) / (C * C);
  }
  double c_;
};

}  // namespace

std::unique_ptr<NormalChart> Hyperplane::chart(Side side) const {
  return std::make_unique<ConstantChart>(side, std::vector<double>(static_cast<std::size_t>(N_ - 1), 0.0));
}

std::unique_ptr<NormalChart> Sphere::chart(Side side) const {
  return std::make_unique<ConstantChart>(side, std::vector<double>(static_cast<std::size_t>(N_ - 1), 1.0 / R_));
}

std::unique_ptr<NormalChart> Cylinder::chart(Side side) const {
  std::vector<double> k(static_cast<std::size_t>(N_ - 1), 0.0);
  k[0] = 1.0 / R_;
  return std::make_unique<ConstantChart>(side, k);
}

std::unique_ptr<NormalChart> Catenoid::chart(Side side) const { return std::make_unique<CatenoidChart>(side, c_); }

std::unique_ptr<NormalChart> Helicoid::chart(Side side) const { return std::make_unique<HelicoidChart>(side); }

}  // namespace isotherm::geometry
