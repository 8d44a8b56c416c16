#include "isotherm/medium.hpp"

#include <cmath>
#include <numbers>

#include "isotherm/errors.hpp"

namespace isotherm {

TwoPhaseMedium::TwoPhaseMedium(double s, double m) : sigma_s(s), sigma_m(m) {
  require(s > 0 && m > 0 && std::isfinite(s) && std::isfinite(m), "conductivities must be positive");
}

double interface_constant(const TwoPhaseMedium& medium) {
  const double a = std::sqrt(medium.sigma_s), b = std::sqrt(medium.sigma_m);
  return b / (a + b);
}

double gaussian_kernel(double z, double t, double sigma) {
  require(t > 0, "gaussian_kernel: t must be positive");
  require(sigma > 0, "gaussian_kernel: sigma must be positive");
  const double four_t_sigma = 4.0 * t * sigma;
  return std::exp(-z * z / four_t_sigma) / std::sqrt(std::numbers::pi * four_t_sigma);
}

}  // namespace isotherm
