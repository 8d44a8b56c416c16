#pragma once

namespace isotherm {

/// Conductivities of the bounded phase (sigma_s, inside Omega) and of the matrix (sigma_m).
struct TwoPhaseMedium {
  double sigma_s = 1.0;
  double sigma_m = 1.0;

  TwoPhaseMedium() = default;
  TwoPhaseMedium(double s, double m);

  double mu() const { return sigma_s < sigma_m ? sigma_s : sigma_m; }
  double M() const { return sigma_s < sigma_m ? sigma_m : sigma_s; }
  bool phases_distinct() const { return sigma_s != sigma_m; }
  TwoPhaseMedium swapped() const { return {sigma_m, sigma_s}; }
};

/// k = sqrt(sigma_m) / (sqrt(sigma_s) + sqrt(sigma_m)).
double interface_constant(const TwoPhaseMedium& medium);

/// One-phase heat kernel (4 pi t sigma)^{-1/2} exp(-z^2 / (4 t sigma)).
double gaussian_kernel(double z, double t, double sigma);

}  // namespace isotherm
