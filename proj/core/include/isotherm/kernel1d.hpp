#pragma once

#include <vector>

#include "isotherm/medium.hpp"

namespace isotherm::kernel1d {

// Convention: x1 <= 0 carries sigma_m, x1 > 0 carries sigma_s (Omega = {x1 > 0}).

enum class Region { minus_minus, minus_plus, plus_plus, plus_minus };

struct KernelPiece {
  Region region;
  double value;
};

/// Reflection and transmission amplitudes of the interface.
struct Amplitudes {
  double reflect_m;   ///< (sqrt sm - sqrt ss) / (sqrt ss + sqrt sm)
  double reflect_s;   ///< (sqrt ss - sqrt sm) / (sqrt ss + sqrt sm)
  double transmit_m;  ///< 2 sqrt sm / (sqrt ss + sqrt sm)
  double transmit_s;  ///< 2 sqrt ss / (sqrt ss + sqrt sm)
};
Amplitudes amplitudes(const TwoPhaseMedium& medium);

KernelPiece eval_kernel_piece(double x1, double y1, double t, const TwoPhaseMedium& medium);
double eval_kernel(double x1, double y1, double t, const TwoPhaseMedium& medium);

/// u(x1, t) = int_{-inf}^0 G(x1, y, t) dy, from erfc pieces.
double halfline_closed_form(double x1, double t, const TwoPhaseMedium& medium);
/// 1 - u computed without cancellation.
double halfline_complement(double x1, double t, const TwoPhaseMedium& medium);
/// Same integral by adaptive quadrature truncated at 40 standard deviations.
double halfline_quadrature(double x1, double t, const TwoPhaseMedium& medium, double abs_tol = 1e-12);

struct HalflineValue {
  double quadrature;
  double closed_form;
  double abs_diff;
};
/// Both evaluations; throws quadrature-failure if they disagree by more than agreement_tol.
HalflineValue halfline_solution(double x1, double t, const TwoPhaseMedium& medium,
                                double agreement_tol = 1e-10);

/// Kernel mass int_R G(x1, y, t) dy by quadrature.
double kernel_mass(double x1, double t, const TwoPhaseMedium& medium, double abs_tol = 1e-12);

struct DecayEstimate {
  double B;
  double b;
  int samples_used;
  int samples_dropped;
  double max_log_excess;  ///< max of log v - log(B e^{-b/t}) after inflation (<= 0)
};

struct DecaySample {
  double x1;
  double rho;  ///< declared distance from the interface (|x1| >= rho)
};

/// Fit v <= B e^{-b/t} where v = u on the sigma_s side and 1 - u on the sigma_m side.
DecayEstimate fit_decay_envelope(const std::vector<DecaySample>& points, const std::vector<double>& t_grid,
                                 const TwoPhaseMedium& medium);

}  // namespace isotherm::kernel1d
