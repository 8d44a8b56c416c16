#include "isotherm/kernel1d.hpp"

#include <algorithm>
#include <cmath>

#include "isotherm/errors.hpp"
#include "isotherm/numerics.hpp"

namespace isotherm::kernel1d {

Amplitudes amplitudes(const TwoPhaseMedium& medium) {
  const double a = std::sqrt(medium.sigma_s), b = std::sqrt(medium.sigma_m), s = a + b;
  return {(b - a) / s, (a - b) / s, 2.0 * b / s, 2.0 * a / s};
}

KernelPiece eval_kernel_piece(double x1, double y1, double t, const TwoPhaseMedium& medium) {
  require(t > 0, "eval_kernel: t must be positive");
  const Amplitudes amp = amplitudes(medium);
  const double sm = medium.sigma_m, ss = medium.sigma_s;
  if (x1 <= 0) {
    if (y1 <= 0)
      return {Region::minus_minus, gaussian_kernel(x1 - y1, t, sm) + amp.reflect_m * gaussian_kernel(x1 + y1, t, sm)};
    return {Region::minus_plus, amp.transmit_m * gaussian_kernel(x1 - std::sqrt(sm / ss) * y1, t, sm)};
  }
  if (y1 > 0)
    return {Region::plus_plus, gaussian_kernel(x1 - y1, t, ss) + amp.reflect_s * gaussian_kernel(x1 + y1, t, ss)};
  return {Region::plus_minus, amp.transmit_s * gaussian_kernel(x1 - std::sqrt(ss / sm) * y1, t, ss)};
}

double eval_kernel(double x1, double y1, double t, const TwoPhaseMedium& medium) {
  return eval_kernel_piece(x1, y1, t, medium).value;
}

double halfline_closed_form(double x1, double t, const TwoPhaseMedium& medium) {
  require(t > 0, "halfline_solution: t must be positive");
  const double k = interface_constant(medium);
  if (x1 <= 0) {
    const double s = std::sqrt(4.0 * t * medium.sigma_m);
    return 0.5 * std::erfc(x1 / s) + amplitudes(medium).reflect_m * 0.5 * std::erfc(-x1 / s);
  }
  return k * std::erfc(x1 / std::sqrt(4.0 * t * medium.sigma_s));
}

double halfline_complement(double x1, double t, const TwoPhaseMedium& medium) {
  require(t > 0, "halfline_solution: t must be positive");
  const double k = interface_constant(medium);
  if (x1 < 0) return (1.0 - k) * std::erfc(-x1 / std::sqrt(4.0 * t * medium.sigma_m));
  return 1.0 - halfline_closed_form(x1, t, medium);
}

namespace {

// Gaussian centres in y and the widest standard deviation of the pieces seen by x1.
void kernel_layout(double x1, double t, const TwoPhaseMedium& medium, std::vector<double>& centres,
                   double& sd) {
  const double sm = medium.sigma_m, ss = medium.sigma_s;
  sd = std::max(std::sqrt(2.0 * t * sm), std::sqrt(2.0 * t * ss));
  if (x1 <= 0)
    centres = {x1, -x1, x1 * std::sqrt(ss / sm)};
  else
    centres = {x1, -x1, x1 * std::sqrt(sm / ss)};
}

}  // namespace

double halfline_quadrature(double x1, double t, const TwoPhaseMedium& medium, double abs_tol) {
  require(t > 0, "halfline_solution: t must be positive");
  std::vector<double> centres;
  double sd;
  kernel_layout(x1, t, medium, centres, sd);
  const double lo = std::min(0.0, *std::min_element(centres.begin(), centres.end())) - 40.0 * sd;
  std::vector<double> breaks{lo, 0.0};
  for (double c : centres)
    if (c > lo && c < 0) breaks.push_back(c);
  return numerics::integrate_pieces([&](double y) { return eval_kernel(x1, y, t, medium); }, breaks, abs_tol);
}

double kernel_mass(double x1, double t, const TwoPhaseMedium& medium, double abs_tol) {
  require(t > 0, "kernel_mass: t must be positive");
  std::vector<double> centres;
  double sd;
  kernel_layout(x1, t, medium, centres, sd);
  const double lo = *std::min_element(centres.begin(), centres.end()) - 40.0 * sd;
  const double hi = *std::max_element(centres.begin(), centres.end()) + 40.0 * sd;
  std::vector<double> breaks{lo, hi, 0.0};
  for (double c : centres) breaks.push_back(c);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return numerics::integrate_pieces([&](double y) { return eval_kernel(x1, y, t, medium); }, breaks, abs_tol);
}

HalflineValue halfline_solution(double x1, double t, const TwoPhaseMedium& medium, double agreement_tol) {
  HalflineValue v;
  v.closed_form = halfline_closed_form(x1, t, medium);
  v.quadrature = halfline_quadrature(x1, t, medium);
  v.abs_diff = std::abs(v.quadrature - v.closed_form);
  if (!(v.abs_diff <= agreement_tol))
    fail(ErrorCode::quadrature_failure, "quadrature and closed form disagree by " + std::to_string(v.abs_diff));
  return v;
}

DecayEstimate fit_decay_envelope(const std::vector<DecaySample>& points, const std::vector<double>& t_grid,
                                 const TwoPhaseMedium& medium) {
  require(!points.empty() && !t_grid.empty(), "fit_decay_envelope: empty sample set");
  std::vector<std::vector<double>> design;
  std::vector<double> y, w, ts;
  int dropped = 0;
  for (const auto& p : points) {
    require(p.rho > 0 && std::abs(p.x1) >= p.rho, "fit_decay_envelope: sample closer than rho to the interface");
    for (double t : t_grid) {
      require(t > 0, "fit_decay_envelope: times must be positive");
      const double v = p.x1 > 0 ? halfline_closed_form(p.x1, t, medium) : halfline_complement(p.x1, t, medium);
      if (!(v > 0) || !std::isfinite(std::log(v))) {
        ++dropped;
        continue;
      }
      design.push_back({1.0, -1.0 / t});
      y.push_back(std::log(v));
      w.push_back(1.0);
      ts.push_back(t);
    }
  }
  if (y.size() < 2) fail(ErrorCode::degenerate_fit, "all sampled values underflow");
  const auto fit = numerics::weighted_least_squares(design, y, w);
  double log_b = fit.coefficients[0];
  const double b = fit.coefficients[1];
  if (!(b > 0)) fail(ErrorCode::degenerate_fit, "fitted decay rate is not positive");
  double excess = -INFINITY;
  for (std::size_t i = 0; i < y.size(); ++i) excess = std::max(excess, y[i] - (log_b - b / ts[i]));
  log_b += std::max(0.0, excess);
  double after = -INFINITY;
  for (std::size_t i = 0; i < y.size(); ++i) after = std::max(after, y[i] - (log_b - b / ts[i]));
  return {std::exp(log_b), b, static_cast<int>(y.size()), dropped, after};
}

}  // namespace isotherm::kernel1d
