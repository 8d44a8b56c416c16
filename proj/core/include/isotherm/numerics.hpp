#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace isotherm::numerics {

/// Adaptive Gauss-Kronrod (31-point) on [a, b]; throws quadrature-failure when the
/// error estimate stays above abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12,
                 double* error_estimate = nullptr);

/// Same, split at the given interior breakpoints.
double integrate_pieces(const std::function<double(double)>& f, std::vector<double> breaks,
                        double abs_tol = 1e-12);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
/// n-point Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Chebyshev-Lobatto interpolant on [a, b] with spectral cumulative integration.
class ChebSeries {
 public:
  ChebSeries() = default;
  /// Coefficients from samples at lobatto_nodes(m, a, b).
  ChebSeries(double a, double b, const std::vector<double>& samples);
  static std::vector<double> lobatto_nodes(int m, double a, double b);

  double operator()(double x) const;
  /// F(x) = int_a^x f.
  ChebSeries cumulative() const;

 private:
  double a_ = 0.0, b_ = 1.0;
  std::vector<double> coef_;
};

std::vector<double> logspace(double lo, double hi, int count);
std::vector<double> linspace(double lo, double hi, int count);

struct LinearFit {
  std::vector<double> coefficients;
  double residual_norm = 0.0;  ///< weighted 2-norm of residuals
};
/// Weighted least squares: minimize sum w_i (y_i - sum_k c_k basis_k(x_i))^2.
LinearFit weighted_least_squares(const std::vector<std::vector<double>>& design,
                                 const std::vector<double>& y, const std::vector<double>& weights);

/// Exponentially scaled modified Bessel functions: e^{-x} I_nu(x) and e^{x} K_nu(x), nu >= 0, x > 0.
double bessel_i_scaled(double nu, double x);
double bessel_k_scaled(double nu, double x);

/// Counter-based generator: the state of stream (seed, stream) at position n is a pure
/// function of the triple, so batches can be generated in any order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next_u64();
  /// Uniform in (0, 1).
  double uniform();
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Run body(i) for i in [0, n) on up to jobs threads. Results must be written by index.
void parallel_for(int n, int jobs, const std::function<void(int)>& body);

/// Number of worker threads to use when the caller passes jobs <= 0.
int default_jobs();

}  // namespace isotherm::numerics
