#include "isotherm/numerics.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_bessel.h>

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <thread>

#include "isotherm/errors.hpp"

namespace isotherm::numerics {

namespace {
struct GslHandlerOff {
  GslHandlerOff() { gsl_set_error_handler_off(); }
};
const GslHandlerOff gsl_handler_off;
}  // namespace

namespace {

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double* error_estimate) {
  if (a == b) {
    if (error_estimate) *error_estimate = 0.0;
    return 0.0;
  }
  // Boost's tolerance is relative and recursion below the rounding floor only accumulates noise,
  // so try a few relative tolerances and judge the absolute error estimate ourselves.
  double err = INFINITY, value = 0.0;
  for (double rel : {1e-13, 1e-12, 1e-14, 1e-11}) {
    double e = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel, &e, &l1);
    if (e < err) {
      err = e;
      value = v;
    }
    if (err <= abs_tol) break;
  }
  if (error_estimate) *error_estimate = err;
  if (!(err <= abs_tol) || !std::isfinite(value))
    fail(ErrorCode::quadrature_failure,
         "adaptive refinement did not reach tolerance (estimate " + scientific(err) + " on [" +
             scientific(a) + ", " + scientific(b) + "])");
  return value;
}

double integrate_pieces(const std::function<double(double)>& f, std::vector<double> breaks,
                        double abs_tol) {
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  const double per = abs_tol / std::max<std::size_t>(1, breaks.size());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) total += integrate(f, breaks[i], breaks[i + 1], per);
  return total;
}

GaussRule gauss_legendre(int n, double a, double b) {
  require(n >= 1, "Gauss-Legendre rule needs at least one node");
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<size_t>(n));
  if (!t) fail(ErrorCode::quadrature_failure, "cannot build Gauss-Legendre table");
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &r.nodes[static_cast<std::size_t>(i)],
                                  &r.weights[static_cast<std::size_t>(i)], t);
  gsl_integration_glfixed_table_free(t);
  return r;
}

std::vector<double> ChebSeries::lobatto_nodes(int m, double a, double b) {
  std::vector<double> x(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    // ascending order: j = 0 maps to a
    const double c = -std::cos(std::numbers::pi * j / (m - 1));
    x[static_cast<std::size_t>(j)] = 0.5 * (a + b) + 0.5 * (b - a) * c;
  }
  return x;
}

ChebSeries::ChebSeries(double a, double b, const std::vector<double>& f) : a_(a), b_(b) {
  const int m = static_cast<int>(f.size());
  require(m >= 2, "Chebyshev series needs at least two samples");
  const int n = m - 1;
  coef_.assign(static_cast<std::size_t>(m), 0.0);
  // f_j sampled at x_j = -cos(pi j / n) = cos(pi (n - j) / n)
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      s += w * f[static_cast<std::size_t>(n - j)] * std::cos(std::numbers::pi * k * j / n);
    }
    coef_[static_cast<std::size_t>(k)] = 2.0 * s / n;
  }
  coef_[0] *= 0.5;
  coef_[static_cast<std::size_t>(n)] *= 0.5;
}

double ChebSeries::operator()(double x) const {
  const double t = (2.0 * x - a_ - b_) / (b_ - a_);
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(coef_.size()) - 1; k >= 1; --k) {
    const double b0 = 2.0 * t * b1 - b2 + coef_[static_cast<std::size_t>(k)];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + coef_[0];
}

ChebSeries ChebSeries::cumulative() const {
  const int n = static_cast<int>(coef_.size());
  std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
  auto at = [&](int k) { return (k >= 0 && k < n) ? coef_[static_cast<std::size_t>(k)] : 0.0; };
  const double half = 0.5 * (b_ - a_);
  for (int k = 1; k <= n; ++k) {
    const double prev = (k == 1) ? 2.0 * at(0) : at(k - 1);
    c[static_cast<std::size_t>(k)] = half * (prev - at(k + 1)) / (2.0 * k);
  }
  ChebSeries r;
  r.a_ = a_;
  r.b_ = b_;
  r.coef_ = std::move(c);
  r.coef_[0] = -r(a_);
  return r;
}

std::vector<double> logspace(double lo, double hi, int count) {
  require(lo > 0 && hi > 0 && count >= 1, "logspace needs positive bounds");
  std::vector<double> r(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    r[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
  }
  if (count > 1) {
    r.front() = lo;
    r.back() = hi;
  }
  return r;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> r(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    r[static_cast<std::size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return r;
}

LinearFit weighted_least_squares(const std::vector<std::vector<double>>& design,
                                 const std::vector<double>& y, const std::vector<double>& weights) {
  const auto rows = static_cast<Eigen::Index>(y.size());
  require(rows > 0 && design.size() == y.size() && weights.size() == y.size(),
          "least squares dimensions mismatch");
  const auto cols = static_cast<Eigen::Index>(design.front().size());
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double sw = std::sqrt(weights[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = sw * design[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    b(i) = sw * y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  LinearFit fit;
  fit.coefficients.assign(c.data(), c.data() + c.size());
  fit.residual_norm = (a * c - b).norm();
  return fit;
}

double bessel_i_scaled(double nu, double x) {
  require(nu >= 0 && x > 0, "scaled Bessel I needs nu >= 0, x > 0");
  gsl_sf_result r;
  int status;
  if (nu == 0.0)
    status = gsl_sf_bessel_I0_scaled_e(x, &r);
  else if (nu == 1.0)
    status = gsl_sf_bessel_I1_scaled_e(x, &r);
  else
    status = gsl_sf_bessel_Inu_scaled_e(nu, x, &r);
  if (status != GSL_SUCCESS && status != GSL_EUNDRFLW)
    fail(ErrorCode::invalid_argument, std::string("Bessel I evaluation failed: ") + gsl_strerror(status));
  return r.val;
}

double bessel_k_scaled(double nu, double x) {
  require(nu >= 0 && x > 0, "scaled Bessel K needs nu >= 0, x > 0");
  gsl_sf_result r;
  int status;
  if (nu == 0.0)
    status = gsl_sf_bessel_K0_scaled_e(x, &r);
  else if (nu == 1.0)
    status = gsl_sf_bessel_K1_scaled_e(x, &r);
  else
    status = gsl_sf_bessel_Knu_scaled_e(nu, x, &r);
  if (status != GSL_SUCCESS)
    fail(ErrorCode::invalid_argument, std::string("Bessel K evaluation failed: ") + gsl_strerror(status));
  return r.val;
}

namespace {
std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix(seed ^ splitmix(stream + 0x632be59bd9b4e019ULL))) {}

std::uint64_t CounterRng::next_u64() { return splitmix(key_ + 0x9e3779b97f4a7c15ULL * (++counter_)); }

double CounterRng::uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform(), u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

int default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
  if (jobs <= 0) jobs = default_jobs();
  jobs = std::min(jobs, n);
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace isotherm::numerics
