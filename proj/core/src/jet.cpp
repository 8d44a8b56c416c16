#include "isotherm/jet.hpp"

#include <algorithm>
#include <cmath>

#include "isotherm/errors.hpp"

namespace isotherm {

Jet2::Jet2(int degree, double constant) : degree_(degree) {
  require(degree >= 0, "jet degree must be nonnegative");
  c_.assign(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2), 0.0);
  c_[0] = constant;
}

Jet2 Jet2::variable_u(int degree, double at) {
  Jet2 j(degree, at);
  if (degree >= 1) j(1, 0) = 1.0;
  return j;
}

Jet2 Jet2::variable_s(int degree, double at) {
  Jet2 j(degree, at);
  if (degree >= 1) j(0, 1) = 1.0;
  return j;
}

Jet2 Jet2::truncated(int degree) const {
  const int d = std::min(degree, degree_);
  Jet2 r(d);
  for (int t = 0; t <= d; ++t)
    for (int b = 0; b <= t; ++b) r(t - b, b) = (*this)(t - b, b);
  return r;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  if (o.degree_ < degree_) *this = truncated(o.degree_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  if (o.degree_ < degree_) *this = truncated(o.degree_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet2& Jet2::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet2& Jet2::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet2 operator*(const Jet2& x, const Jet2& y) {
  const int d = std::min(x.degree_, y.degree_);
  Jet2 r(d);
  for (int a1 = 0; a1 <= d; ++a1)
    for (int b1 = 0; a1 + b1 <= d; ++b1) {
      const double xv = x(a1, b1);
      if (xv == 0.0) continue;
      for (int a2 = 0; a1 + b1 + a2 <= d; ++a2)
        for (int b2 = 0; a1 + b1 + a2 + b2 <= d; ++b2) r(a1 + a2, b1 + b2) += xv * y(a2, b2);
    }
  return r;
}

Jet2 operator/(const Jet2& x, const Jet2& y) {
  const int d = std::min(x.degree_, y.degree_);
  const double y0 = y(0, 0);
  if (y0 == 0.0) fail(ErrorCode::invalid_argument, "jet division by a jet with zero constant term");
  Jet2 r(d);
  for (int t = 0; t <= d; ++t)
    for (int b = 0; b <= t; ++b) {
      const int a = t - b;
      double acc = x(a, b);
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) {
          if (i == 0 && j == 0) continue;
          acc -= y(i, j) * r(a - i, b - j);
        }
      r(a, b) = acc / y0;
    }
  return r;
}

Jet2 Jet2::du() const {
  if (degree_ == 0) return Jet2(0);
  Jet2 r(degree_ - 1);
  for (int t = 0; t <= degree_ - 1; ++t)
    for (int b = 0; b <= t; ++b) {
      const int a = t - b;
      r(a, b) = (a + 1) * (*this)(a + 1, b);
    }
  return r;
}

Jet2 Jet2::ds() const {
  if (degree_ == 0) return Jet2(0);
  Jet2 r(degree_ - 1);
  for (int t = 0; t <= degree_ - 1; ++t)
    for (int b = 0; b <= t; ++b) {
      const int a = t - b;
      r(a, b) = (b + 1) * (*this)(a, b + 1);
    }
  return r;
}

Jet2 Jet2::integrate_s() const {
  Jet2 r(degree_);
  for (int t = 1; t <= degree_; ++t)
    for (int b = 1; b <= t; ++b) {
      const int a = t - b;
      r(a, b) = (*this)(a, b - 1) / b;
    }
  return r;
}

Jet2 Jet2::compose(const std::vector<double>& taylor) const {
  Jet2 dev = *this;
  dev(0, 0) = 0.0;
  Jet2 result(degree_, taylor.empty() ? 0.0 : taylor[0]);
  Jet2 power(degree_, 1.0);
  const int kmax = std::min<int>(degree_, static_cast<int>(taylor.size()) - 1);
  for (int k = 1; k <= kmax; ++k) {
    power = power * dev;
    Jet2 term = power;
    term *= taylor[static_cast<std::size_t>(k)];
    result += term;
  }
  return result;
}

std::vector<double> Jet2::u_part() const {
  std::vector<double> r(static_cast<std::size_t>(degree_ + 1));
  for (int a = 0; a <= degree_; ++a) r[static_cast<std::size_t>(a)] = (*this)(a, 0);
  return r;
}

Jet2 pow(const Jet2& f, double alpha) {
  const double x = f.value();
  if (x <= 0.0) fail(ErrorCode::invalid_argument, "jet pow requires a positive base");
  std::vector<double> t(static_cast<std::size_t>(f.degree() + 1));
  double coeff = 1.0;
  for (int k = 0; k <= f.degree(); ++k) {
    t[static_cast<std::size_t>(k)] = coeff * std::pow(x, alpha - k);
    coeff *= (alpha - k) / (k + 1);
  }
  return f.compose(t);
}

Jet2 sqrt(const Jet2& f) { return pow(f, 0.5); }

Jet2 exp(const Jet2& f) {
  std::vector<double> t(static_cast<std::size_t>(f.degree() + 1));
  const double e = std::exp(f.value());
  double fact = 1.0;
  for (int k = 0; k <= f.degree(); ++k) {
    if (k > 0) fact *= k;
    t[static_cast<std::size_t>(k)] = e / fact;
  }
  return f.compose(t);
}

Jet2 log(const Jet2& f) {
  const double x = f.value();
  if (x <= 0.0) fail(ErrorCode::invalid_argument, "jet log requires a positive argument");
  std::vector<double> t(static_cast<std::size_t>(f.degree() + 1));
  t[0] = std::log(x);
  for (int k = 1; k <= f.degree(); ++k)
    t[static_cast<std::size_t>(k)] = ((k % 2 == 1) ? 1.0 : -1.0) / (k * std::pow(x, k));
  return f.compose(t);
}

namespace {
Jet2 hyperbolic(const Jet2& f, bool is_cosh) {
  std::vector<double> t(static_cast<std::size_t>(f.degree() + 1));
  const double ch = std::cosh(f.value()), sh = std::sinh(f.value());
  double fact = 1.0;
  for (int k = 0; k <= f.degree(); ++k) {
    if (k > 0) fact *= k;
    const bool even = (k % 2 == 0);
    t[static_cast<std::size_t>(k)] = ((even == is_cosh) ? ch : sh) / fact;
  }
  return f.compose(t);
}
}  // namespace

Jet2 cosh(const Jet2& f) { return hyperbolic(f, true); }
Jet2 sinh(const Jet2& f) { return hyperbolic(f, false); }

}  // namespace isotherm
