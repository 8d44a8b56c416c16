#pragma once

#include <vector>

namespace isotherm {

/**
 * @brief Truncated bivariate Taylor polynomial in (du, ds) of total degree <= degree().
 *
 * Coefficient (a, b) multiplies du^a ds^b, i.e. it is d^a_u d^b_s f / (a! b!).
 */
class Jet2 {
 public:
  Jet2() = default;
  explicit Jet2(int degree, double constant = 0.0);

  static Jet2 variable_u(int degree, double at);
  static Jet2 variable_s(int degree, double at);

  int degree() const { return degree_; }
  double value() const { return c_.empty() ? 0.0 : c_[0]; }

  double& operator()(int a, int b) { return c_[index(a, b)]; }
  double operator()(int a, int b) const { return c_[index(a, b)]; }

  Jet2 truncated(int degree) const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(double s);
  Jet2& operator+=(double s);

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator+(Jet2 a, double s) { return a += s; }
  friend Jet2 operator+(double s, Jet2 a) { return a += s; }
  friend Jet2 operator-(Jet2 a, double s) { return a += -s; }
  friend Jet2 operator-(double s, Jet2 a) {
    a *= -1.0;
    return a += s;
  }
  Jet2 operator-() const { return (*this) * -1.0; }

  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);

  Jet2 du() const;
  Jet2 ds() const;
  /// Antiderivative in s vanishing at ds = 0; the degree is kept.
  Jet2 integrate_s() const;

  /// Apply phi to the jet given phi^{(k)}(value())/k! for k = 0..degree().
  Jet2 compose(const std::vector<double>& taylor) const;

  /// Part depending on du only (b = 0).
  std::vector<double> u_part() const;

 private:
  static int index(int a, int b) {
    const int d = a + b;
    return d * (d + 1) / 2 + b;
  }

  int degree_ = 0;
  std::vector<double> c_;
};

Jet2 pow(const Jet2& f, double alpha);
Jet2 sqrt(const Jet2& f);
Jet2 exp(const Jet2& f);
Jet2 log(const Jet2& f);
Jet2 cosh(const Jet2& f);
Jet2 sinh(const Jet2& f);

}  // namespace isotherm
