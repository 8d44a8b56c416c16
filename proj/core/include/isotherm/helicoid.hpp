#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace isotherm::helicoid {

using Point = std::array<double, 3>;

/// Rotation by alpha in the (x1, x2) plane composed with translation alpha along x3.
struct ScrewMotion {
  double alpha = 0.0;
  Point operator()(const Point& x) const;
  ScrewMotion compose(const ScrewMotion& other) const { return {alpha + other.alpha}; }
  ScrewMotion inverse() const { return {-alpha}; }
};

/// g(x) = (x1, -x2, -x3).
struct FlipMap {
  Point operator()(const Point& x) const { return {x[0], -x[1], -x[2]}; }
};

/// x2 cos x3 - x1 sin x3; positive in Omega, zero on the helicoid.
double level(const Point& x);
bool in_omega(const Point& x);
/// (rho cos s, rho sin s, s)
Point helicoid_point(double rho, double s);

/// Domain with a membership test; the point of evaluation must lie on its boundary for the
/// density estimators.
struct Domain {
  std::string name;
  std::function<bool(const Point&)> contains;
  std::function<double(const Point&)> level;  ///< zero on the boundary
};
Domain helicoid_domain();
/// {x1 > 0}
Domain half_space_domain();

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;

  bool within(double target, double sigmas = 3.0) const { return std::abs(mean - target) <= sigmas * stderr_; }
};

/// Gaussian measure of the complement: P[x + sqrt(2t) Z not in Omega], unit conductivity.
McEstimate u_gaussian_mc(const Domain& domain, const Point& x, double t, std::uint64_t n, std::uint64_t seed,
                         int jobs = 0);
McEstimate u_gaussian_mc(const Point& x, double t, std::uint64_t n, std::uint64_t seed, int jobs = 0);

/// Fraction of the sphere |y - x| = r outside Omega (x on the boundary).
McEstimate sphere_cap_density(const Domain& domain, const Point& x, double r, std::uint64_t n, std::uint64_t seed,
                              int jobs = 0);
/// Fraction of the ball |y - x| < r outside Omega (x on the boundary).
McEstimate ball_density(const Domain& domain, const Point& x, double r, std::uint64_t n, std::uint64_t seed,
                        int jobs = 0);

struct SymmetryReport {
  int samples = 0;
  int screw_violations = 0;     ///< in_omega(k_a x) != in_omega(x)
  int flip_violations = 0;      ///< in_omega(g x) == in_omega(x) off the surface
  int skipped_near_surface = 0;
  double max_flip_screw_gap = 0.0;  ///< max |g(x) - k_{-2 x3}(x)| on the helicoid
  double max_group_law_error = 0.0; ///< max |k_a(k_b x) - k_{a+b} x|
  std::optional<Point> witness;
};

SymmetryReport symmetry_identities_check(int samples, std::uint64_t seed);

/// Numerical transcript of the half-value argument at a point x.
struct ProofReplay {
  McEstimate u_x, u_gx, u_kx;
  double alpha = 0.0;
  double sum = 0.0, sum_stderr = 0.0;      ///< u(x) + u(g x), expected 1
  double screw_diff = 0.0, screw_stderr = 0.0;  ///< u(k_a x) - u(x), expected 0
  bool consistent = false;
};

ProofReplay proof_replay(const Point& x, double t, double alpha, std::uint64_t n, std::uint64_t seed, int jobs = 0);

}  // namespace isotherm::helicoid
