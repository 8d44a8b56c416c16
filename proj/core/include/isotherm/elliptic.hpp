#pragma once

#include <cstdint>
#include <vector>

#include "isotherm/geometry.hpp"
#include "isotherm/grid.hpp"
#include "isotherm/medium.hpp"

namespace isotherm::elliptic {

using geometry::Side;

/// Plane (coordinate x1, Omega = {x1 > 0}) or a radial interface of radius R with d radial
/// dimensions inside N ambient ones (sphere: d = N, cylinder: d = 2).
struct RadialGeometry {
  bool plane = true;
  int d = 1;
  int N = 3;
  double R = 0.0;

  static RadialGeometry from_surface(const geometry::Surface& surface);
  static RadialGeometry make_plane(int N = 3) { return {true, 1, N, 0.0}; }
  static RadialGeometry sphere(double R, int N) { return {false, N, N, R}; }
  static RadialGeometry cylinder(double R, int N) { return {false, 2, N, R}; }
  /// Sum of the principal curvatures w.r.t. the inward normal.
  double sum_kappa() const;
};

/**
 * @brief Closed-form solutions of sigma Delta w - lambda w = -lambda chi for radially symmetric data.
 *
 * The argument r is x1 for the plane and |x| otherwise. Dirichlet mode solves the homogeneous
 * equation on one side with boundary value b and decay away from the interface; transmission
 * mode solves the two-phase problem with continuity of w and sigma dw/dnu.
 */
class RadialSolution {
 public:
  enum class Mode { dirichlet, transmission };

  static RadialSolution dirichlet(const RadialGeometry& g, double sigma, double lambda, double boundary_value,
                                  Side side);
  static RadialSolution transmission(const RadialGeometry& g, const TwoPhaseMedium& medium, double lambda);

  Mode mode() const { return mode_; }
  double value(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;
  /// sigma (w'' + (d-1)/r w') - lambda w + lambda chi; zero up to rounding.
  double ode_residual(double r) const;
  double interface_value() const;
  /// One-sided dw/dnu at the interface, nu the outward normal of Omega.
  double normal_derivative(Side side) const;
  /// Omega-side amplitude alpha (transmission) or the boundary value (Dirichlet).
  double alpha() const { return alpha_; }

 private:
  struct Profile {
    double g, dg, d2g;
  };
  Profile inner(double r) const;  // decays into Omega, equals 1 at the interface
  Profile outer(double r) const;  // decays into the complement, equals 1 at the interface
  bool in_omega(double r) const { return g_.plane ? r > 0.0 : r < g_.R; }

  RadialGeometry g_;
  Mode mode_ = Mode::dirichlet;
  Side side_ = Side::inside;
  double lambda_ = 0.0;
  double sigma_in_ = 1.0, sigma_out_ = 1.0;
  double mu_in_ = 1.0, mu_out_ = 1.0;
  double alpha_ = 0.0;
};

// ------------------------------------------------------------------ curvature read-out

struct CurvatureFit {
  double constant = 0.0;  ///< fitted constant term of sigma_s dw/dnu - k sqrt(sigma_s lambda)
  double slope = 0.0;     ///< fitted lambda^{-1/2} term
  double residual_norm = 0.0;
  double sum_kappa = 0.0;       ///< -2 constant / (k sigma_s)
  double mean_curvature = 0.0;  ///< sum_kappa / (N - 1)
  std::vector<double> lambdas;
  std::vector<double> flux;  ///< sigma_s dw/dnu
};

/// Default grid: 12 points per decade on [1e2, 1e6].
std::vector<double> default_curvature_lambdas();
CurvatureFit extract_mean_curvature(const RadialGeometry& g, const TwoPhaseMedium& medium,
                                    const std::vector<double>& lambdas = default_curvature_lambdas());

struct HigherOrderFit {
  int p = 2;
  double Hp = 0.0;
  double coefficient_inside = 0.0, predicted_inside = 0.0;
  double coefficient_outside = 0.0, predicted_outside = 0.0;
  double ratio = 0.0, predicted_ratio = 0.0;
  double max_half_gap = 0.0;  ///< largest sandwich half-gap (scaled by sigma) on the grid
  std::vector<double> lambdas;
};

/// Default grid: 8 points per decade on [1e4, 1e8].
std::vector<double> default_higher_order_lambdas();
/// Fit the lambda^{-1/2} flux term on both sides of a minimal surface from the order-3 sandwich.
HigherOrderFit higher_order_fit(const geometry::SurfacePtr& surface, const TwoPhaseMedium& medium, int p,
                                const geometry::ProjectionResult& foot,
                                const std::vector<double>& lambdas = default_higher_order_lambdas());
/// k sqrt(sigma_s) p! 2^{-p} (-1)^p sigma_s^{p/2} H_p (inside) or k sqrt(sigma_s) p! 2^{-p} sigma_m^{p/2} H_p.
double higher_order_prediction(const TwoPhaseMedium& medium, int p, double Hp, Side side);

// ------------------------------------------------------------------ discrete checks

/// Solve (K + lambda M) w = lambda M chi + b on a grid.
grid::Vector solve_helmholtz(const grid::FvSystem& system, double lambda, const grid::Vector* guess = nullptr,
                             grid::SolveInfo* info = nullptr);
/// Fill field.value with the solution for the given per-cell source.
grid::SolveInfo grid_modified_helmholtz(grid::GridField& field, double lambda, const std::vector<double>& source);

struct MaxPrincipleReport {
  int trials = 0;
  double min_value = 0.0;
  int worst_trial = -1;
  bool passed = false;
};

/// Random conductivities, non-negative sources and Dirichlet data on an n x n grid.
MaxPrincipleReport discrete_max_principle_check(int trials, double lambda, std::uint64_t seed, int n = 24);

struct CounterexampleReport {
  double inner_boundary_value = 0.0;
  double min_interior = 0.0;
  double r_at_min = 0.0;
  double max_profile_error = 0.0;
};

/// Harmonic profile |x|^{2-N} - 1 on the shell 1 <= r <= 2 at lambda = 0: zero on the inner
/// sphere, negative inside the shell when the far value is carried by the profile.
CounterexampleReport lambda_zero_counterexample(int N = 3, int cells = 512);

struct DiskStudyLevel {
  double h = 0.0;
  double interface_mean = 0.0;
  double error = 0.0;
  int iterations = 0;
};

struct DiskStudy {
  double exact = 0.0;
  double far_distance = 0.0;
  double observed_order = 0.0;
  std::vector<DiskStudyLevel> levels;
};

/// Two-phase disk on the quarter domain; the interface value is read by bilinear interpolation
/// and averaged over angles. The far field sits 10 decay lengths out in the slower phase.
DiskStudy disk_interface_study(const TwoPhaseMedium& medium, double lambda, double R, const std::vector<double>& hs);

}  // namespace isotherm::elliptic
