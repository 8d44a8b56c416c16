#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "isotherm/geometry.hpp"
#include "isotherm/jet.hpp"
#include "isotherm/medium.hpp"
#include "isotherm/numerics.hpp"

namespace isotherm::wkb {

using geometry::Side;
using geometry::Vec;

/// Normal line from a footpoint z; x(tau) = z + tau * n where n is the unit normal pointing
/// into the chosen side (n = -nu on the inside, with nu the outward normal of Omega).
struct NormalRay {
  Vec z;
  Vec n;
  Side side = Side::inside;
  double u = 0.0;  ///< chart coordinate of z
  std::vector<double> samples;

  Vec point(double tau) const { return z + tau * n; }
};

NormalRay make_ray(const geometry::Surface& surface, const geometry::ProjectionResult& foot, Side side,
                   const std::vector<double>& samples);
/// Ray through x (footpoint and side from the projection).
NormalRay ray_through(const geometry::Surface& surface, const Vec& x, const std::vector<double>& samples = {});

/// A_0 = prod(1 - kappa_j delta)^{-1/2} at an ambient point (kappa flipped on the outside).
double compute_a0(const geometry::Surface& surface, const Vec& x);

/**
 * @brief Coefficients A_0..A_n along one normal ray, as jets in (tangential coordinate, depth).
 *
 * A_j for j < n are the recursion coefficients; A_n is the unforced part of A_{n,+-}, and
 * B is the response to the unit forcing, so A_{n,+-} = A_n +- B.
 * Depth integrals are spectral (Chebyshev) along the ray; the exponential weight is
 * A_0(delta) / A_0(tau).
 */
class RayExpansion {
 public:
  RayExpansion(std::shared_ptr<const geometry::NormalChart> chart, double u0, int order, double delta_max,
               int nodes = 33);

  struct Values {
    std::vector<double> A;      ///< A_0 .. A_n
    std::vector<double> lapA;   ///< Laplacians of A_0 .. A_n
    std::vector<double> dA;     ///< depth derivatives of A_0 .. A_n
    double B = 0.0, lapB = 0.0, dB = 0.0;
    double lap_delta = 0.0;
  };

  int order() const { return order_; }
  double u() const { return u0_; }
  double delta_max() const { return delta_max_; }
  Side side() const { return chart_->side(); }

  Values at(double delta) const;
  /// Full jets of A_0..A_n (index n+1 holds the forcing response) at depth delta.
  std::vector<Jet2> jets(double delta) const;
  /// Reduced Laplacian of a jet field at depth tau0.
  Jet2 laplacian(const Jet2& f, double tau0) const;
  Jet2 a0_jet(double tau0, int degree) const;
  Jet2 lap_delta_jet(double tau0, int degree) const;

  const geometry::NormalChart& chart() const { return *chart_; }

 private:
  struct Levels {
    std::vector<Jet2> A;    // A_0 .. A_ready
    std::vector<Jet2> lap;  // their Laplacians
    Jet2 B, lapB;           // forcing response (only when all levels are ready)
  };
  int degree(int j) const { return top_degree_ - 2 * j; }
  Levels eval(double delta, int ready, bool with_forcing) const;
  double integral(int level, int a, double delta) const;

  std::shared_ptr<const geometry::NormalChart> chart_;
  double u0_;
  int order_;
  double delta_max_;
  double lo_;
  int top_degree_;
  // cumulative_[j][a](tau) = int_lo^tau of the du^a coefficient of the level-j integrand;
  // level order_ + 1 is the forcing response.
  std::vector<std::vector<numerics::ChebSeries>> cumulative_;
  std::vector<std::vector<double>> offset_;
};

struct WkbCoefficientTable {
  int order = 1;
  Side side = Side::inside;
  std::vector<double> tau;
  std::vector<std::vector<double>> A;  ///< A_0 .. A_{n-1}
  std::vector<double> A_plus, A_minus;
  std::vector<std::vector<double>> lapA;  ///< Laplacians of A_0 .. A_{n-1}
  std::vector<double> lapA_plus, lapA_minus;
};

WkbCoefficientTable compute_coefficients(const NormalRay& ray, int n, const geometry::Surface& surface,
                                         const RayExpansion* reuse = nullptr);

/// Residual of the depth identity for A_j (j = 0..n-1) or A_{n,+-} (j = n with sign), using
/// centred differences of the coefficient at the ambient points x +- h grad(delta).
double gradient_identity_residual(const geometry::Surface& surface, const RayExpansion& expansion, int j,
                                  int sign, const Vec& x, double h);

// ------------------------------------------------------------------ near-boundary law

struct NearBoundaryLaw {
  double coefficient_measured;
  double coefficient_predicted;
  double exponent_measured;
  double exponent_predicted;
  std::vector<double> delta;
  std::vector<double> lapA;
};

enum class LaplacianMethod { jet, finite_difference };

/// Fit Delta A_s ~ c delta^{p-2-s} on [1e-3 delta0, 1e-1 delta0] along the ray at foot.
NearBoundaryLaw near_boundary_law(const geometry::Surface& surface, const geometry::ProjectionResult& foot, int p,
                                  int s, LaplacianMethod method = LaplacianMethod::jet, int samples = 24);

/// Predicted leading coefficient -2^{-(s+1)} (-1)^p (s+2)! C(p, s+2) H_p.
double near_boundary_prediction(int p, int s, double Hp);

// ------------------------------------------------------------------ harmonic corrector

struct HarmonicCorrector {
  enum class Kind { slab, radial };
  Kind kind = Kind::slab;
  double delta0 = 0.45;
  int d = 1;       ///< radial dimension
  double R = 0.0;  ///< interface radius
  Side side = Side::inside;

  double operator()(double delta) const;
  /// d psi / d delta at the surface (depth derivative into the side).
  double depth_derivative_at_surface() const;
};

/// Model-tube corrector; throws unsupported-geometry unless the surface is a plane, sphere or
/// cylinder, or allow_slab_surrogate is set.
HarmonicCorrector make_corrector(const geometry::Surface& surface, Side side, double delta0,
                                 bool allow_slab_surrogate = false);
double harmonic_corrector(const geometry::Surface& surface, const Vec& x, bool allow_slab_surrogate = false);

// ------------------------------------------------------------------ barriers

struct EllipticResidual {
  double lhs;  ///< sigma Delta f - lambda f from the reduced Laplacian of the barrier
  double rhs;  ///< closed-form right-hand side of the residual identity
  bool sign_ok;
};

struct Calibration {
  double eta = 0.0;
  double lambda_n = 0.0;
  double c_n = 0.0;  ///< max |Delta A_{n,+-}| over the sampled tube
};

/**
 * @brief Barrier family f_{n,+-}, w_{n,+-} on one side of the surface.
 *
 * On the inside the family brackets w; on the outside it brackets 1 - w, with sigma_m and
 * amplitude 1 - k. In both cases v_{n,-} <= v <= v_{n,+}.
 */
class BarrierFamily {
 public:
  struct Options {
    int order = 1;
    std::optional<double> delta0;
    bool allow_slab_surrogate = false;
    int chebyshev_nodes = 33;
  };

  BarrierFamily(geometry::SurfacePtr surface, TwoPhaseMedium medium, Side side, Options options);

  const geometry::Surface& surface() const { return *surface_; }
  Side side() const { return side_; }
  int order() const { return order_; }
  double sigma() const;
  double amplitude() const;
  double delta0() const { return delta0_; }
  const HarmonicCorrector& corrector() const { return psi_; }

  const RayExpansion& expansion(double u) const;

  double f(double u, double delta, double lambda, int sign) const;
  double f(const Vec& x, double lambda, int sign) const;
  EllipticResidual elliptic_residual(double u, double delta, double lambda, int sign) const;
  EllipticResidual elliptic_residual(const Vec& x, double lambda, int sign) const;

  /// Calibrate eta_n = delta0 / (2 sqrt sigma) and lambda_n; exact_outer (optional) returns v at
  /// the outer tube boundary for a given lambda.
  Calibration calibrate(const std::vector<double>& footpoints_u,
                        const std::function<double(double)>& exact_outer = nullptr) const;
  void set_calibration(const Calibration& c) { calibration_ = c; }
  const std::optional<Calibration>& calibration() const { return calibration_; }

  /// w_{n,+-} (inside) or its complement analogue; throws threshold-not-met below lambda_n.
  double w(double u, double delta, double lambda, int sign) const;
  double w(const Vec& x, double lambda, int sign) const;

  /// Boundary flux -d v_{n,+-} / d tau at tau = 0 (equals dw/dnu on either side).
  double boundary_flux(double u, double lambda, int sign) const;
  /// The unforced midpoint flux and half-gap of the sandwich at the surface.
  struct Sandwich {
    double lower;  ///< flux of v_{n,+}
    double upper;  ///< flux of v_{n,-}
  };
  Sandwich boundary_sandwich(double u, double lambda) const;

 private:
  void locate(const Vec& x, double& u, double& delta) const;
  double eta() const;

  geometry::SurfacePtr surface_;
  std::shared_ptr<const geometry::NormalChart> chart_;
  TwoPhaseMedium medium_;
  Side side_;
  int order_;
  double delta0_;
  HarmonicCorrector psi_;
  int nodes_;
  std::optional<Calibration> calibration_;
  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::shared_ptr<RayExpansion>> cache_;
};

}  // namespace isotherm::wkb
