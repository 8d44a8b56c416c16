#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isotherm/jet.hpp"

namespace isotherm::geometry {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// inside = the Omega side (sigma_s), outside = the complement (sigma_m).
enum class Side { inside, outside };
const char* to_string(Side side);

struct ProjectionResult {
  Vec z;             ///< nearest surface point
  double delta = 0;  ///< unsigned distance
  Vec nu;            ///< outward unit normal of Omega at z
  Side side = Side::inside;
  std::vector<double> params;  ///< variant-specific surface parameters of z
};

struct CurvatureData {
  std::vector<double> kappas;  ///< principal curvatures w.r.t. the inward normal
  std::vector<double> H;       ///< H_1 .. H_{N-1}
};

/// Radial model data for the closed-form solvers: d = 1 (plane), 2 (cylinder), N (sphere).
struct RadialModel {
  int d = 1;
  double R = 0.0;
};

class NormalChart;

class Surface {
 public:
  virtual ~Surface() = default;

  virtual std::string name() const = 0;
  virtual int dimension() const = 0;
  /// Positive in Omega, negative in the complement, zero on the surface.
  virtual double level(const Vec& x) const = 0;
  /// Nearest point without the tube check.
  virtual ProjectionResult nearest(const Vec& x) const = 0;
  /// Principal curvatures at the footpoint of a projection.
  virtual std::vector<double> kappas_at(const ProjectionResult& p) const = 0;
  /// Distance below which the nearest point is unique on the given side.
  virtual double reach(Side side) const = 0;
  /// Symmetry-reduced normal chart, or null if the variant has none.
  virtual std::unique_ptr<NormalChart> chart(Side side) const;
  virtual std::optional<RadialModel> radial_model() const { return std::nullopt; }
  /// Largest |kappa| over the declared patch.
  virtual double max_abs_curvature() const = 0;

  /// Declared tube half-width; defaults to 0.45 / max|kappa| (capped at 0.45 for flat data).
  double delta0() const;
  void set_delta0(double d0);

 private:
  std::optional<double> delta0_;
};

using SurfacePtr = std::shared_ptr<const Surface>;

class Hyperplane final : public Surface {
 public:
  explicit Hyperplane(int N = 3);
  std::string name() const override { return "hyperplane"; }
  int dimension() const override { return N_; }
  double level(const Vec& x) const override { return x(0); }
  ProjectionResult nearest(const Vec& x) const override;
  std::vector<double> kappas_at(const ProjectionResult&) const override;
  double reach(Side) const override;
  std::unique_ptr<NormalChart> chart(Side side) const override;
  std::optional<RadialModel> radial_model() const override { return RadialModel{1, 0.0}; }
  double max_abs_curvature() const override { return 0.0; }

 private:
  int N_;
};

class Sphere final : public Surface {
 public:
  Sphere(double R, int N);
  std::string name() const override { return "sphere"; }
  int dimension() const override { return N_; }
  double radius() const { return R_; }
  double level(const Vec& x) const override { return R_ - x.norm(); }
  ProjectionResult nearest(const Vec& x) const override;
  std::vector<double> kappas_at(const ProjectionResult&) const override;
  double reach(Side side) const override;
  std::unique_ptr<NormalChart> chart(Side side) const override;
  std::optional<RadialModel> radial_model() const override { return RadialModel{N_, R_}; }
  double max_abs_curvature() const override { return 1.0 / R_; }

 private:
  double R_;
  int N_;
};

/// Round cylinder {x1^2 + x2^2 = R^2} x R^{N-2}.
class Cylinder final : public Surface {
 public:
  Cylinder(double R, int N);
  std::string name() const override { return "cylinder"; }
  int dimension() const override { return N_; }
  double radius() const { return R_; }
  double level(const Vec& x) const override { return R_ - std::hypot(x(0), x(1)); }
  ProjectionResult nearest(const Vec& x) const override;
  std::vector<double> kappas_at(const ProjectionResult&) const override;
  double reach(Side side) const override;
  std::unique_ptr<NormalChart> chart(Side side) const override;
  std::optional<RadialModel> radial_model() const override { return RadialModel{2, R_}; }
  double max_abs_curvature() const override { return 1.0 / R_; }

 private:
  double R_;
  int N_;
};

/// Catenoid r = c cosh(x3 / c) in R^3; Omega is the solid part containing the axis.
/// params = (v, theta) with v = x3 of the footpoint.
class Catenoid final : public Surface {
 public:
  explicit Catenoid(double c = 1.0, double v_patch = 1.0);
  std::string name() const override { return "catenoid"; }
  int dimension() const override { return 3; }
  double waist() const { return c_; }
  double level(const Vec& x) const override;
  ProjectionResult nearest(const Vec& x) const override;
  std::vector<double> kappas_at(const ProjectionResult&) const override;
  double reach(Side) const override { return c_; }
  std::unique_ptr<NormalChart> chart(Side side) const override;
  double max_abs_curvature() const override { return 1.0 / c_; }

  Vec point(double v, double theta) const;
  Vec inward_normal(double v, double theta) const;

 private:
  double c_;
  double v_patch_;
};

/// Helicoid (rho cos s, rho sin s, s); Omega = {x2 cos x3 - x1 sin x3 > 0}. params = (rho, s).
class Helicoid final : public Surface {
 public:
  explicit Helicoid(double rho_patch = 2.0);
  std::string name() const override { return "helicoid"; }
  int dimension() const override { return 3; }
  double level(const Vec& x) const override;
  ProjectionResult nearest(const Vec& x) const override;
  std::vector<double> kappas_at(const ProjectionResult&) const override;
  double reach(Side) const override { return 1.0; }
  std::unique_ptr<NormalChart> chart(Side side) const override;
  double max_abs_curvature() const override { return 1.0; }

  static Vec point(double rho, double s);
  static Vec inward_normal(double rho, double s);

 private:
  double rho_patch_;
};

/// Graph x_N = phi(x') over a box; Omega = {x_N > phi(x')}. params = x' of the footpoint.
class Graph final : public Surface {
 public:
  struct Function {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<Mat(const Vec&)> hessian;
  };
  Graph(Function phi, int N, double box_half_width, double max_curvature, std::string label = "graph");
  std::string name() const override { return label_; }
  int dimension() const override { return N_; }
  double level(const Vec& x) const override;
  ProjectionResult nearest(const Vec& x) const override;
  std::vector<double> kappas_at(const ProjectionResult&) const override;
  double reach(Side) const override;
  double max_abs_curvature() const override { return max_curvature_; }

  /// phi = 1/2 sum a_i y_i^2
  static std::shared_ptr<Graph> quadratic(const std::vector<double>& a, double box_half_width);
  /// phi = A sin(w y_1) sin(w y_2) (N = 3)
  static std::shared_ptr<Graph> sine_product(double amplitude, double frequency, double box_half_width);

 private:
  Function phi_;
  int N_;
  double box_;
  double max_curvature_;
  std::string label_;
};

/// Nearest point with the tube check (reach of the variant on the query side).
ProjectionResult project(const Surface& surface, const Vec& x);
CurvatureData curvature(const Surface& surface, const ProjectionResult& p);

std::vector<double> elementary_symmetric(const std::vector<double>& kappas);

/// Laplacian of the distance at depth delta on the given side, from inward-normal curvatures.
double laplacian_of_distance(const std::vector<double>& kappas, double delta, Side side);
double laplacian_of_distance(const Surface& surface, const Vec& x);

struct ProductExpansion {
  double lhs;
  double rhs;
};
ProductExpansion curvature_product_expansion(const Surface& surface, const Vec& x);

/// |grad delta . grad (H_i o z)| by central differences with step h.
double tangential_gradient_check(const Surface& surface, const Vec& x, int i, double h = 1e-4);

/// Point at depth tau along the inward (side) normal from a footpoint; tau may be negative.
Vec march(const ProjectionResult& foot, double tau);

/**
 * @brief Symmetry-reduced Fermi chart around the surface on one side.
 *
 * Fields invariant under the surface's symmetry depend on one surface parameter u and the
 * depth tau. Curvatures are returned for this side (sign flipped on the outside).
 */
class NormalChart {
 public:
  virtual ~NormalChart() = default;
  virtual int curvature_count() const = 0;
  /// Curvature jets in du (s-independent).
  virtual std::vector<Jet2> kappas(double u0, int degree) const = 0;
  virtual bool has_tangential() const { return false; }
  /// sqrt(det I)(u) as a jet in du.
  virtual Jet2 area_factor(double u0, int degree) const;
  /// sqrt(g) g^{uu} at (u0 + du, tau0 + ds).
  virtual Jet2 conductance(double u0, double tau0, int degree) const;
  /// Chart coordinate of a footpoint.
  virtual double coordinate(const ProjectionResult& p) const = 0;
  Side side() const { return side_; }

 protected:
  explicit NormalChart(Side side) : side_(side) {}
  Side side_;
};

}  // namespace isotherm::geometry
