#pragma once

#include <Eigen/Sparse>
#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "isotherm/medium.hpp"

namespace isotherm::grid {

using SpMat = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// Semi-discrete diffusion system  M du/dt = -K u + b  (M diagonal, K symmetric).
/// chi holds the cell fraction of the complement phase; it is the indicator initial datum.
struct FvSystem {
  Vector mass;
  SpMat K;
  Vector b;
  Vector chi;

  int size() const { return static_cast<int>(mass.size()); }
  /// (K + lambda M)
  SpMat helmholtz(double lambda) const;
};

/// Linear read-out of a nodal vector (interpolation stencil).
struct Probe {
  std::vector<std::pair<int, double>> stencil;
  double offset = 0.0;  ///< contribution of eliminated Dirichlet values
  double operator()(const Vector& u) const;
};

struct SolveInfo {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Conjugate gradients (incomplete Cholesky) to the given relative residual; throws non-convergence.
Vector solve_spd(const SpMat& A, const Vector& rhs, double tol = 1e-10, int max_iter = 20000,
                 const Vector* guess = nullptr, SolveInfo* info = nullptr);

// ------------------------------------------------------------------ 1D and radial meshes

enum class LineKind { plane, radial };

/**
 * @brief Vertex-centred mesh on a line coordinate with phase-scaled spacing h sqrt(sigma).
 *
 * plane: coordinate x1, Omega = {x1 > 0}; radial: coordinate r >= 0, Omega = {r < R}, volume
 * weights r^{d-1}. The interface is a node. Far ends carry Dirichlet 0 (Omega) and 1 (complement);
 * r = 0 is a symmetry end.
 */
struct LineMesh {
  LineKind kind = LineKind::plane;
  int d = 1;
  double R = 0.0;
  std::vector<double> x;  ///< unknown nodes; the Dirichlet ends are eliminated
  double x_lo = 0.0, x_hi = 0.0;
  double g_lo = 0.0, g_hi = 1.0;
  bool symmetric_lo = false;
  int interface_index = 0;
  FvSystem system;

  Probe probe_at(double xi) const;
  Probe interface_probe() const;
};

struct LineMeshSpec {
  LineKind kind = LineKind::plane;
  int d = 1;
  double R = 1.0;
  double h = 1e-2;          ///< spacing in the phase-scaled variable
  double far_omega = 5.0;   ///< plane only: extent of the Omega side
  double far_complement = 5.0;
};

LineMesh build_line_mesh(const LineMeshSpec& spec, const TwoPhaseMedium& medium);

// ------------------------------------------------------------------ Cartesian grids

enum class BoundaryType { dirichlet, neumann };

struct BoundaryFace {
  BoundaryType type = BoundaryType::dirichlet;
  std::function<double(const std::array<double, 3>&)> value;  ///< Dirichlet value at the face centre
};

/// Cell-centred Cartesian grid with per-cell conductivity and values.
struct GridField {
  int dim = 2;
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> lo{0, 0, 0};
  double h = 1.0;
  std::vector<double> sigma;  ///< per cell
  std::vector<double> value;  ///< per cell
  /// Optional face conductivities per axis, indexed by the lower cell; empty = harmonic mean.
  std::array<std::vector<double>, 3> face_sigma;
  /// Faces in order (-x, +x, -y, +y, -z, +z).
  std::array<BoundaryFace, 6> boundary;

  int cells() const { return n[0] * n[1] * n[2]; }
  int index(int i, int j, int k) const { return i + n[0] * (j + n[1] * k); }
  std::array<double, 3> centre(int i, int j, int k) const;

  static GridField box(int dim, std::array<int, 3> n, std::array<double, 3> lo, double h, double sigma = 1.0);
};

/// Assemble the system; chi defaults to the given per-cell source fractions.
FvSystem assemble(const GridField& field, const std::vector<double>& chi);
/// Bilinear (or trilinear) interpolation of cell values, clamped at the box.
Probe grid_probe(const GridField& field, const std::array<double, 3>& p);

/// Disk of radius R centred at the origin on the quarter box [0, L]^2: exact face crossing
/// (series) conductivities, exact cell area fractions, symmetry on the axes, Dirichlet 1 far away.
struct DiskSetup {
  GridField field;
  std::vector<double> chi;  ///< complement area fraction per cell
};
DiskSetup make_quarter_disk(double R, const TwoPhaseMedium& medium, double L, double h);

/// Area of {x0<x<x1, y0<y<y1, x^2+y^2<R^2} for 0 <= x0, 0 <= y0.
double disk_rectangle_area(double x0, double x1, double y0, double y1, double R);

}  // namespace isotherm::grid
