#include "isotherm/grid.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>

#include "isotherm/errors.hpp"

namespace isotherm::grid {

SpMat FvSystem::helmholtz(double lambda) const {
  SpMat A = K;
  for (int i = 0; i < size(); ++i) A.coeffRef(i, i) += lambda * mass[i];
  return A;
}

double Probe::operator()(const Vector& u) const {
  double v = offset;
  for (const auto& [i, w] : stencil) v += w * u[i];
  return v;
}

Vector solve_spd(const SpMat& A, const Vector& rhs, double tol, int max_iter, const Vector* guess, SolveInfo* info) {
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper, Eigen::IncompleteCholesky<double>> cg;
  cg.setTolerance(tol);
  cg.setMaxIterations(max_iter);
  cg.compute(A);
  if (cg.info() != Eigen::Success) fail(ErrorCode::non_convergence, "preconditioner setup failed");
  Vector x = guess ? cg.solveWithGuess(rhs, *guess) : Vector(cg.solve(rhs));
  if (info) {
    info->iterations = static_cast<int>(cg.iterations());
    info->relative_residual = cg.error();
  }
  if (cg.info() != Eigen::Success || !(cg.error() <= tol * 10.0))
    fail(ErrorCode::non_convergence, "conjugate gradients stalled at residual " + std::to_string(cg.error()));
  return x;
}

// ------------------------------------------------------------------ line meshes

namespace {

// Integral of r^{1-d} between a and b (the radial flux resistance per unit conductivity).
double resistance(int d, bool radial, double a, double b) {
  if (!radial || d == 1) return b - a;
  // the exact radial resistance is infinite from the origin; use the midpoint area there
  if (a <= 0.0) return (b - a) / std::pow(0.5 * (a + b), d - 1);
  if (d == 2) return std::log(b / a);
  return (std::pow(a, 2.0 - d) - std::pow(b, 2.0 - d)) / (d - 2.0);
}

double volume(int d, bool radial, double a, double b) {
  if (!radial || d == 1) return b - a;
  return (std::pow(b, d) - std::pow(a, d)) / d;
}

}  // namespace

LineMesh build_line_mesh(const LineMeshSpec& spec, const TwoPhaseMedium& medium) {
  require(spec.h > 0.0, "mesh spacing must be positive");
  LineMesh mesh;
  mesh.kind = spec.kind;
  mesh.d = spec.kind == LineKind::plane ? 1 : spec.d;
  mesh.R = spec.kind == LineKind::plane ? 0.0 : spec.R;
  const bool radial = spec.kind == LineKind::radial;
  const double hs = spec.h * std::sqrt(medium.sigma_s), hm = spec.h * std::sqrt(medium.sigma_m);

  // all nodes including the eliminated ends, ascending
  std::vector<double> nodes;
  int iface = 0;
  if (!radial) {
    // equal scaled extents on both sides keep the discrete problem symmetric under the phase scaling
    const int n = std::max(2, static_cast<int>(std::ceil(std::max(spec.far_omega / std::sqrt(medium.sigma_s),
                                                                  spec.far_complement / std::sqrt(medium.sigma_m)) /
                                                         spec.h)));
    for (int j = n; j >= 1; --j) nodes.push_back(-j * hm);
    iface = static_cast<int>(nodes.size());
    nodes.push_back(0.0);
    for (int j = 1; j <= n; ++j) nodes.push_back(j * hs);
  } else {
    require(spec.d >= 2 && spec.R > 0.0, "radial mesh needs d >= 2 and R > 0");
    const int ns = std::max(2, static_cast<int>(std::lround(spec.R / hs)));
    for (int j = 0; j < ns; ++j) nodes.push_back(spec.R * j / ns);
    iface = ns;
    nodes.push_back(spec.R);
    const int nm = std::max(2, static_cast<int>(std::ceil(spec.far_complement / hm)));
    for (int j = 1; j <= nm; ++j) nodes.push_back(spec.R + j * hm);
  }
  const int total = static_cast<int>(nodes.size());
  auto sigma_between = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    const bool omega = radial ? mid < spec.R : mid > 0.0;
    return omega ? medium.sigma_s : medium.sigma_m;
  };
  auto in_complement = [&](double a) { return radial ? a > spec.R : a < 0.0; };

  // unknown index range [first, last]
  const int first = radial ? 0 : 1;
  const int last = total - 2;
  const int n = last - first + 1;
  mesh.symmetric_lo = radial;
  mesh.x_lo = nodes.front();
  mesh.x_hi = nodes.back();
  // plane: Omega at +x carries 0, complement at -x carries 1; radial: r_max carries 1
  mesh.g_lo = radial ? 0.0 : 1.0;
  mesh.g_hi = radial ? 1.0 : 0.0;
  mesh.interface_index = iface - first;
  mesh.x.assign(nodes.begin() + first, nodes.begin() + last + 1);

  FvSystem& sys = mesh.system;
  sys.mass = Vector::Zero(n);
  sys.b = Vector::Zero(n);
  sys.chi = Vector::Zero(n);
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = first; i <= last; ++i) {
    const int r = i - first;
    const double lo = i == 0 ? nodes[0] : 0.5 * (nodes[i - 1] + nodes[i]);
    const double hi = 0.5 * (nodes[i] + nodes[i + 1]);
    const double vol = volume(mesh.d, radial, lo, hi);
    sys.mass[r] = vol;
    // complement fraction of the dual cell
    double comp = 0.0;
    const double cut = radial ? spec.R : 0.0;
    if (hi <= cut)
      comp = in_complement(0.5 * (lo + hi)) ? vol : 0.0;
    else if (lo >= cut)
      comp = in_complement(0.5 * (lo + hi)) ? vol : 0.0;
    else
      comp = radial ? volume(mesh.d, radial, cut, hi) : volume(mesh.d, radial, lo, cut);
    sys.chi[r] = comp / vol;
  }
  for (int i = 0; i + 1 < total; ++i) {
    const double T = sigma_between(nodes[i], nodes[i + 1]) / resistance(mesh.d, radial, nodes[i], nodes[i + 1]);
    const bool a_known = i < first, b_known = i + 1 > last;
    const int ra = i - first, rb = i + 1 - first;
    if (!a_known) trip.emplace_back(ra, ra, T);
    if (!b_known) trip.emplace_back(rb, rb, T);
    if (!a_known && !b_known) {
      trip.emplace_back(ra, rb, -T);
      trip.emplace_back(rb, ra, -T);
    } else if (a_known && !b_known) {
      sys.b[rb] += T * mesh.g_lo;
    } else if (!a_known && b_known) {
      sys.b[ra] += T * mesh.g_hi;
    }
  }
  sys.K.resize(n, n);
  sys.K.setFromTriplets(trip.begin(), trip.end());
  return mesh;
}

Probe LineMesh::probe_at(double xi) const {
  Probe p;
  if (xi <= x.front()) {
    if (symmetric_lo || xi >= x.front()) {
      p.stencil.emplace_back(0, 1.0);
      return p;
    }
    const double t = (xi - x_lo) / (x.front() - x_lo);
    require(t >= 0.0, "probe outside the mesh");
    p.offset = (1.0 - t) * g_lo;
    p.stencil.emplace_back(0, t);
    return p;
  }
  if (xi >= x.back()) {
    const double t = (xi - x.back()) / (x_hi - x.back());
    require(t <= 1.0, "probe outside the mesh");
    p.offset = t * g_hi;
    p.stencil.emplace_back(static_cast<int>(x.size()) - 1, 1.0 - t);
    return p;
  }
  const auto it = std::upper_bound(x.begin(), x.end(), xi);
  const int j = static_cast<int>(it - x.begin());
  const double t = (xi - x[j - 1]) / (x[j] - x[j - 1]);
  p.stencil.emplace_back(j - 1, 1.0 - t);
  p.stencil.emplace_back(j, t);
  return p;
}

Probe LineMesh::interface_probe() const {
  Probe p;
  p.stencil.emplace_back(interface_index, 1.0);
  return p;
}

// ------------------------------------------------------------------ Cartesian grids

std::array<double, 3> GridField::centre(int i, int j, int k) const {
  return {lo[0] + (i + 0.5) * h, lo[1] + (j + 0.5) * h, lo[2] + (k + 0.5) * h};
}

GridField GridField::box(int dim, std::array<int, 3> n, std::array<double, 3> lo, double h, double sigma) {
  require(dim >= 1 && dim <= 3 && h > 0.0, "grid box needs 1 <= dim <= 3 and h > 0");
  GridField g;
  g.dim = dim;
  for (int a = dim; a < 3; ++a) n[a] = 1;
  g.n = n;
  g.lo = lo;
  g.h = h;
  g.sigma.assign(static_cast<std::size_t>(g.cells()), sigma);
  g.value.assign(static_cast<std::size_t>(g.cells()), 0.0);
  for (auto& f : g.boundary) {
    f.type = BoundaryType::neumann;
    f.value = nullptr;
  }
  return g;
}

FvSystem assemble(const GridField& g, const std::vector<double>& chi) {
  const int N = g.cells();
  require(static_cast<int>(g.sigma.size()) == N, "sigma size mismatch");
  require(static_cast<int>(chi.size()) == N, "source size mismatch");
  for (double s : g.sigma) require(s > 0.0, "cell conductivity must be positive");
  FvSystem sys;
  sys.mass = Vector::Ones(N);
  sys.b = Vector::Zero(N);
  sys.chi = Eigen::Map<const Vector>(chi.data(), N);
  const double ih2 = 1.0 / (g.h * g.h);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(N) * (2 * g.dim + 1));
  Vector diag = Vector::Zero(N);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        const int c = g.index(i, j, k);
        const std::array<int, 3> ijk{i, j, k};
        for (int a = 0; a < g.dim; ++a) {
          // lower boundary face
          if (ijk[a] == 0) {
            const auto& f = g.boundary[2 * a];
            if (f.type == BoundaryType::dirichlet) {
              auto p = g.centre(i, j, k);
              p[a] -= 0.5 * g.h;
              const double T = 2.0 * g.sigma[c] * ih2;
              diag[c] += T;
              sys.b[c] += T * f.value(p);
            }
          }
          if (ijk[a] == g.n[a] - 1) {
            const auto& f = g.boundary[2 * a + 1];
            if (f.type == BoundaryType::dirichlet) {
              auto p = g.centre(i, j, k);
              p[a] += 0.5 * g.h;
              const double T = 2.0 * g.sigma[c] * ih2;
              diag[c] += T;
              sys.b[c] += T * f.value(p);
            }
            continue;
          }
          std::array<int, 3> q = ijk;
          ++q[a];
          const int cn = g.index(q[0], q[1], q[2]);
          double sf;
          if (!g.face_sigma[a].empty())
            sf = g.face_sigma[a][static_cast<std::size_t>(c)];
          else
            sf = 2.0 * g.sigma[c] * g.sigma[cn] / (g.sigma[c] + g.sigma[cn]);
          const double T = sf * ih2;
          diag[c] += T;
          diag[cn] += T;
          trip.emplace_back(c, cn, -T);
          trip.emplace_back(cn, c, -T);
        }
      }
  for (int c = 0; c < N; ++c) trip.emplace_back(c, c, diag[c]);
  sys.K.resize(N, N);
  sys.K.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

Probe grid_probe(const GridField& g, const std::array<double, 3>& p) {
  std::array<int, 3> i0{0, 0, 0};
  std::array<double, 3> t{0, 0, 0};
  for (int a = 0; a < g.dim; ++a) {
    double s = (p[a] - g.lo[a]) / g.h - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(g.n[a] - 1));
    int i = std::min(static_cast<int>(std::floor(s)), std::max(g.n[a] - 2, 0));
    i0[a] = i;
    t[a] = g.n[a] > 1 ? s - i : 0.0;
  }
  Probe pr;
  const int corners = 1 << g.dim;
  for (int m = 0; m < corners; ++m) {
    std::array<int, 3> q = i0;
    double w = 1.0;
    for (int a = 0; a < g.dim; ++a) {
      const int bit = (m >> a) & 1;
      if (bit && g.n[a] == 1) {
        w = 0.0;
        break;
      }
      q[a] += bit;
      w *= bit ? t[a] : 1.0 - t[a];
    }
    if (w != 0.0) pr.stencil.emplace_back(g.index(q[0], q[1], q[2]), w);
  }
  return pr;
}

// ------------------------------------------------------------------ quarter disk

double disk_rectangle_area(double x0, double x1, double y0, double y1, double R) {
  require(x0 >= 0.0 && y0 >= 0.0 && x1 >= x0 && y1 >= y0, "rectangle must lie in the first quadrant");
  if (y0 >= R || x0 >= R) return 0.0;
  auto G = [R](double x) {
    x = std::min(x, R);
    return 0.5 * (x * std::sqrt(std::max(R * R - x * x, 0.0)) + R * R * std::asin(x / R));
  };
  const double xa = y1 < R ? std::sqrt(R * R - y1 * y1) : 0.0;
  const double xb = std::sqrt(R * R - y0 * y0);
  double area = 0.0;
  // full-height part
  const double f_hi = std::min(x1, xa);
  if (f_hi > x0) area += (y1 - y0) * (f_hi - x0);
  const double a = std::max(x0, xa), b = std::min(x1, xb);
  if (b > a) area += G(b) - G(a) - y0 * (b - a);
  return area;
}

DiskSetup make_quarter_disk(double R, const TwoPhaseMedium& medium, double L, double h) {
  require(R > 0.0 && L > R && h > 0.0, "quarter disk needs 0 < R < L and h > 0");
  const int n = static_cast<int>(std::lround(L / h));
  DiskSetup s;
  s.field = GridField::box(2, {n, n, 1}, {0, 0, 0}, h, medium.sigma_m);
  GridField& g = s.field;
  s.chi.assign(static_cast<std::size_t>(g.cells()), 1.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int c = g.index(i, j, 0);
      const auto p = g.centre(i, j, 0);
      g.sigma[c] = std::hypot(p[0], p[1]) < R ? medium.sigma_s : medium.sigma_m;
      const double in = disk_rectangle_area(i * h, (i + 1) * h, j * h, (j + 1) * h, R);
      s.chi[c] = std::clamp(1.0 - in / (h * h), 0.0, 1.0);
    }
  // series conductivity along each face-normal segment, split at the circle
  auto series = [&](double a, double b, double other) {
    const double ra = std::hypot(a, other), rb = std::hypot(b, other);
    if (ra < R && rb < R) return medium.sigma_s;
    if (ra >= R && rb >= R) return medium.sigma_m;
    const double cross = std::sqrt(R * R - other * other);
    const double th = (cross - a) / (b - a);
    return 1.0 / (th / medium.sigma_s + (1.0 - th) / medium.sigma_m);
  };
  for (int a = 0; a < 2; ++a) g.face_sigma[a].assign(static_cast<std::size_t>(g.cells()), 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int c = g.index(i, j, 0);
      const auto p = g.centre(i, j, 0);
      if (i + 1 < n) g.face_sigma[0][c] = series(p[0], p[0] + h, p[1]);
      if (j + 1 < n) g.face_sigma[1][c] = series(p[1], p[1] + h, p[0]);
    }
  auto one = [](const std::array<double, 3>&) { return 1.0; };
  g.boundary[0].type = BoundaryType::neumann;
  g.boundary[2].type = BoundaryType::neumann;
  g.boundary[1] = {BoundaryType::dirichlet, one};
  g.boundary[3] = {BoundaryType::dirichlet, one};
  return s;
}

}  // namespace isotherm::grid
