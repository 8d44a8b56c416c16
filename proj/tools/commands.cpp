#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "isotherm/acceptance.hpp"
#include "isotherm/elliptic.hpp"
#include "isotherm/errors.hpp"
#include "isotherm/geometry.hpp"
#include "isotherm/grid.hpp"
#include "isotherm/helicoid.hpp"
#include "isotherm/kernel1d.hpp"
#include "isotherm/medium.hpp"
#include "isotherm/numerics.hpp"
#include "isotherm/parabolic.hpp"
#include "isotherm/wkb.hpp"

namespace cli {

using namespace isotherm;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void Context::write(const std::string& name, const std::string& content) {
  std::ofstream f(out / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (out / name).string());
  f << content;
  artifacts.push_back(name);
}

namespace {

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// ------------------------------------------------------------------ kernel1d

void run_kernel1d(Context& ctx, Section& root) {
  const auto medium = read_medium(root);
  const auto xs = root.numbers("x1", {-1.0, -0.3, -0.1, 0.0, 0.1, 0.3, 1.0});
  const auto ts = log_grid(root, "t", 1e-3, 1e3, 13);
  const double agree_tol = root.number("agreement_tol", 1e-10) * ctx.tolerance_scale;
  const double iface_tol = root.number("interface_tol", 1e-10) * ctx.tolerance_scale;
  const double k = interface_constant(medium);

  std::ostringstream csv;
  csv << "x1,t,u_quadrature,u_closed_form,abs_diff\n";
  double worst = 0.0, worst_iface = 0.0;
  bool has_interface = false;
  for (double x : xs)
    for (double t : ts) {
      if (!(t > 0.0)) throw ConfigError("config.t must be positive");
      const double q = kernel1d::halfline_quadrature(x, t, medium);
      const double c = kernel1d::halfline_closed_form(x, t, medium);
      worst = std::max(worst, std::abs(q - c));
      if (x == 0.0) {
        has_interface = true;
        worst_iface = std::max({worst_iface, std::abs(q - k), std::abs(c - k)});
      }
      csv << num(x) << ',' << num(t) << ',' << num(q) << ',' << num(c) << ',' << num(std::abs(q - c)) << '\n';
    }
  ctx.write("kernel1d.csv", csv.str());
  ctx.add({"quadrature-vs-closed-form", "|quadrature - erfc| below tolerance", worst, agree_tol, worst < agree_tol,
           std::to_string(xs.size() * ts.size()) + " points"});
  if (has_interface)
    ctx.add({"interface-constant", "|u(0,t) - k| below tolerance, k = " + num(k), worst_iface, iface_tol,
             worst_iface < iface_tol, ""});
}

// ------------------------------------------------------------------ simulate / transform

struct Setup {
  std::string variant;
  grid::FvSystem system;
  std::vector<grid::Probe> probes;
  std::optional<grid::Probe> interface;
};

Setup build_setup(Section& root, const TwoPhaseMedium& medium, double t_end) {
  const auto spec = read_surface(root, "plane", {"plane", "sphere", "cylinder", "disk2d"});
  Section mesh = root.child("mesh", {"h", "far"});
  Setup s;
  s.variant = spec.type;
  const double spread = std::sqrt(std::max(medium.sigma_s, medium.sigma_m) * t_end);
  if (spec.type == "disk2d") {
    const double h = mesh.number("h", 1.0 / 16.0);
    const double L = mesh.number("far", spec.R + 4.0 * spread + 1.0);
    if (!(h > 0.0 && L > spec.R)) throw ConfigError("mesh.h must be positive and mesh.far beyond the disk");
    const auto disk = grid::make_quarter_disk(spec.R, medium, L, h);
    s.system = grid::assemble(disk.field, disk.chi);
    const double c = spec.R / std::sqrt(2.0);
    const auto pts = root.points("probes", {{spec.R, 0.0}, {c, c}, {0.5 * spec.R, 0.0}, {1.5 * spec.R, 0.0}});
    for (const auto& p : pts) {
      if (p.size() != 2) throw ConfigError("disk2d probes are [x, y] pairs");
      if (p[0] < 0.0 || p[1] < 0.0 || p[0] > L || p[1] > L) throw ConfigError("probe outside the quarter box");
      s.probes.push_back(grid::grid_probe(disk.field, {p[0], p[1], 0.0}));
    }
    return s;
  }
  const auto surface = make_surface(spec);
  const double h = mesh.number("h", 1.0 / 400.0);
  if (!(h > 0.0)) throw ConfigError("mesh.h must be positive");
  mesh.number("far", 8.0 * spread + 1.0);  // recorded only; the line mesh places its own far field
  const auto line = parabolic::interface_mesh(*surface, medium, h, t_end);
  s.system = line.system;
  const bool plane = spec.type == "plane";
  const auto pts = root.points("probes", plane ? std::vector<std::vector<double>>{{0.0}, {0.1}, {-0.1}}
                                               : std::vector<std::vector<double>>{
                                                     {spec.R}, {0.5 * spec.R}, {1.5 * spec.R}});
  for (const auto& p : pts) {
    if (p.size() != 1) throw ConfigError("line probes are one-element arrays (x1 or r)");
    if (p[0] < line.x_lo || p[0] > line.x_hi || (!plane && p[0] < 0.0)) throw ConfigError("probe outside the mesh");
    s.probes.push_back(line.probe_at(p[0]));
  }
  s.interface = line.interface_probe();
  return s;
}

parabolic::EvolveOptions read_time(Section& root) {
  Section t = root.child("time", {"t_first", "ratio", "implicit_steps", "scheme"});
  parabolic::EvolveOptions o;
  o.time.t_first = t.number("t_first", o.time.t_first);
  o.time.ratio = t.number("ratio", o.time.ratio);
  o.time.implicit_steps = t.integer("implicit_steps", o.time.implicit_steps);
  const auto scheme = t.text("scheme", "rannacher");
  if (scheme == "rannacher") o.scheme = parabolic::Scheme::rannacher;
  else if (scheme == "implicit_euler") o.scheme = parabolic::Scheme::implicit_euler;
  else throw ConfigError("time.scheme must be rannacher or implicit_euler");
  if (!(o.time.t_first > 0.0 && o.time.ratio > 1.0 && o.time.implicit_steps >= 0))
    throw ConfigError("time grid parameters out of range");
  return o;
}

void run_simulate(Context& ctx, Section& root) {
  const auto medium = read_medium(root);
  const double t_end = root.number("t_end", 1.0);
  if (!(t_end > 0.0)) throw ConfigError("config.t_end must be positive");
  const auto opts = read_time(root);
  const double bound_tol = root.number("bound_tol", 1e-10) * ctx.tolerance_scale;
  const double iface_tol = root.number("interface_tol", 1e-6) * ctx.tolerance_scale;
  auto setup = build_setup(root, medium, t_end);
  auto probes = setup.probes;
  if (setup.interface) probes.push_back(*setup.interface);
  const auto series = parabolic::evolve(setup.system, t_end, probes, opts);

  std::ostringstream csv;
  csv << "t,probe_id,u\n";
  for (std::size_t i = 0; i < series.times.size(); ++i)
    for (std::size_t p = 0; p < setup.probes.size(); ++p)
      csv << num(series.times[i]) << ',' << p << ',' << num(series.probe_values[i][p]) << '\n';
  ctx.write("simulate.csv", csv.str());

  const double excess = std::max(-series.min_value, series.max_value - 1.0);
  ctx.add({"bounds", "0 <= u <= 1 at every node and time", std::max(excess, 0.0), bound_tol, excess <= bound_tol,
           "min " + num(series.min_value) + ", max " + num(series.max_value)});
  if (setup.variant == "plane") {
    const double k = interface_constant(medium);
    double dev = 0.0;
    for (std::size_t i = 1; i < series.times.size(); ++i)
      dev = std::max(dev, std::abs(series.probe_values[i].back() - k));
    ctx.add({"interface-constant", "|u(0,t) - k| below tolerance, k = " + num(k), dev, iface_tol, dev < iface_tol,
             std::to_string(series.times.size() - 1) + " steps"});
  }
}

void run_transform(Context& ctx, Section& root) {
  const auto medium = read_medium(root);
  const auto lambdas = root.numbers("lambda", {10.0, 30.0, 100.0, 300.0});
  const double horizon_tol = root.number("horizon_tol", 1e-6);
  const double agree_tol = root.number("agreement_tol", 1e-3) * ctx.tolerance_scale;
  if (lambdas.empty()) throw ConfigError("config.lambda must not be empty");
  const double lmin = *std::min_element(lambdas.begin(), lambdas.end());
  if (!(lmin > 0.0 && horizon_tol > 0.0 && horizon_tol < 1.0)) throw ConfigError("lambda and horizon_tol out of range");
  // horizon long enough for the smallest lambda, with a margin
  const double t_end = root.number("t_end", 1.05 * std::log(1.0 / horizon_tol) / lmin);
  const auto opts = read_time(root);
  auto setup = build_setup(root, medium, t_end);
  const auto series = parabolic::evolve(setup.system, t_end, setup.probes, opts);

  std::ostringstream csv;
  csv << "lambda,probe_id,w_time,w_elliptic,diff\n";
  double worst = 0.0, tail = 0.0;
  for (double lambda : lambdas) {
    const auto tr = parabolic::transform_and_check(setup.system, setup.probes, series, lambda, horizon_tol);
    tail = std::max(tail, tr.tail_bound);
    for (std::size_t p = 0; p < setup.probes.size(); ++p) {
      const double diff = tr.w_time[p] - tr.w_elliptic[p];
      worst = std::max(worst, std::abs(diff));
      csv << num(lambda) << ',' << p << ',' << num(tr.w_time[p]) << ',' << num(tr.w_elliptic[p]) << ','
          << num(diff) << '\n';
    }
  }
  ctx.write("transform.csv", csv.str());
  ctx.add({"transform-consistency", "time-domain and elliptic w agree", worst, agree_tol, worst < agree_tol,
           "T = " + num(t_end) + ", tail bound " + num(tail)});
}

// ------------------------------------------------------------------ wkb

geometry::Vec default_point(const SurfaceSpec& spec) {
  if (spec.type == "helicoid") return geometry::Helicoid::point(0.5, 0.3);
  if (spec.type == "catenoid") return geometry::Catenoid(spec.c).point(0.3, 0.0);
  geometry::Vec p = geometry::Vec::Zero(spec.N);
  if (spec.type != "plane") p(0) = spec.R;
  return p;
}

void run_wkb(Context& ctx, Section& root) {
  const auto spec = read_surface(root, "sphere", {"plane", "sphere", "cylinder", "helicoid", "catenoid"});
  const auto surface = make_surface(spec);
  const int n = root.integer("order", 3);
  if (n < 1 || n > 6) throw ConfigError("config.order must be in 1..6");
  const geometry::Vec p0 = default_point(spec);
  const auto pv = root.numbers("point", std::vector<double>(p0.data(), p0.data() + p0.size()));
  if (static_cast<int>(pv.size()) != surface->dimension()) throw ConfigError("config.point has the wrong dimension");
  const geometry::Vec point = Eigen::Map<const geometry::Vec>(pv.data(), static_cast<Eigen::Index>(pv.size()));
  const auto side_name = root.text("side", "both");
  std::vector<geometry::Side> sides;
  if (side_name == "inside" || side_name == "both") sides.push_back(geometry::Side::inside);
  if (side_name == "outside" || side_name == "both") sides.push_back(geometry::Side::outside);
  if (sides.empty()) throw ConfigError("config.side must be inside, outside or both");
  std::vector<double> frac_default;
  for (int i = 0; i <= 10; ++i) frac_default.push_back(0.05 * i);
  auto fracs = root.numbers("depth_fractions", frac_default);
  std::sort(fracs.begin(), fracs.end());
  if (fracs.empty() || fracs.front() < 0.0 || fracs.back() > 1.0)
    throw ConfigError("config.depth_fractions must lie in [0, 1]");
  const double h = root.number("h", 1e-3);
  const double tol = root.number("residual_tol", 1e-4) * ctx.tolerance_scale;

  const double d0 = surface->delta0();
  std::vector<double> taus;
  for (double f : fracs) taus.push_back(f * d0);
  const auto foot = surface->nearest(point);

  std::ostringstream csv;
  csv << "side,tau";
  for (int j = 0; j < n; ++j) csv << ",A" << j;
  csv << ",A" << n << "_plus,A" << n << "_minus";
  for (int j = 0; j < n; ++j) csv << ",res_A" << j;
  csv << ",res_A" << n << "_plus,res_A" << n << "_minus\n";

  bool zero_ok = true, has_zero = false;
  double worst = 0.0;
  for (auto side : sides) {
    const auto ray = wkb::make_ray(*surface, foot, side, taus);
    std::shared_ptr<const geometry::NormalChart> chart = surface->chart(side);
    if (!chart) fail(ErrorCode::unsupported_geometry, "no normal chart for " + surface->name());
    const wkb::RayExpansion ex(chart, ray.u, n, std::max(d0, taus.back()));
    const auto table = wkb::compute_coefficients(ray, n, *surface, &ex);
    for (std::size_t i = 0; i < taus.size(); ++i) {
      csv << geometry::to_string(side) << ',' << num(taus[i]);
      for (int j = 0; j < n; ++j) csv << ',' << num(table.A[static_cast<std::size_t>(j)][i]);
      csv << ',' << num(table.A_plus[i]) << ',' << num(table.A_minus[i]);
      if (taus[i] == 0.0) {
        has_zero = true;
        zero_ok = zero_ok && table.A[0][i] == 1.0 && table.A_plus[i] == 0.0 && table.A_minus[i] == 0.0;
        for (int j = 1; j < n; ++j) zero_ok = zero_ok && table.A[static_cast<std::size_t>(j)][i] == 0.0;
      }
      const bool stencil_fits = taus[i] > 2.0 * h;
      const geometry::Vec x = ray.point(taus[i]);
      for (int j = 0; j <= n; ++j)
        for (int sign : {1, -1}) {
          if (j < n && sign < 0) continue;
          if (!stencil_fits) {
            csv << ",nan";
            continue;
          }
          const double res = wkb::gradient_identity_residual(*surface, ex, j, sign, x, h);
          worst = std::max(worst, res);
          csv << ',' << num(res);
        }
      csv << '\n';
    }
  }
  ctx.write("wkb.csv", csv.str());
  if (has_zero)
    ctx.add({"table-at-zero", "(A0, A1, ...) = (1, 0, ..., 0) exactly at tau = 0", zero_ok ? 0.0 : 1.0, 0.0, zero_ok,
             surface->name()});
  ctx.add({"gradient-identities", "identity residuals below tolerance", worst, tol, worst < tol,
           surface->name() + ", h = " + num(h)});
}

// ------------------------------------------------------------------ elliptic

void run_extract_curvature(Context& ctx, Section& root) {
  const auto medium = read_medium(root);
  const auto spec = read_surface(root, "sphere", {"plane", "sphere", "cylinder"});
  const auto lambdas = log_grid(root, "lambda", 1e2, 1e6, 49);
  const double rel_tol = root.number("relative_tol", 0.01) * ctx.tolerance_scale;
  const double plane_tol = root.number("plane_tol", 1e-8) * ctx.tolerance_scale;
  using elliptic::RadialGeometry;
  const RadialGeometry g = spec.type == "plane"    ? RadialGeometry::make_plane(spec.N)
                           : spec.type == "sphere" ? RadialGeometry::sphere(spec.R, spec.N)
                                                   : RadialGeometry::cylinder(spec.R, spec.N);
  const auto fit = elliptic::extract_mean_curvature(g, medium, lambdas);
  const double k = interface_constant(medium), ss = medium.sigma_s;

  std::ostringstream csv;
  csv << "lambda,normal_derivative,detrended,fit_constant,sigma_kappa_estimate\n";
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lambda = lambdas[i];
    csv << num(lambda) << ',' << num(fit.flux[i] / ss) << ',' << num(fit.flux[i] - k * std::sqrt(ss * lambda)) << ','
        << num(fit.constant) << ',' << num(fit.sum_kappa) << '\n';
  }
  ctx.write("extract_curvature.csv", csv.str());

  const double exact = g.sum_kappa();
  json summary{{"surface", spec.type},
               {"sigma_kappa_estimate", fit.sum_kappa},
               {"sigma_kappa_exact", exact},
               {"mean_curvature_estimate", fit.mean_curvature},
               {"fit_constant", fit.constant},
               {"fit_slope", fit.slope},
               {"residual_norm", fit.residual_norm}};
  ctx.write("extract_curvature.json", summary.dump(2) + "\n");
  if (exact == 0.0) {
    const double e = std::abs(fit.sum_kappa);
    ctx.add({"sigma-kappa", "sum of curvatures = 0", e, plane_tol, e < plane_tol, "estimate " + num(fit.sum_kappa)});
  } else {
    const double e = std::abs(fit.sum_kappa / exact - 1.0);
    ctx.add({"sigma-kappa", "sum of curvatures = " + num(exact) + " (relative)", e, rel_tol, e < rel_tol,
             "estimate " + num(fit.sum_kappa)});
  }
}

void run_maxprinciple(Context& ctx, Section& root) {
  const int trials = root.integer("trials", 100);
  const double lambda = root.number("lambda", 1.0);
  const int n = root.integer("n", 24);
  const double floor = root.number("min_tol", -1e-10) * ctx.tolerance_scale;
  Section ce = root.child("counterexample", {"N", "cells", "max_min"});
  const int N = ce.integer("N", 3);
  const int cells = ce.integer("cells", 512);
  const double max_min = ce.number("max_min", -0.4);
  if (trials < 1 || n < 4 || !(lambda > 0.0) || N < 3 || cells < 16) throw ConfigError("maxprinciple parameters out of range");

  const auto mp = elliptic::discrete_max_principle_check(trials, lambda, ctx.seed, n);
  const auto cx = elliptic::lambda_zero_counterexample(N, cells);
  json report{{"trials", mp.trials},
              {"min_value", mp.min_value},
              {"seed", ctx.seed},
              {"worst_trial", mp.worst_trial},
              {"lambda", lambda},
              {"grid", n},
              {"counterexample",
               {{"N", N},
                {"inner_boundary_value", cx.inner_boundary_value},
                {"min_interior", cx.min_interior},
                {"r_at_min", cx.r_at_min},
                {"max_profile_error", cx.max_profile_error}}}};
  ctx.write("maxprinciple.json", report.dump(2) + "\n");
  ctx.add({"discrete-maximum-principle", "min over trials >= tolerance", mp.min_value, floor, mp.min_value >= floor,
           std::to_string(mp.trials) + " trials, worst " + std::to_string(mp.worst_trial)});
  const bool ce_ok = cx.inner_boundary_value >= 0.0 && cx.min_interior < max_min;
  ctx.add({"lambda-zero-counterexample", "interior minimum below threshold", cx.min_interior, max_min, ce_ok,
           "r = " + num(cx.r_at_min)});
}

// ------------------------------------------------------------------ helicoid

void run_helicoid(Context& ctx, Section& root) {
  const auto ts = root.numbers("t", {0.1, 1.0, 10.0});
  const auto pts = root.points("points", {{0.8, 0.3}});
  const auto radii = root.numbers("radii", {0.5, 1.0, 2.0});
  const auto n = root.u64("n", 1000000);
  const int sym_samples = root.integer("symmetry_samples", 10000);
  const double alpha = root.number("alpha", 0.7);
  const double sigmas = root.number("sigmas", 3.0) * ctx.tolerance_scale;
  const bool half_space = root.boolean("half_space_check", true);
  if (n < 2 || sym_samples < 0) throw ConfigError("config.n must be >= 2 and symmetry_samples >= 0");
  for (const auto& p : pts)
    if (p.size() != 2) throw ConfigError("helicoid points are [rho, s] pairs");
  for (double t : ts)
    if (!(t > 0.0)) throw ConfigError("config.t must be positive");
  for (double r : radii)
    if (!(r > 0.0)) throw ConfigError("config.radii must be positive");

  const auto dom = helicoid::helicoid_domain();
  json out = json::array();
  std::uint64_t stream = ctx.seed;
  auto emit = [&](const std::string& test, double estimate, double se, std::uint64_t count, std::uint64_t seed,
                  double target, bool pass) {
    out.push_back({{"test", test}, {"estimate", estimate}, {"stderr", se}, {"n", count}, {"seed", seed},
                   {"target", target}, {"pass", pass}});
    ctx.add({test, "= " + num(target), estimate, se * sigmas, pass, "stderr " + num(se)});
  };
  auto mc = [&](const std::string& test, const helicoid::McEstimate& e, double target) {
    emit(test, e.mean, e.stderr_, e.n, e.seed, target, std::abs(e.mean - target) <= sigmas * e.stderr_);
  };

  for (const auto& p : pts) {
    const auto x = helicoid::helicoid_point(p[0], p[1]);
    const std::string at = "rho=" + label(p[0]) + " s=" + label(p[1]);
    for (double t : ts) mc("half-value " + at + " t=" + label(t), helicoid::u_gaussian_mc(dom, x, t, n, stream++, ctx.jobs), 0.5);
    for (double r : radii) {
      mc("sphere-cap " + at + " r=" + label(r), helicoid::sphere_cap_density(dom, x, r, n, stream++, ctx.jobs), 0.5);
      mc("ball " + at + " r=" + label(r), helicoid::ball_density(dom, x, r, n, stream++, ctx.jobs), 0.5);
    }
    const auto rp = helicoid::proof_replay(x, 1.0, alpha, n, stream, ctx.jobs);
    stream += 3;
    emit("replay-flip-sum " + at, rp.sum, rp.sum_stderr, n, rp.u_x.seed, 1.0,
         std::abs(rp.sum - 1.0) <= sigmas * rp.sum_stderr);
    emit("replay-screw-diff " + at + " alpha=" + label(alpha), rp.screw_diff, rp.screw_stderr, n, rp.u_x.seed, 0.0,
         std::abs(rp.screw_diff) <= sigmas * rp.screw_stderr);
  }
  if (half_space) {
    // x1 = 2 sqrt(t) off the plane {x1 = 0}: erfc(1) / 2
    const double t = 1.0;
    const auto e = helicoid::u_gaussian_mc(helicoid::half_space_domain(), {2.0 * std::sqrt(t), 0.0, 0.0}, t, n,
                                           stream++, ctx.jobs);
    mc("half-space-offset t=1", e, 0.5 * std::erfc(1.0));
  }
  if (sym_samples > 0) {
    const auto sym = helicoid::symmetry_identities_check(sym_samples, stream);
    const int bad = sym.screw_violations + sym.flip_violations;
    emit("symmetry-identities", bad, 0.0, static_cast<std::uint64_t>(sym.samples), stream, 0.0,
         bad == 0 && sym.max_flip_screw_gap < 1e-12 && sym.max_group_law_error < 1e-12);
    ++stream;
  }
  ctx.write("helicoid.json", out.dump(2) + "\n");
}

// ------------------------------------------------------------------ all

void run_all(Context& ctx, Section& root) {
  const auto ids = root.numbers("criteria", {});
  acceptance::Options o;
  o.seed = ctx.seed;
  o.jobs = ctx.jobs;
  o.tolerance_scale = ctx.tolerance_scale;
  std::vector<acceptance::Record> recs;
  if (ids.empty()) {
    recs = acceptance::run_all(o);
  } else {
    for (double id : ids) {
      if (id != std::floor(id) || id < 1 || id > 11) throw ConfigError("config.criteria ids must be 1..11");
      recs.push_back(acceptance::run_criterion(static_cast<int>(id), o));
    }
  }
  json out = json::array();
  for (const auto& r : recs) {
    out.push_back({{"id", r.id}, {"name", r.name}, {"expected", r.expected}, {"measured", r.measured},
                   {"tolerance", r.tolerance}, {"pass", r.pass}, {"time_limit", r.time_limit},
                   {"detail", r.detail}});
    ctx.add({"[" + std::to_string(r.id) + "] " + r.name, r.expected, r.measured, r.tolerance, r.pass,
             r.detail + " (" + label(r.seconds) + " s)"});
  }
  // wall times vary between runs, so they stay out of the artifact
  ctx.write("acceptance.json", out.dump(2) + "\n");
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"kernel1d", "two-phase line kernel: quadrature against the closed form",
       {"medium", "x1", "t", "agreement_tol", "interface_tol"}, run_kernel1d},
      {"simulate", "time stepping from indicator data on a line, radial or disk mesh",
       {"medium", "surface", "mesh", "probes", "t_end", "time", "bound_tol", "interface_tol"}, run_simulate},
      {"transform", "Laplace-Stieltjes transform of a run against the elliptic solve",
       {"medium", "surface", "mesh", "probes", "t_end", "time", "lambda", "horizon_tol", "agreement_tol"},
       run_transform},
      {"wkb", "barrier coefficient table along a normal ray",
       {"surface", "order", "point", "side", "depth_fractions", "h", "residual_tol"}, run_wkb},
      {"extract-curvature", "sum of principal curvatures from large-lambda fluxes",
       {"medium", "surface", "lambda", "relative_tol", "plane_tol"}, run_extract_curvature},
      {"maxprinciple", "randomized discrete maximum principle and the lambda = 0 counterexample",
       {"trials", "lambda", "n", "min_tol", "counterexample"}, run_maxprinciple},
      {"helicoid", "Monte Carlo half-value and density checks on the helicoid",
       {"t", "points", "radii", "n", "symmetry_samples", "alpha", "sigmas", "half_space_check"}, run_helicoid},
      {"all", "acceptance suite", {"criteria"}, run_all},
  };
  return table;
}

}  // namespace cli
