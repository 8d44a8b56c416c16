#include "isotherm/helicoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "isotherm/errors.hpp"
#include "isotherm/numerics.hpp"

namespace isotherm::helicoid {

Point ScrewMotion::operator()(const Point& x) const {
  const double c = std::cos(alpha), s = std::sin(alpha);
  return {c * x[0] - s * x[1], s * x[0] + c * x[1], x[2] + alpha};
}

double level(const Point& x) { return x[1] * std::cos(x[2]) - x[0] * std::sin(x[2]); }
bool in_omega(const Point& x) { return level(x) > 0.0; }
Point helicoid_point(double rho, double s) { return {rho * std::cos(s), rho * std::sin(s), s}; }

Domain helicoid_domain() { return {"helicoid", [](const Point& x) { return in_omega(x); }, level}; }

Domain half_space_domain() {
  return {"half-space", [](const Point& x) { return x[0] > 0.0; }, [](const Point& x) { return x[0]; }};
}

namespace {

constexpr std::uint64_t kBatch = 1u << 16;

// Fixed batches with their own streams; the reduction runs in batch order so the estimate does
// not depend on the number of workers.
template <class Sampler>
McEstimate run_batches(std::uint64_t n, std::uint64_t seed, int jobs, Sampler&& hit) {
  require(n >= 2, "need at least two samples");
  const auto batches = static_cast<int>((n + kBatch - 1) / kBatch);
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(batches), 0);
  numerics::parallel_for(batches, jobs > 0 ? jobs : numerics::default_jobs(), [&](int b) {
    numerics::CounterRng rng(seed, static_cast<std::uint64_t>(b));
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBatch;
    const std::uint64_t end = std::min(n, begin + kBatch);
    std::uint64_t h = 0;
    for (std::uint64_t i = begin; i < end; ++i) h += hit(rng) ? 1 : 0;
    hits[static_cast<std::size_t>(b)] = h;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  McEstimate e;
  e.n = n;
  e.seed = seed;
  const double p = static_cast<double>(total) / static_cast<double>(n);
  e.mean = p;
  // sample standard deviation of the indicator over sqrt(n)
  const double var = p * (1.0 - p) * static_cast<double>(n) / static_cast<double>(n - 1);
  e.stderr_ = std::sqrt(var / static_cast<double>(n));
  return e;
}

Point unit_direction(numerics::CounterRng& rng) {
  for (;;) {
    const Point z{rng.normal(), rng.normal(), rng.normal()};
    const double r = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
    if (r > 1e-300) return {z[0] / r, z[1] / r, z[2] / r};
  }
}

void require_on_boundary(const Domain& d, const Point& x) {
  require(std::abs(d.level(x)) <= 1e-12 * (1.0 + std::abs(x[0]) + std::abs(x[1])),
          "density estimators need a point on the " + d.name + " boundary");
}

}  // namespace

McEstimate u_gaussian_mc(const Domain& domain, const Point& x, double t, std::uint64_t n, std::uint64_t seed,
                         int jobs) {
  require(t > 0.0, "time must be positive");
  const double s = std::sqrt(2.0 * t);
  return run_batches(n, seed, jobs, [&](numerics::CounterRng& rng) {
    const Point y{x[0] + s * rng.normal(), x[1] + s * rng.normal(), x[2] + s * rng.normal()};
    return !domain.contains(y);
  });
}

McEstimate u_gaussian_mc(const Point& x, double t, std::uint64_t n, std::uint64_t seed, int jobs) {
  return u_gaussian_mc(helicoid_domain(), x, t, n, seed, jobs);
}

McEstimate sphere_cap_density(const Domain& domain, const Point& x, double r, std::uint64_t n, std::uint64_t seed,
                              int jobs) {
  require(r > 0.0, "radius must be positive");
  require_on_boundary(domain, x);
  return run_batches(n, seed, jobs, [&](numerics::CounterRng& rng) {
    const Point d = unit_direction(rng);
    return !domain.contains({x[0] + r * d[0], x[1] + r * d[1], x[2] + r * d[2]});
  });
}

McEstimate ball_density(const Domain& domain, const Point& x, double r, std::uint64_t n, std::uint64_t seed,
                        int jobs) {
  require(r > 0.0, "radius must be positive");
  require_on_boundary(domain, x);
  return run_batches(n, seed, jobs, [&](numerics::CounterRng& rng) {
    const Point d = unit_direction(rng);
    const double rr = r * std::cbrt(rng.uniform());
    return !domain.contains({x[0] + rr * d[0], x[1] + rr * d[1], x[2] + rr * d[2]});
  });
}

SymmetryReport symmetry_identities_check(int samples, std::uint64_t seed) {
  require(samples > 0, "need a positive sample count");
  SymmetryReport rep;
  rep.samples = samples;
  numerics::CounterRng rng(seed, 0);
  auto uni = [&](double a, double b) { return a + (b - a) * rng.uniform(); };
  auto dist = [](const Point& a, const Point& b) {
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
  };
  const FlipMap g;
  for (int i = 0; i < samples; ++i) {
    const Point x{uni(-4, 4), uni(-4, 4), uni(-4, 4)};
    const ScrewMotion k{uni(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi)};
    const ScrewMotion k2{uni(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi)};
    // the sign test is only meaningful away from rounding distance of the surface
    if (std::abs(level(x)) < 1e-9) {
      ++rep.skipped_near_surface;
    } else {
      if (in_omega(k(x)) != in_omega(x)) {
        ++rep.screw_violations;
        if (!rep.witness) rep.witness = x;
      }
      if (in_omega(g(x)) == in_omega(x)) {
        ++rep.flip_violations;
        if (!rep.witness) rep.witness = x;
      }
    }
    rep.max_group_law_error = std::max(rep.max_group_law_error, dist(k(k2(x)), k.compose(k2)(x)));
    const Point h = helicoid_point(uni(-4, 4), uni(-4, 4));
    rep.max_flip_screw_gap = std::max(rep.max_flip_screw_gap, dist(g(h), ScrewMotion{-2.0 * h[2]}(h)));
  }
  return rep;
}

ProofReplay proof_replay(const Point& x, double t, double alpha, std::uint64_t n, std::uint64_t seed, int jobs) {
  ProofReplay r;
  r.alpha = alpha;
  const Domain d = helicoid_domain();
  r.u_x = u_gaussian_mc(d, x, t, n, seed, jobs);
  r.u_gx = u_gaussian_mc(d, FlipMap{}(x), t, n, seed + 1, jobs);
  r.u_kx = u_gaussian_mc(d, ScrewMotion{alpha}(x), t, n, seed + 2, jobs);
  r.sum = r.u_x.mean + r.u_gx.mean;
  r.sum_stderr = std::hypot(r.u_x.stderr_, r.u_gx.stderr_);
  r.screw_diff = r.u_kx.mean - r.u_x.mean;
  r.screw_stderr = std::hypot(r.u_kx.stderr_, r.u_x.stderr_);
  r.consistent = std::abs(r.sum - 1.0) <= 3.0 * r.sum_stderr && std::abs(r.screw_diff) <= 3.0 * r.screw_stderr;
  return r;
}

}  // namespace isotherm::helicoid
