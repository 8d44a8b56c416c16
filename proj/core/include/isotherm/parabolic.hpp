#pragma once

#include <optional>
#include <vector>

#include "isotherm/geometry.hpp"
#include "isotherm/grid.hpp"
#include "isotherm/medium.hpp"

namespace isotherm::parabolic {

struct TimeGridSpec {
  double t_first = 1e-6;
  double ratio = 1.1;
  /// Minimum number of implicit Euler steps before switching to Crank-Nicolson.
  int implicit_steps = 10;
  /// Extra times that must appear exactly on the grid.
  std::vector<double> include;
};

/// 0 = t_0 < t_1 < ... < t_K = t_end, geometric from t_first with the included times merged.
std::vector<double> make_time_grid(double t_end, const TimeGridSpec& spec);

enum class Scheme { rannacher, implicit_euler };

struct EvolveOptions {
  TimeGridSpec time;
  Scheme scheme = Scheme::rannacher;
  bool store_fields = false;
  std::optional<grid::Vector> initial;  ///< defaults to the complement indicator chi
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> probe_values;  ///< [time][probe]
  std::vector<grid::Vector> fields;               ///< only with store_fields
  double min_value = 0.0, max_value = 0.0;        ///< over all nodes and times
  int implicit_steps_taken = 0;
};

/**
 * @brief Time stepping of M u' = -K u + b from indicator data.
 *
 * The implicit Euler start runs for at least the requested number of steps and until the
 * highest mode has been damped by 1e-10; Crank-Nicolson takes over afterwards.
 */
TimeSeries evolve(const grid::FvSystem& system, double t_end, const std::vector<grid::Probe>& probes,
                  const EvolveOptions& options = {});

struct TransformResult {
  double lambda = 0.0;
  std::vector<double> w_time;
  std::vector<double> w_elliptic;  ///< filled by transform_and_check
  double tail_bound = 0.0;
};

/// lambda int_0^T e^{-lambda t} u dt with u piecewise linear in time, plus u(T) e^{-lambda T};
/// throws insufficient-horizon if e^{-lambda T} > tolerance.
TransformResult laplace_stieltjes(const TimeSeries& series, double lambda, double tolerance = 1e-6);
/// As above, also solving the elliptic problem of the same system at lambda.
TransformResult transform_and_check(const grid::FvSystem& system, const std::vector<grid::Probe>& probes,
                                    const TimeSeries& series, double lambda, double tolerance = 1e-6);

struct ConstancyProbe {
  double k = 0.0;
  std::vector<double> times;
  std::vector<double> deviation;         ///< |u - k| at the interface, per time
  std::vector<double> deviation_refined; ///< same at half the spacing
  double max_deviation = 0.0;
  double end_deviation = 0.0, end_deviation_refined = 0.0, end_deviation_extrapolated = 0.0;
  bool richardson_stable = false;
};

/// Line/radial mesh for a hyperplane, sphere or cylinder interface; far field beyond the heat
/// front at t_end.
grid::LineMesh interface_mesh(const geometry::Surface& surface, const TwoPhaseMedium& medium, double h,
                              double t_end);

ConstancyProbe interface_constancy_probe(const geometry::Surface& surface, const TwoPhaseMedium& medium,
                                         const std::vector<double>& t_grid, double h = 1.0 / 400.0);

}  // namespace isotherm::parabolic
