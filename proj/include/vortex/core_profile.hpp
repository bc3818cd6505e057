#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace vortex {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Radial amplitude f of a degree-one vortex in core units s = r / eps,
/// minimizing
///
///   2 pi int_0^R [ (f'^2 + f^2 / s^2) / 2 + (1 - f^2)^2 / 4 ] s ds
///
/// with f(0) = 0 and f(R) = 1. This is the radial reduction of the
/// Ginzburg-Landau energy on the unit disc with boundary datum e^{i theta},
/// rescaled so that R = 1 / eps.
struct RadialProfile {
  double outer_radius = 0.0;
  double step = 0.0;
  Eigen::VectorXd values;  // f at s_i = i * step
  double energy = 0.0;     // discrete minimum energy

  /// Cubic Hermite interpolation inside [0, R]; 1 beyond R.
  double operator()(double s) const;
};

/// Newton solve of the discrete minimization on a uniform mesh.
/// Throws ConvergenceError if Newton does not converge.
RadialProfile solve_radial_profile(double outer_radius, double step);

/// Minimum energy on the unit disc at core size eps, Richardson-extrapolated
/// in the mesh width.
double core_energy(double eps, double step = 0.02);

struct GammaEstimate {
  std::vector<double> eps;
  /// core_energy(eps) - pi log(1/eps) for each eps
  std::vector<double> shifted;
  /// Extrapolations assuming an eps^2 correction, from consecutive pairs.
  std::vector<double> pair_estimates;
  double gamma = 0.0;  // estimate from the two smallest eps
};

/// Core constant gamma from a strictly decreasing sequence of eps values.
GammaEstimate estimate_gamma(const std::vector<double>& eps_sequence);

double gamma_constant(const std::vector<double>& eps_sequence);

/// gamma from the default sequence {1/10, 1/20, 1/40, 1/80}, computed once.
double default_gamma();

/// Profile used to dress initial data: solved once on a wide interval.
const RadialProfile& default_core_profile();

}  // namespace vortex
