#pragma once

#include <random>
#include <string>
#include <vector>

#include "vortex/experiments.hpp"
#include "vortex/harmonic_map.hpp"

namespace vortex::testing {

struct CheckResult {
  bool pass = false;
  std::string detail;
};

/// Admissible random configuration with n dipoles (2n vortices), pairwise
/// periodic distance at least min_separation and offset m in [-2, 2]^2.
VortexConfig random_config(std::mt19937_64& rng, int n, double min_separation);

/// Sum over the image lattice of -E1(|x - n|^2 / (2 tau^2)) / 2, and its
/// Laplacian away from the lattice.
double gaussian_singular_part(const Vec2& x, double tau);
double gaussian_singular_laplacian(const Vec2& x, double tau);

/// Reduced-flow run of a preset with the given step and stride.
TrajectoryRecord run_preset(const std::string& name, double dt, double t_end, int stride, const GreenEvaluator& green);

/// Largest |E(t) - E(0)| / |E(0)| of the conserved energy over the samples.
double relative_energy_drift(const TrajectoryRecord& record);

/// Largest |y| over all samples and vortices.
double max_abs_y(const TrajectoryRecord& record);

/// Jacobian integrated over the Voronoi cell of each centre.
std::vector<double> jacobian_masses(const FieldState& state, const PointSet& centres);

CheckResult check_green_function();
CheckResult check_gradient_exactness();
CheckResult check_reduced_conservation();
CheckResult check_symmetry();
CheckResult check_momentum_branch();
CheckResult check_rk4_order();
CheckResult check_initial_data();
CheckResult check_pde_conservation();
CheckResult check_pde_ode_convergence();
CheckResult check_determinism();

}  // namespace vortex::testing
