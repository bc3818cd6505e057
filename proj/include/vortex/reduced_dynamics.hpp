#pragma once

#include <string>
#include <vector>

#include "vortex/renorm_energy.hpp"

namespace vortex {

/// State of the reduced second-order system a_j'' = -(1/pi) grad_{a_j} W(a; q_*(a)).
struct ReducedState {
  double t = 0.0;
  PointSet positions;   // lifted, never wrapped
  PointSet velocities;
  std::vector<int> degrees;
  Eigen::Vector2i branch_offset = Eigen::Vector2i::Zero();

  VortexConfig config() const { return {positions, degrees, branch_offset}; }
};

ReducedState make_state(const VortexConfig& config, const PointSet& velocities, double t = 0.0);

/// Initial data with zero velocities.
ReducedState make_state(const VortexConfig& config);

struct StateDerivative {
  PointSet velocities;
  PointSet accelerations;
};

StateDerivative rhs(const ReducedState& state, const GreenEvaluator& green);

/// One classical fourth-order Runge-Kutta step of the first-order system
/// (a, a'). The branch offset is carried unchanged and positions stay lifted.
ReducedState rk4_step(const ReducedState& state, double dt, const GreenEvaluator& green);

/// W(a; q_*(a)) + (pi/2) sum_j |a_j'|^2, constant along exact solutions.
double conserved_energy(const ReducedState& state, const GreenEvaluator& green);

struct TrajectorySample {
  double t = 0.0;
  PointSet positions;  // lifted
  PointSet velocities;
  double conserved_energy = 0.0;
  Vec2 q = Vec2::Zero();

  PointSet torus_positions() const;
};

enum class Termination { completed, collision };

std::string to_string(Termination reason);

struct IntegrationOptions {
  double dt = 5e-6;
  double t_end = 1.0;
  /// One sample is recorded every output_stride steps, starting at t = 0.
  int output_stride = 200;
  /// Integration stops once two vortices are closer than this.
  double collision_threshold = 1e-3;
};

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  Termination reason = Termination::completed;
  /// State after the last accepted step (not necessarily a sample).
  ReducedState final_state;
  long steps = 0;
};

/// Fixed-step RK4 from the given initial velocities until t_end or collision.
TrajectoryRecord integrate(const VortexConfig& config, const PointSet& v0, const IntegrationOptions& options,
                           const GreenEvaluator& green);

/// As above with zero initial velocities.
TrajectoryRecord integrate(const VortexConfig& config, const IntegrationOptions& options,
                           const GreenEvaluator& green);

}  // namespace vortex
