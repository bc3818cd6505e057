#include "vortex/reduced_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace vortex {

namespace {

TrajectorySample sample_of(const ReducedState& s, const GreenEvaluator& green) {
  TrajectorySample out;
  out.t = s.t;
  out.positions = s.positions;
  out.velocities = s.velocities;
  out.conserved_energy = conserved_energy(s, green);
  out.q = q_star(s.config());
  return out;
}

}  // namespace

ReducedState make_state(const VortexConfig& config, const PointSet& velocities, double t) {
  if (velocities.cols() != config.size())
    throw std::invalid_argument("make_state: one velocity per vortex required");
  return {t, config.positions, velocities, config.degrees, config.branch_offset};
}

ReducedState make_state(const VortexConfig& config) {
  return make_state(config, PointSet::Zero(2, config.size()));
}

StateDerivative rhs(const ReducedState& state, const GreenEvaluator& green) {
  return {state.velocities, -grad_W(state.config(), green) / kPi};
}

ReducedState rk4_step(const ReducedState& state, double dt, const GreenEvaluator& green) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
  ReducedState stage = state;
  auto at = [&](double c, const StateDerivative& k) -> const ReducedState& {
    stage.positions = state.positions + c * k.velocities;
    stage.velocities = state.velocities + c * k.accelerations;
    return stage;
  };
  const StateDerivative k1 = rhs(state, green);
  const StateDerivative k2 = rhs(at(0.5 * dt, k1), green);
  const StateDerivative k3 = rhs(at(0.5 * dt, k2), green);
  const StateDerivative k4 = rhs(at(dt, k3), green);

  ReducedState next = state;
  next.t = state.t + dt;
  next.positions += dt / 6.0 * (k1.velocities + 2.0 * k2.velocities + 2.0 * k3.velocities + k4.velocities);
  next.velocities +=
      dt / 6.0 * (k1.accelerations + 2.0 * k2.accelerations + 2.0 * k3.accelerations + k4.accelerations);
  return next;
}

double conserved_energy(const ReducedState& state, const GreenEvaluator& green) {
  return renormalized_W(state.config(), green) + 0.5 * kPi * state.velocities.squaredNorm();
}

PointSet TrajectorySample::torus_positions() const {
  PointSet out(2, positions.cols());
  for (Eigen::Index j = 0; j < positions.cols(); ++j) out.col(j) = torus_image(positions.col(j));
  return out;
}

std::string to_string(Termination reason) {
  return reason == Termination::completed ? "completed" : "collision";
}

TrajectoryRecord integrate(const VortexConfig& config, const PointSet& v0, const IntegrationOptions& options,
                           const GreenEvaluator& green) {
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw std::invalid_argument("integrate: dt must be positive");
  if (!(options.t_end > 0.0) || !std::isfinite(options.t_end))
    throw std::invalid_argument("integrate: t_end must be positive");
  if (options.output_stride < 1) throw std::invalid_argument("integrate: output stride must be at least 1");
  validate(config);

  TrajectoryRecord record;
  ReducedState state = make_state(config, v0);
  record.samples.push_back(sample_of(state, green));

  // Times are n * dt rather than accumulated sums; the last step is clipped to land on t_end.
  const auto n_steps = static_cast<long>(std::ceil(options.t_end / options.dt - 1e-9));
  for (long n = 1; n <= n_steps; ++n) {
    const double t_next = (n == n_steps) ? options.t_end : n * options.dt;
    ReducedState next;
    try {
      next = rk4_step(state, t_next - state.t, green);
    } catch (const NearCollisionError&) {
      record.reason = Termination::collision;
      break;
    }
    next.t = t_next;
    state = std::move(next);
    record.steps = n;
    const bool collided = min_periodic_distance(state.positions) < options.collision_threshold;
    if (n % options.output_stride == 0 && !collided) record.samples.push_back(sample_of(state, green));
    if (collided) {
      record.reason = Termination::collision;
      break;
    }
  }
  record.final_state = std::move(state);
  return record;
}

TrajectoryRecord integrate(const VortexConfig& config, const IntegrationOptions& options,
                           const GreenEvaluator& green) {
  return integrate(config, PointSet::Zero(2, config.size()), options, green);
}

}  // namespace vortex
