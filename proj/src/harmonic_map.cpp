#include "vortex/harmonic_map.hpp"

#include <cmath>
#include <string>

#include "vortex/core_profile.hpp"

namespace vortex {

namespace {

constexpr double kNodeNudge = 1e-9;

// Moves vortices that sit on a grid node off it.
VortexConfig grid_safe(const VortexConfig& config, int m) {
  VortexConfig c = config;
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    const Vec2 cell = torus_image(c.positions.col(j)) * m - Vec2::Constant(0.5);
    const Vec2 offset = (cell - cell.array().round().matrix()) / m;
    if (offset.norm() < kNodeNudge) c.positions.col(j) += Vec2::Constant(kNodeNudge);
  }
  return c;
}

double wrap_angle(double a) { return a - kTwoPi * std::floor((a + kPi) / kTwoPi); }

// Gradient of arg(y).
Vec2 angle_gradient(const Vec2& y) { return Vec2(-y(1), y(0)) / y.squaredNorm(); }

}  // namespace

CurrentField canonical_current(const VortexConfig& config, const GreenEvaluator& green, const TorusGrid& grid) {
  validate(config);
  const int m = grid.size();
  const VortexConfig c = grid_safe(config, m);
  const Vec2 mean = rotate_J(q_star(c));
  CurrentField out{RealGrid(m, m), RealGrid(m, m)};
  parallel_for(m, [&](int j) {
    for (int i = 0; i < m; ++i) {
      const Vec2 x = grid.node(i, j);
      Vec2 v = mean;
      for (Eigen::Index k = 0; k < c.size(); ++k) v -= c.degrees[k] * rotate_J(green.gradient(x - c.positions.col(k)));
      out.x(i, j) = v(0);
      out.y(i, j) = v(1);
    }
  });
  return out;
}

CurrentField canonical_current(const VortexConfig& config, const GreenEvaluator& green, int resolution) {
  return canonical_current(config, green, TorusGrid(resolution));
}

PhaseField reconstruct_phase(const CurrentField& current, const VortexConfig& config) {
  const auto m = static_cast<int>(current.x.rows());
  if (current.x.cols() != m || current.y.rows() != m || current.y.cols() != m)
    throw std::invalid_argument("reconstruct_phase: current must be square");
  const TorusGrid grid(m);
  const VortexConfig c = grid_safe(config, m);
  const double h = grid.spacing();

  // Phase increment from node (i, j) to its neighbour along `axis`.
  auto increment = [&](int i, int j, int axis) {
    const Vec2 e = axis == 0 ? Vec2::UnitX() : Vec2::UnitY();
    const int ib = axis == 0 ? (i + 1) % m : i;
    const int jb = axis == 0 ? j : (j + 1) % m;
    const RealGrid& comp = axis == 0 ? current.x : current.y;
    double rest_a = comp(i, j), rest_b = comp(ib, jb);
    double singular = 0.0;
    const Vec2 na = grid.node(i, j), nb = grid.node(ib, jb);
    const Vec2 mid = na + 0.5 * h * e;
    // both ends use the vortex image nearest the midpoint, built from the
    // same node differences the current was sampled with
    const Vec2 seam = (na + h * e - nb).array().round().matrix();
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      const Vec2 a = c.positions.col(k);
      const Vec2 shift = (mid - a).array().round().matrix();
      const Vec2 ya = (na - a) - shift, yb = (nb - a) - (shift - seam);
      const int d = c.degrees[k];
      singular += d * wrap_angle(std::atan2(yb(1), yb(0)) - std::atan2(ya(1), ya(0)));
      rest_a -= d * angle_gradient(ya).dot(e);
      rest_b -= d * angle_gradient(yb).dot(e);
    }
    return singular + 0.5 * h * (rest_a + rest_b);
  };

  PhaseField out;
  out.theta = RealGrid::Zero(m, m);
  for (int i = 1; i < m; ++i) out.theta(i, 0) = out.theta(i - 1, 0) + increment(i - 1, 0, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 1; j < m; ++j) out.theta(i, j) = out.theta(i, j - 1) + increment(i, j - 1, 1);

  double worst = 0.0;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      // x-edges off the tree: every row but 0, plus the wrap-around edge of row 0
      if (j > 0 || i == m - 1) {
        const double miss = out.theta(i, j) + increment(i, j, 0) - out.theta((i + 1) % m, j);
        worst = std::max(worst, std::abs(wrap_angle(miss)));
      }
      if (j == m - 1) {
        const double miss = out.theta(i, j) + increment(i, j, 1) - out.theta(i, 0);
        worst = std::max(worst, std::abs(wrap_angle(miss)));
      }
    }
  out.max_closure_defect = worst;
  if (worst > kPhaseClosureTolerance)
    throw PhaseClosureError("phase does not close modulo 2 pi (defect " + std::to_string(worst) +
                            "); momentum branch inconsistent with vortex positions");
  return out;
}

FieldState initial_data(const VortexConfig& config, double eps, const GreenEvaluator& green, int resolution) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("initial_data: eps must lie in (0, 1)");
  if (eps * resolution < 8.0)
    throw ResolutionError("initial_data: eps * M = " + std::to_string(eps * resolution) + " < 8 (core under-resolved)");
  const TorusGrid grid(resolution);
  const PhaseField phase = reconstruct_phase(canonical_current(config, green, grid), config);
  const RadialProfile& profile = default_core_profile();

  ComplexGrid u(resolution, resolution);
  parallel_for(resolution, [&](int j) {
    for (int i = 0; i < resolution; ++i) {
      const Vec2 x = grid.node(i, j);
      double rho = 1.0;
      for (Eigen::Index k = 0; k < config.size(); ++k)
        rho *= profile(periodic_distance(x, config.positions.col(k)) / eps);
      u(i, j) = std::polar(rho, phase.theta(i, j));
    }
  });
  return make_field_state(std::move(u), eps);
}

}  // namespace vortex
