#pragma once

#include <stdexcept>
#include <vector>

#include "vortex/torus.hpp"
#include "vortex/torus_green.hpp"

namespace vortex {

/// Two vortices closer than the admissibility threshold.
class NearCollisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Periodic distance below which a configuration counts as collided.
inline constexpr double kCollisionDistance = 1e-6;

/// 2N vortices on the torus with degrees +-1 summing to zero.
///
/// Positions are lifted (never wrapped); together with the fixed integer
/// offset m they select the momentum branch q = 2 pi (sum_j d_j a_j + m),
/// which is then continuous along any continuous lifted path.
struct VortexConfig {
  PointSet positions;
  std::vector<int> degrees;
  Eigen::Vector2i branch_offset = Eigen::Vector2i::Zero();

  Eigen::Index size() const { return positions.cols(); }
};

/// Throws std::invalid_argument unless degrees are +-1 with zero sum, sizes
/// agree and the positions are pairwise distinct on the torus.
void validate(const VortexConfig& config);

/// Convenience constructor; validates.
VortexConfig make_config(const std::vector<Vec2>& positions, const std::vector<int>& degrees,
                         const Eigen::Vector2i& branch_offset = Eigen::Vector2i::Zero());

/// sum_j d_j a_j over lifted positions.
Vec2 degree_weighted_sum(const PointSet& positions, const std::vector<int>& degrees);

/// Momentum branch 2 pi (sum_j d_j a_j + m).
Vec2 q_star(const VortexConfig& config);

/// r(a): a quarter of the smallest pairwise periodic distance.
double pair_separation(const PointSet& positions);

/// -pi sum_{k != l} d_k d_l F(a_k - a_l).
double pair_energy(const VortexConfig& config, const GreenEvaluator& green);

/// W(a; q_*(a)) = pair energy + |q_*|^2 / 2.
double renormalized_W(const VortexConfig& config, const GreenEvaluator& green);

/// Column j holds the gradient of W with respect to a_j:
///   -2 pi sum_{l != j} d_j d_l grad F(a_j - a_l) + 2 pi d_j q_*.
PointSet grad_W(const VortexConfig& config, const GreenEvaluator& green);

/// 2N (pi log(1/eps) + gamma) + W(a; q_*(a)).
double W_eps(const VortexConfig& config, const GreenEvaluator& green, double eps, double gamma);

}  // namespace vortex
