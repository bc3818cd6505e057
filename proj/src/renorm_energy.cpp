#include "vortex/renorm_energy.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace vortex {

namespace {

void check_admissible(const VortexConfig& config) {
  const double d = min_periodic_distance(config.positions);
  if (d <= kCollisionDistance)
    throw NearCollisionError("vortices within " + std::to_string(d) + " of each other");
}

}  // namespace

void validate(const VortexConfig& config) {
  if (static_cast<std::size_t>(config.size()) != config.degrees.size())
    throw std::invalid_argument("positions and degrees differ in length");
  if (config.size() == 0) return;
  for (int d : config.degrees)
    if (d != 1 && d != -1) throw std::invalid_argument("degrees must be +1 or -1");
  if (std::accumulate(config.degrees.begin(), config.degrees.end(), 0) != 0)
    throw std::invalid_argument("degrees must sum to zero on the torus");
  if (!config.positions.allFinite()) throw std::invalid_argument("non-finite vortex position");
  if (min_periodic_distance(config.positions) <= kCollisionDistance)
    throw std::invalid_argument("vortex positions must be pairwise distinct");
}

VortexConfig make_config(const std::vector<Vec2>& positions, const std::vector<int>& degrees,
                         const Eigen::Vector2i& branch_offset) {
  VortexConfig c;
  c.positions.resize(2, static_cast<Eigen::Index>(positions.size()));
  for (std::size_t j = 0; j < positions.size(); ++j) c.positions.col(static_cast<Eigen::Index>(j)) = positions[j];
  c.degrees = degrees;
  c.branch_offset = branch_offset;
  validate(c);
  return c;
}

Vec2 degree_weighted_sum(const PointSet& positions, const std::vector<int>& degrees) {
  Vec2 s = Vec2::Zero();
  for (Eigen::Index j = 0; j < positions.cols(); ++j) s += degrees[static_cast<std::size_t>(j)] * positions.col(j);
  return s;
}

Vec2 q_star(const VortexConfig& config) {
  return kTwoPi * (degree_weighted_sum(config.positions, config.degrees) + config.branch_offset.cast<double>());
}

double pair_separation(const PointSet& positions) { return 0.25 * min_periodic_distance(positions); }

double pair_energy(const VortexConfig& config, const GreenEvaluator& green) {
  check_admissible(config);
  // F is even, so each unordered pair contributes twice.
  double sum = 0.0;
  for (Eigen::Index k = 0; k < config.size(); ++k)
    for (Eigen::Index l = k + 1; l < config.size(); ++l)
      sum += config.degrees[k] * config.degrees[l] * green.value(config.positions.col(k) - config.positions.col(l));
  return -kTwoPi * sum;
}

double renormalized_W(const VortexConfig& config, const GreenEvaluator& green) {
  return pair_energy(config, green) + 0.5 * q_star(config).squaredNorm();
}

PointSet grad_W(const VortexConfig& config, const GreenEvaluator& green) {
  check_admissible(config);
  const Eigen::Index n = config.size();
  const Vec2 q = q_star(config);
  PointSet g(2, n);
  for (Eigen::Index j = 0; j < n; ++j) g.col(j) = kTwoPi * config.degrees[j] * q;
  // grad F is odd: the (l, j) term is the negative of the (j, l) term.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = j + 1; l < n; ++l) {
      const Vec2 f = kTwoPi * config.degrees[j] * config.degrees[l] *
                     green.gradient(config.positions.col(j) - config.positions.col(l));
      g.col(j) -= f;
      g.col(l) += f;
    }
  }
  return g;
}

double W_eps(const VortexConfig& config, const GreenEvaluator& green, double eps, double gamma) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("W_eps requires 0 < eps < 1");
  const double cores = static_cast<double>(config.size()) * (kPi * std::log(1.0 / eps) + gamma);
  return cores + renormalized_W(config, green);
}

}  // namespace vortex
