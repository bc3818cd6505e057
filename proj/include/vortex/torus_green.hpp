#pragma once

#include <stdexcept>
#include <vector>

#include "vortex/torus.hpp"

namespace vortex {

/// Raised when the Green's function is evaluated on (or numerically at) a lattice point.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Green's function F of the unit torus,
///
///   Laplacian F = 2 pi (delta - 1),   integral of F = 0,
///
/// with Fourier coefficients -1/(2 pi |k|^2) for k != 0.
///
/// Evaluation uses a Gaussian split of width sigma. The short-range part is a
/// sum over nearby lattice images of -E1(r^2 / (2 sigma^2)) / 2, which carries
/// the log r singularity exactly; the long-range part is a rapidly decaying
/// Fourier series truncated at |k|_inf <= truncation_order. sigma is tied to
/// the truncation order so that both truncation errors sit below 1e-16.
///
/// Immutable after construction and safe to share between threads.
class GreenEvaluator {
 public:
  static constexpr int kMinTruncationOrder = 16;
  static constexpr int kDefaultTruncationOrder = 20;
  /// Periodic distance to the lattice below which evaluation is refused.
  static constexpr double kSingularityCutoff = 1e-12;

  explicit GreenEvaluator(int truncation_order = kDefaultTruncationOrder);

  /// F at the torus image of p.
  double value(const LiftedPoint& p) const;

  /// Gradient of F at p. Behaves like p / |p|^2 near the origin.
  Vec2 gradient(const LiftedPoint& p) const;

  /// F(p) - log|wrap(p)|, where wrap(p) is the nearest-image displacement.
  /// Smooth near the origin and defined at p = 0 itself.
  double regular_part(const LiftedPoint& p) const;

  /// Limit of F(p) - log|p| as p -> 0.
  double regular_at_origin() const { return regular_part(Vec2::Zero()); }

  int truncation_order() const { return order_; }
  /// Gaussian split width in torus lengths.
  double split_parameter() const { return sigma_; }

 private:
  // Long-range Fourier part and its gradient.
  void long_range(const Vec2& x, double* value, Vec2* grad) const;

  int order_;
  double sigma_;
  double two_sigma_sq_;
  // coeff_[kx * (2K+1) + (ky + K)] = exp(-2 pi^2 sigma^2 |k|^2) / |k|^2, kx >= 0
  std::vector<double> coeff_;
  std::vector<Eigen::Vector2i> images_;
};

GreenEvaluator build_green(int truncation_order = GreenEvaluator::kDefaultTruncationOrder);

/// F at p; throws SingularityError within 1e-12 of a lattice point.
double eval_F(const GreenEvaluator& g, const LiftedPoint& p);

/// Gradient of F at p; same singularity rule as eval_F.
Vec2 eval_gradF(const GreenEvaluator& g, const LiftedPoint& p);

}  // namespace vortex
