#include "vortex/torus_green.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace vortex {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
// Gaussian tails below exp(-kTail) are dropped in both sums.
constexpr double kTail = 45.0;
constexpr double kFarDecay = 40.0;

// -E1(z)/2 - log r, expanded around r = 0 (z = r^2 / (2 sigma^2)).
double central_regular(double z, double two_sigma_sq) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= -z / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < 1e-18) break;
  }
  return 0.5 * (kEulerGamma - std::log(two_sigma_sq)) + 0.5 * sum;
}

}  // namespace

GreenEvaluator::GreenEvaluator(int truncation_order) : order_(truncation_order) {
  if (truncation_order < kMinTruncationOrder)
    throw std::invalid_argument("GreenEvaluator: truncation order " + std::to_string(truncation_order) +
                                " below minimum " + std::to_string(kMinTruncationOrder));
  sigma_ = std::sqrt(kFarDecay / (2.0 * kPi * kPi)) / (order_ + 1);
  two_sigma_sq_ = 2.0 * sigma_ * sigma_;

  const int K = order_;
  const int width = 2 * K + 1;
  coeff_.assign(static_cast<std::size_t>((K + 1) * width), 0.0);
  for (int kx = 0; kx <= K; ++kx) {
    for (int ky = -K; ky <= K; ++ky) {
      if (kx == 0 && ky <= 0) continue;  // half-plane only
      const double k2 = double(kx) * kx + double(ky) * ky;
      coeff_[kx * width + ky + K] = std::exp(-kPi * kPi * two_sigma_sq_ * k2) / k2;
    }
  }

  const double reach = std::sqrt(2.0 * kTail) * sigma_ + std::sqrt(0.5);
  const int n_max = static_cast<int>(std::ceil(reach));
  for (int nx = -n_max; nx <= n_max; ++nx)
    for (int ny = -n_max; ny <= n_max; ++ny)
      if (std::hypot(nx, ny) <= reach) images_.emplace_back(nx, ny);
}

void GreenEvaluator::long_range(const Vec2& x, double* value, Vec2* grad) const {
  using cd = std::complex<double>;
  const int K = order_;
  const int width = 2 * K + 1;

  // e^{2 pi i ky y} for ky in [-K, K]
  std::vector<cd> ey(width);
  const cd step_y = std::polar(1.0, kTwoPi * x(1));
  ey[K] = 1.0;
  for (int ky = 1; ky <= K; ++ky) {
    ey[K + ky] = ey[K + ky - 1] * step_y;
    ey[K - ky] = std::conj(ey[K + ky]);
  }
  const cd step_x = std::polar(1.0, kTwoPi * x(0));

  double v = 0.0, gx = 0.0, gy = 0.0;
  cd ex = 1.0;
  for (int kx = 0; kx <= K; ++kx) {
    const double* c = &coeff_[kx * width];
    cd a = 0.0, b = 0.0;
    for (int j = 0; j < width; ++j) {
      a += c[j] * ey[j];
      b += (c[j] * (j - K)) * ey[j];
    }
    const cd ta = ex * a;
    const cd tb = ex * b;
    v += ta.real();
    gx += kx * ta.imag();
    gy += tb.imag();
    ex *= step_x;
  }
  if (value) *value = -v / kPi;
  if (grad) *grad = Vec2(2.0 * gx, 2.0 * gy);
}

double GreenEvaluator::value(const LiftedPoint& p) const {
  const Vec2 w = wrap_displacement(p);
  if (w.norm() <= kSingularityCutoff)
    throw SingularityError("Green's function evaluated at a lattice point");
  return regular_part(p) + std::log(w.norm());
}

double GreenEvaluator::regular_part(const LiftedPoint& p) const {
  const Vec2 w = wrap_displacement(p);
  double near = 0.0;
  for (const auto& n : images_) {
    const double z = (w - n.cast<double>()).squaredNorm() / two_sigma_sq_;
    if (n.isZero()) {
      near += z < 1.0 ? central_regular(z, two_sigma_sq_) : 0.5 * std::expint(-z) - 0.5 * std::log(z * two_sigma_sq_);
    } else if (z < kTail) {
      near += 0.5 * std::expint(-z);
    }
  }
  double far = 0.0;
  long_range(w, &far, nullptr);
  return near + far + 0.5 * kPi * two_sigma_sq_;
}

Vec2 GreenEvaluator::gradient(const LiftedPoint& p) const {
  const Vec2 w = wrap_displacement(p);
  if (w.norm() <= kSingularityCutoff)
    throw SingularityError("Green's function gradient evaluated at a lattice point");
  Vec2 g = Vec2::Zero();
  for (const auto& n : images_) {
    const Vec2 y = w - n.cast<double>();
    const double r2 = y.squaredNorm();
    const double z = r2 / two_sigma_sq_;
    if (z < kTail) g += std::exp(-z) / r2 * y;
  }
  Vec2 far;
  long_range(w, nullptr, &far);
  return g + far;
}

GreenEvaluator build_green(int truncation_order) { return GreenEvaluator(truncation_order); }

double eval_F(const GreenEvaluator& g, const LiftedPoint& p) { return g.value(p); }

Vec2 eval_gradF(const GreenEvaluator& g, const LiftedPoint& p) { return g.gradient(p); }

}  // namespace vortex
