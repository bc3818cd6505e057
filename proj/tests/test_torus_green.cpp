#include <doctest.h>

#include <random>

#include "support/checks.hpp"

using namespace vortex;

namespace {

// log|theta_1(pi z | i) / eta(i)| - pi y^2 and its gradient, evaluated in
// 30-digit arithmetic.
struct ThetaSample {
  double x, y, f, fx, fy;
};

constexpr ThetaSample kTheta[] = {
    {0.5, 0.5, 0.34657359027997265, 0.0, 0.0},
    {0.4, 0.0, 0.12239277505892529, 1.0345430800304277, 0.0},
    {0.13, 0.41, 0.16767147330414688, 0.50356790950665939, 0.78317792887426058},
    {0.25, 0.6, 0.23391914280701887, 0.65163613781672206, -0.59069821199020575},
    {0.02, -0.03, -2.0142036790850635, 15.321928487016765, -22.982703658412741},
    {0.9, 0.2, -0.26531876547625891, -1.7204914705562413, 3.3654972511559579},
    {-0.3, 0.45, 0.28378813195896993, -0.52576566635621307, 0.24864988329654592},
};

// log(2 pi eta(i)^2)
constexpr double kRegularAtOrigin = 1.3105329259115095;

}  // namespace

TEST_CASE("green function matches the theta-function closed form") {
  const GreenEvaluator g = build_green();
  for (const auto& s : kTheta) {
    CAPTURE(s.x);
    CAPTURE(s.y);
    CHECK(std::abs(g.value({s.x, s.y}) - s.f) < 1e-13);
    const Vec2 grad = g.gradient({s.x, s.y});
    CHECK(std::abs(grad(0) - s.fx) < 1e-11);
    CHECK(std::abs(grad(1) - s.fy) < 1e-11);
  }
}

TEST_CASE("regular part at the origin") {
  const GreenEvaluator g = build_green();
  CHECK(std::abs(g.regular_at_origin() - kRegularAtOrigin) < 1e-13);
  const Vec2 p(1e-4, -2e-4);
  CHECK(std::abs(g.regular_part(p) - (g.value(p) - std::log(p.norm()))) < 1e-12);
  CHECK(std::abs(g.regular_part(p) - kRegularAtOrigin) < 1e-6);
}

TEST_CASE("square symmetry group, periodicity and oddness of the gradient") {
  const GreenEvaluator g = build_green();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int k = 0; k < 200; ++k) {
    const Vec2 p(u(rng), u(rng));
    if (p.norm() < 1e-3) continue;
    const double f = g.value(p);
    CHECK(std::abs(f - g.value(Vec2(p(1), p(0)))) < 1e-12);
    CHECK(std::abs(f - g.value(Vec2(-p(0), p(1)))) < 1e-12);
    CHECK(std::abs(f - g.value(p + Vec2(3, -1))) < 1e-12);
    CHECK((g.gradient(p) + g.gradient(-p)).norm() < 1e-11);
  }
}

TEST_CASE("gradient agrees with central differences") {
  const GreenEvaluator g = build_green();
  constexpr double h = 1e-5;
  for (const Vec2& p : {Vec2(0.3, 0.1), Vec2(0.05, 0.02), Vec2(-0.41, 0.33)}) {
    const Vec2 fd((g.value(p + h * Vec2::UnitX()) - g.value(p - h * Vec2::UnitX())) / (2 * h),
                  (g.value(p + h * Vec2::UnitY()) - g.value(p - h * Vec2::UnitY())) / (2 * h));
    CHECK((fd - g.gradient(p)).norm() < 1e-7 * (1 + g.gradient(p).norm()));
  }
}

TEST_CASE("truncation orders agree") {
  const GreenEvaluator a(GreenEvaluator::kMinTruncationOrder), b(32);
  for (const Vec2& p : {Vec2(0.5, 0.5), Vec2(0.01, 0.2), Vec2(0.37, -0.12)}) CHECK(std::abs(a.value(p) - b.value(p)) < 1e-13);
  CHECK_THROWS_AS(GreenEvaluator(GreenEvaluator::kMinTruncationOrder - 1), std::invalid_argument);
}

TEST_CASE("singular points are refused") {
  const GreenEvaluator g = build_green();
  CHECK_THROWS_AS(eval_F(g, Vec2(0, 0)), SingularityError);
  CHECK_THROWS_AS(eval_gradF(g, Vec2(1, -2)), SingularityError);
  CHECK_NOTHROW(eval_F(g, Vec2(1e-6, 0)));
  const Vec2 p(1e-5, 2e-5);
  CHECK((eval_gradF(g, p) - p / p.squaredNorm()).norm() < 1e-3);
}

TEST_CASE("laplacian, mean and symmetry of the split representation") {
  const auto r = vortex::testing::check_green_function();
  INFO(r.detail);
  CHECK(r.pass);
}
