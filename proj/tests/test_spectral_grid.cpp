#include <doctest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "vortex/spectral_grid.hpp"

using namespace vortex;

TEST_CASE("nodes are cell centred") {
  const TorusGrid g(8);
  CHECK(g.node(0, 0) == Vec2(1.0 / 16, 1.0 / 16));
  CHECK(g.node(7, 3) == Vec2(15.0 / 16, 7.0 / 16));
  CHECK(g.wavenumber(1) == doctest::Approx(kTwoPi));
  CHECK(g.wavenumber(7) == doctest::Approx(-kTwoPi));
  CHECK_THROWS_AS(TorusGrid(7), std::invalid_argument);
  CHECK_THROWS_AS(TorusGrid(2), std::invalid_argument);
}

TEST_CASE("spectral derivatives of a trigonometric polynomial") {
  constexpr int m = 32;
  const TorusGrid g(m);
  RealGrid f(m, m), fx(m, m), fy(m, m), lap(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const Vec2 x = g.node(i, j);
      const double a = kTwoPi * 3 * x(0), b = kTwoPi * 2 * x(1);
      f(i, j) = std::sin(a) * std::cos(b) + 0.5;
      fx(i, j) = kTwoPi * 3 * std::cos(a) * std::cos(b);
      fy(i, j) = -kTwoPi * 2 * std::sin(a) * std::sin(b);
      lap(i, j) = -(kTwoPi * kTwoPi) * 13 * std::sin(a) * std::cos(b);
    }
  CHECK((g.dx(f) - fx).abs().maxCoeff() < 1e-11);
  CHECK((g.dy(f) - fy).abs().maxCoeff() < 1e-11);
  CHECK((g.laplacian(f) - lap).abs().maxCoeff() < 1e-9);
  CHECK(std::abs(g.integrate(f) - 0.5) < 1e-14);
}

TEST_CASE("forward and inverse transforms invert") {
  constexpr int m = 16;
  const TorusGrid g(m);
  ComplexGrid a = ComplexGrid::Random(m, m);
  const ComplexGrid orig = a;
  g.forward(a);
  CHECK(std::abs(a(0, 0) - orig.sum()) < 1e-12);
  g.inverse(a);
  CHECK((a - orig).abs().maxCoeff() < 1e-14);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(97);
  parallel_for(97, [&](int i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
}
