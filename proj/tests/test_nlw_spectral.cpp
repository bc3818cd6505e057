#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "support/checks.hpp"

using namespace vortex;

namespace {

ComplexGrid plane_wave(int m, double t, double kappa) {
  const TorusGrid g(m);
  const double omega = kTwoPi / std::sqrt(kappa);
  ComplexGrid u(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) u(i, j) = std::polar(1.0, kTwoPi * g.node(i, j)(0) - omega * t);
  return u;
}

}  // namespace

TEST_CASE("diagnostics of simple fields") {
  constexpr int m = 32;
  const FieldState one = make_field_state(ComplexGrid::Ones(m, m), 0.1);
  CHECK(energy(one) == 0.0);
  CHECK(momentum(one).norm() == 0.0);
  CHECK(hamiltonian(one) == 0.0);
  CHECK(jacobian_grid(one).abs().maxCoeff() == 0.0);

  const FieldState wave = make_field_state(plane_wave(m, 0, 1), 0.1);
  CHECK(std::abs(energy(wave) - 2 * kPi * kPi) < 1e-10);
  CHECK((momentum(wave) - Vec2(kTwoPi, 0)).norm() < 1e-10);
  CHECK(jacobian_grid(wave).abs().maxCoeff() < 1e-10);
  CHECK(one.kappa == doctest::Approx(1.0 / std::log(10.0)).epsilon(1e-15));
}

TEST_CASE("constant state is an equilibrium") {
  FieldState s = make_field_state(ComplexGrid::Ones(16, 16), 0.1);
  NlwIntegrator pde(s, 0.01);
  pde.advance(100);
  CHECK((pde.state().u - ComplexGrid::Ones(16, 16)).abs().maxCoeff() < 1e-14);
  CHECK(pde.state().ut.abs().maxCoeff() < 1e-14);
  CHECK(std::abs(pde.time() - 1.0) < 1e-12);
}

TEST_CASE("plane wave converges at second order") {
  constexpr int m = 16;
  constexpr double eps = 0.1, t = 0.5;
  const double kappa = kappa_of(eps);
  const double omega = kTwoPi / std::sqrt(kappa);
  ComplexGrid ut = plane_wave(m, 0, kappa) * std::complex<double>(0, -omega);
  const FieldState s = make_field_state(plane_wave(m, 0, kappa), ut, eps);
  std::vector<double> err;
  for (int n : {200, 400, 800}) {
    NlwIntegrator pde(s, t / n);
    pde.advance(n);
    err.push_back((pde.state().u - plane_wave(m, t, kappa)).abs().maxCoeff());
  }
  CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::log2(err[1] / err[2]) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("step is time symmetric") {
  const GreenEvaluator g = build_green();
  const FieldState u0 = initial_data(preset("fig1-left")->config(), 0.125, g, 64);
  const double dt = default_pde_dt(0.125);
  const FieldState back = pde_step(pde_step(u0, dt), -dt);
  CHECK((back.u - u0.u).abs().maxCoeff() < 1e-10);
  CHECK((back.ut - u0.ut).abs().maxCoeff() < 1e-10);

  NlwIntegrator fwd(u0, dt);
  fwd.advance(50);
  NlwIntegrator rev(fwd.state(), -dt);
  rev.advance(50);
  CHECK((rev.state().u - u0.u).abs().maxCoeff() < 1e-9);
  CHECK(std::abs(rev.time()) < 1e-12);
}

TEST_CASE("hamiltonian drift and step selection") {
  const auto r = testing::check_pde_conservation();
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("blow-up guard") {
  ComplexGrid u = ComplexGrid::Constant(16, 16, 11.0);
  CHECK_THROWS_AS(NlwIntegrator(make_field_state(u, 0.1), 1e-3).advance(), BlowUpError);
}

TEST_CASE("detection") {
  CHECK(detect_vortices(make_field_state(ComplexGrid::Ones(32, 32), 0.1)).empty());
  // u = (x - a) + i (y - b) style pair built from the initial data ansatz
  const GreenEvaluator g = build_green();
  const VortexConfig c = preset("checkerboard")->config();
  const auto found = detect_vortices(initial_data(c, 0.125, g, 128));
  REQUIRE(found.size() == 4);
  int total = 0;
  for (const auto& v : found) {
    total += v.degree;
    double best = 1.0;
    for (Eigen::Index k = 0; k < c.size(); ++k)
      if (c.degrees[k] == v.degree) best = std::min(best, periodic_distance(v.position, c.positions.col(k)));
    CHECK(best < 1.0 / 128);
  }
  CHECK(total == 0);
}

TEST_CASE("snapshot round trip") {
  const GreenEvaluator g = build_green();
  FieldState s = initial_data(preset("fig2-right")->config(), 0.125, g, 64);
  s.t = 0.25;
  s.ut = s.u * std::complex<double>(0.5, -1.0);
  const auto path = std::filesystem::temp_directory_path() / "vortexdyn_snapshot_test.bin";
  write_snapshot(path, s);
  CHECK(std::filesystem::file_size(path) == 8 + 8 + 8 + 2 * 64 * 64 * 16);
  const FieldState r = read_snapshot(path);
  std::filesystem::remove(path);
  CHECK(r.resolution == 64);
  CHECK(r.eps == s.eps);
  CHECK(r.t == s.t);
  CHECK(r.kappa == s.kappa);
  CHECK((r.u - s.u).abs().maxCoeff() == 0.0);
  CHECK((r.ut - s.ut).abs().maxCoeff() == 0.0);
}
