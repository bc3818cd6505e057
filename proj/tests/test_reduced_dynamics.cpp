#include <doctest.h>

#include "support/checks.hpp"

using namespace vortex;
using vortex::testing::run_preset;

namespace {

// Reference solutions from an adaptive eighth-order integrator (tolerance
// 1e-13) with the theta-function gradient of F.
constexpr double kCollisionFig1Left = 0.2188093352641667;
constexpr double kCollisionFig1Right = 0.3043196122253792;
constexpr double kCollisionFig2Left = 0.024854888163023944;
constexpr double kFig1LeftX1At01 = 0.3360871904086126;
constexpr double kFig1RightX1At01 = 0.27223015341204704;
// fig2-right, vortex 1 at t = 0.5 and t = 1
constexpr double kFig2RightAt05[] = {0.4877192688672167, -0.0020977969678510834};
constexpr double kFig2RightAt1[] = {0.5125197194613946, 0.003608297924741111};

const TrajectorySample& sample_at(const TrajectoryRecord& r, double t) {
  for (const auto& s : r.samples)
    if (std::abs(s.t - t) < 1e-9) return s;
  throw std::runtime_error("no sample at requested time");
}

}  // namespace

TEST_CASE("collision times match the reference integrator") {
  const GreenEvaluator g = build_green();
  constexpr double dt = 5e-6;
  struct Case {
    const char* name;
    double t;
  };
  for (const Case c : {Case{"fig1-left", kCollisionFig1Left}, Case{"fig1-right", kCollisionFig1Right},
                       Case{"fig2-left", kCollisionFig2Left}}) {
    CAPTURE(c.name);
    const auto r = run_preset(c.name, dt, 1.0, 200, g);
    CHECK(r.reason == Termination::collision);
    CHECK(r.final_state.t >= c.t - 1e-9);
    CHECK(r.final_state.t <= c.t + dt + 1e-9);
  }
  CHECK(run_preset("fig2-right", dt, 1.0, 200, g).reason == Termination::completed);
}

TEST_CASE("positions match the reference integrator") {
  const GreenEvaluator g = build_green();
  const auto left = run_preset("fig1-left", 5e-6, 0.1, 200, g);
  CHECK(std::abs(sample_at(left, 0.1).positions(0, 0) - kFig1LeftX1At01) < 1e-10);
  CHECK(std::abs(sample_at(left, 0.1).positions(0, 1) - (1 - kFig1LeftX1At01)) < 1e-10);
  const auto right = run_preset("fig1-right", 5e-6, 0.1, 200, g);
  CHECK(std::abs(sample_at(right, 0.1).positions(0, 0) - kFig1RightX1At01) < 1e-10);

  const auto curved = run_preset("fig2-right", 5e-6, 1.0, 200, g);
  const auto& s05 = sample_at(curved, 0.5);
  const auto& s1 = sample_at(curved, 1.0);
  CHECK(std::abs(s05.positions(0, 0) - kFig2RightAt05[0]) < 1e-8);
  CHECK(std::abs(s05.positions(1, 0) - kFig2RightAt05[1]) < 1e-8);
  CHECK(std::abs(s1.positions(0, 0) - kFig2RightAt1[0]) < 1e-8);
  CHECK(std::abs(s1.positions(1, 0) - kFig2RightAt1[1]) < 1e-8);
  // the pair stays symmetric about (1/2, 0)
  CHECK((s1.positions.col(0) + s1.positions.col(1) - Vec2(1, 0)).norm() < 1e-12);
}

TEST_CASE("initial conserved energy equals W") {
  const GreenEvaluator g = build_green();
  const VortexConfig c = preset("fig1-left")->config();
  const auto r = run_preset("fig1-left", 5e-6, 0.01, 10, g);
  CHECK(r.samples.front().conserved_energy == renormalized_W(c, g));
  CHECK(r.samples.front().t == 0.0);
}

TEST_CASE("sampling") {
  const GreenEvaluator g = build_green();
  const auto r = run_preset("fig2-right", 1e-4, 0.05, 7, g);
  for (std::size_t i = 1; i < r.samples.size(); ++i) CHECK(std::abs(r.samples[i].t - r.samples[i - 1].t - 7e-4) < 1e-12);
  CHECK(r.steps == 500);
  CHECK(std::abs(r.final_state.t - 0.05) < 1e-12);
}

TEST_CASE("rhs and step validation") {
  const GreenEvaluator g = build_green();
  const ReducedState s = make_state(preset("fig2-right")->config());
  const StateDerivative d = rhs(s, g);
  CHECK((d.accelerations + grad_W(s.config(), g) / kPi).norm() < 1e-14);
  CHECK(d.velocities.norm() == 0.0);
  CHECK_THROWS_AS(rk4_step(s, 0.0, g), std::invalid_argument);
}

TEST_CASE("equilibria are fixed points") {
  const GreenEvaluator g = build_green();
  const auto r = run_preset("checkerboard", 1e-4, 0.5, 100, g);
  for (const auto& s : r.samples) CHECK((s.positions - r.samples.front().positions).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("time reversibility") {
  const GreenEvaluator g = build_green();
  IntegrationOptions opts;
  opts.dt = 1e-5;
  opts.t_end = 0.1;
  opts.output_stride = 1000;
  const VortexConfig c = preset("fig2-right")->config();
  const auto forward = integrate(c, opts, g);
  const auto back = integrate(forward.final_state.config(), -forward.final_state.velocities, opts, g);
  CHECK((back.final_state.positions - c.positions).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(back.final_state.velocities.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("conservation, order, symmetry and momentum branch") {
  for (auto check : {testing::check_reduced_conservation, testing::check_rk4_order, testing::check_symmetry,
                     testing::check_momentum_branch}) {
    const auto r = check();
    INFO(r.detail);
    CHECK(r.pass);
  }
}
