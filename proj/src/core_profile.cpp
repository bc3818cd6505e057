#include "vortex/core_profile.hpp"

#include <cmath>
#include <string>

#include <Eigen/Sparse>

#include "vortex/torus.hpp"

namespace vortex {

namespace {

double discrete_energy(const Eigen::VectorXd& f, double h) {
  const Eigen::Index n = f.size() - 1;
  double e = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double df = (f(i + 1) - f(i)) / h;
    e += 0.5 * df * df * (i + 0.5) * h * h;
  }
  for (Eigen::Index i = 1; i <= n; ++i) {
    const double s = i * h;
    const double w = (i == n) ? 0.5 * h : h;
    const double m = 1.0 - f(i) * f(i);
    e += w * (0.5 * f(i) * f(i) / s + 0.25 * m * m * s);
  }
  return kTwoPi * e;
}

}  // namespace

double RadialProfile::operator()(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= outer_radius) return 1.0;
  const Eigen::Index n = values.size() - 1;
  const double x = s / step;
  const Eigen::Index i = std::min<Eigen::Index>(static_cast<Eigen::Index>(x), n - 1);
  const double t = x - i;
  auto slope = [&](Eigen::Index k) {
    if (k == 0) return values(1) - values(0);
    if (k == n) return values(n) - values(n - 1);
    return 0.5 * (values(k + 1) - values(k - 1));
  };
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * values(i) + (t3 - 2 * t2 + t) * slope(i) + (-2 * t3 + 3 * t2) * values(i + 1) +
         (t3 - t2) * slope(i + 1);
}

RadialProfile solve_radial_profile(double outer_radius, double step) {
  if (!(outer_radius > 0.0 && step > 0.0 && step < outer_radius))
    throw std::invalid_argument("solve_radial_profile: need 0 < step < outer_radius");
  const auto n = static_cast<Eigen::Index>(std::llround(outer_radius / step));
  const double h = outer_radius / n;
  if (n < 4) throw std::invalid_argument("solve_radial_profile: mesh too coarse");

  Eigen::VectorXd f(n + 1);
  for (Eigen::Index i = 0; i <= n; ++i) f(i) = std::tanh(i * h / std::sqrt(2.0));
  f(0) = 0.0;
  f(n) = 1.0;

  const Eigen::Index m = n - 1;  // interior unknowns f_1 .. f_{n-1}
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  Eigen::VectorXd grad(m);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(3 * m));

  bool converged = false;
  for (int iter = 0; iter < 100 && !converged; ++iter) {
    entries.clear();
    for (Eigen::Index k = 0; k < m; ++k) {
      const Eigen::Index i = k + 1;
      const double s = i * h;
      const double up = (i + 0.5) * h, down = (i - 0.5) * h;
      grad(k) = (-(f(i + 1) - f(i)) * up + (f(i) - f(i - 1)) * down) / h +
                h * (f(i) / s - (1.0 - f(i) * f(i)) * f(i) * s);
      entries.emplace_back(k, k, (up + down) / h + h * (1.0 / s - (1.0 - 3.0 * f(i) * f(i)) * s));
      if (k + 1 < m) {
        entries.emplace_back(k, k + 1, -up / h);
        entries.emplace_back(k + 1, k, -up / h);
      }
    }
    Eigen::SparseMatrix<double> hess(m, m);
    hess.setFromTriplets(entries.begin(), entries.end());
    solver.compute(hess);
    if (solver.info() != Eigen::Success) throw ConvergenceError("radial profile: Hessian factorization failed");
    const Eigen::VectorXd delta = solver.solve(grad);
    f.segment(1, m) -= delta;
    converged = delta.lpNorm<Eigen::Infinity>() < 1e-12;
  }
  if (!converged)
    throw ConvergenceError("radial profile: Newton did not converge for R = " + std::to_string(outer_radius));

  RadialProfile p;
  p.outer_radius = outer_radius;
  p.step = h;
  p.values = std::move(f);
  p.energy = discrete_energy(p.values, h);
  return p;
}

double core_energy(double eps, double step) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("core_energy: need 0 < eps < 1");
  const double coarse = solve_radial_profile(1.0 / eps, step).energy;
  const double fine = solve_radial_profile(1.0 / eps, 0.5 * step).energy;
  return (4.0 * fine - coarse) / 3.0;
}

GammaEstimate estimate_gamma(const std::vector<double>& eps_sequence) {
  if (eps_sequence.size() < 2) throw std::invalid_argument("estimate_gamma: need at least two eps values");
  for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i] > 0.0 && eps_sequence[i] < 1.0))
      throw std::invalid_argument("estimate_gamma: eps values must lie in (0, 1)");
    if (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))
      throw std::invalid_argument("estimate_gamma: eps sequence must be strictly decreasing");
  }
  GammaEstimate est;
  est.eps = eps_sequence;
  for (double e : eps_sequence) est.shifted.push_back(core_energy(e) - kPi * std::log(1.0 / e));
  for (std::size_t i = 1; i < eps_sequence.size(); ++i) {
    const double a2 = eps_sequence[i - 1] * eps_sequence[i - 1];
    const double b2 = eps_sequence[i] * eps_sequence[i];
    est.pair_estimates.push_back((a2 * est.shifted[i] - b2 * est.shifted[i - 1]) / (a2 - b2));
  }
  est.gamma = est.pair_estimates.back();
  return est;
}

double gamma_constant(const std::vector<double>& eps_sequence) { return estimate_gamma(eps_sequence).gamma; }

double default_gamma() {
  static const double gamma = gamma_constant({1.0 / 10, 1.0 / 20, 1.0 / 40, 1.0 / 80});
  return gamma;
}

const RadialProfile& default_core_profile() {
  static const RadialProfile profile = solve_radial_profile(64.0, 0.01);
  return profile;
}

}  // namespace vortex
