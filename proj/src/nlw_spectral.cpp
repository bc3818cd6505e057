#include "vortex/nlw_spectral.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

namespace vortex {

namespace {

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

void check_state(const FieldState& s) {
  const auto m = static_cast<Eigen::Index>(s.resolution);
  if (s.u.rows() != m || s.u.cols() != m || s.ut.rows() != m || s.ut.cols() != m)
    throw std::invalid_argument("FieldState: grid shape does not match resolution");
  if (!(s.eps > 0.0 && s.eps < 1.0)) throw std::invalid_argument("FieldState: eps must lie in (0, 1)");
}

struct Gradient {
  ComplexGrid x, y;
};

Gradient spectral_gradient(const TorusGrid& grid, const ComplexGrid& u) { return {grid.dx(u), grid.dy(u)}; }

RealGrid energy_density(const FieldState& s, const Gradient& g) {
  const RealGrid defect = 1.0 - s.u.abs2();
  return 0.5 * (g.x.abs2() + g.y.abs2()) + defect.square() / (4.0 * s.eps * s.eps);
}

}  // namespace

double kappa_of(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("kappa_of: eps must lie in (0, 1)");
  return 1.0 / std::abs(std::log(eps));
}

FieldState make_field_state(ComplexGrid u, double eps, double t) {
  ComplexGrid ut = ComplexGrid::Zero(u.rows(), u.cols());
  return make_field_state(std::move(u), std::move(ut), eps, t);
}

FieldState make_field_state(ComplexGrid u, ComplexGrid ut, double eps, double t) {
  FieldState s;
  s.resolution = static_cast<int>(u.rows());
  s.u = std::move(u);
  s.ut = std::move(ut);
  s.eps = eps;
  s.kappa = kappa_of(eps);
  s.t = t;
  check_state(s);
  return s;
}

double default_pde_dt(double eps) { return 0.1 * eps * std::sqrt(kappa_of(eps)); }

NlwIntegrator::NlwIntegrator(const FieldState& initial, double dt)
    : grid_(initial.resolution), eps_(initial.eps), kappa_(initial.kappa), dt_(dt), t_(initial.t), t0_(initial.t) {
  check_state(initial);
  if (!(dt != 0.0 && std::isfinite(dt))) throw std::invalid_argument("NlwIntegrator: dt must be finite and nonzero");
  const int m = grid_.size();
  cos_.resize(m, m);
  sin_over_omega_.resize(m, m);
  omega_sin_.resize(m, m);
  filter_.resize(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const double kx = grid_.wavenumber(i), ky = grid_.wavenumber(j);
      const double omega = std::sqrt((kx * kx + ky * ky) / kappa_);
      const double x = dt * omega;
      cos_(i, j) = std::cos(x);
      sin_over_omega_(i, j) = dt * sinc(x);
      omega_sin_(i, j) = omega * std::sin(x);
      filter_(i, j) = sinc(x);
    }
  u_hat_ = initial.u;
  v_hat_ = initial.ut;
  grid_.forward(u_hat_);
  grid_.forward(v_hat_);
  compute_force();
}

void NlwIntegrator::compute_force() {
  work_ = u_hat_;
  grid_.inverse(work_);
  const double peak = work_.abs().maxCoeff();
  if (!(peak <= kBlowUpAmplitude))
    throw BlowUpError("field amplitude " + std::to_string(peak) + " exceeds blow-up guard at t = " +
                      std::to_string(t_));
  work_ = u_hat_ * filter_;
  grid_.inverse(work_);
  const double coupling = 1.0 / (kappa_ * eps_ * eps_);
  work_ = -coupling * (work_.abs2() - 1.0) * work_;
  grid_.forward(work_);
  force_hat_ = work_ * filter_;
}

void NlwIntegrator::advance(long steps) {
  const double half = 0.5 * dt_;
  for (long n = 0; n < steps; ++n) {
    v_hat_ += half * force_hat_;
    const ComplexGrid u_old = u_hat_;
    u_hat_ = cos_ * u_old + sin_over_omega_ * v_hat_;
    v_hat_ = cos_ * v_hat_ - omega_sin_ * u_old;
    ++steps_taken_;
    t_ = t0_ + steps_taken_ * dt_;
    compute_force();
    v_hat_ += half * force_hat_;
  }
}

FieldState NlwIntegrator::state() const {
  FieldState s;
  s.resolution = grid_.size();
  s.u = u_hat_;
  s.ut = v_hat_;
  grid_.inverse(s.u);
  grid_.inverse(s.ut);
  s.eps = eps_;
  s.kappa = kappa_;
  s.t = t_;
  return s;
}

double hamiltonian_drift(const FieldState& initial, double dt, double horizon, long sample_every) {
  if (!(horizon > 0.0) || sample_every < 1) throw std::invalid_argument("hamiltonian_drift: bad horizon or sampling");
  const long steps = std::lround(std::ceil(horizon / std::abs(dt) - 1e-9));
  NlwIntegrator pde(initial, dt);
  const double h0 = hamiltonian(initial);
  double worst = 0.0;
  for (long n = 0; n < steps;) {
    const long k = std::min(sample_every, steps - n);
    pde.advance(k);
    n += k;
    worst = std::max(worst, std::abs(hamiltonian(pde.state()) - h0) / std::abs(h0));
  }
  return worst;
}

PdeStepChoice choose_pde_dt(const FieldState& initial, double horizon, double tolerance, int max_halvings) {
  PdeStepChoice c;
  double target = default_pde_dt(initial.eps);
  for (;; ++c.halvings, target /= 2) {
    const long steps = std::lround(std::ceil(horizon / target - 1e-9));
    c.dt = horizon / static_cast<double>(steps);
    c.drift = hamiltonian_drift(initial, c.dt, horizon);
    if (c.drift < tolerance || c.halvings == max_halvings) return c;
  }
}

FieldState pde_step(const FieldState& state, double dt) {
  NlwIntegrator integrator(state, dt);
  integrator.advance(1);
  return integrator.state();
}

double energy(const FieldState& state) {
  check_state(state);
  const TorusGrid grid(state.resolution);
  return grid.integrate(energy_density(state, spectral_gradient(grid, state.u)));
}

Vec2 momentum(const FieldState& state) {
  check_state(state);
  const TorusGrid grid(state.resolution);
  const Gradient g = spectral_gradient(grid, state.u);
  const ComplexGrid ubar = state.u.conjugate();
  return {grid.integrate((ubar * g.x).imag()), grid.integrate((ubar * g.y).imag())};
}

double hamiltonian(const FieldState& state) {
  check_state(state);
  const TorusGrid grid(state.resolution);
  const RealGrid e = energy_density(state, spectral_gradient(grid, state.u));
  return grid.integrate(0.5 * state.kappa * state.ut.abs2() + e);
}

RealGrid jacobian_grid(const FieldState& state) {
  check_state(state);
  const TorusGrid grid(state.resolution);
  const Gradient g = spectral_gradient(grid, state.u);
  return (g.x.conjugate() * g.y).imag();
}

std::vector<DetectedVortex> detect_vortices(const FieldState& state) {
  check_state(state);
  const int m = state.resolution;
  const double h = 1.0 / m;
  const TorusGrid grid(m);
  // Phase increments, computed once per edge so that neighbouring plaquettes agree.
  RealGrid along_x(m, m), along_y(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const auto& u0 = state.u(i, j);
      along_x(i, j) = std::arg(state.u((i + 1) % m, j) * std::conj(u0));
      along_y(i, j) = std::arg(state.u(i, (j + 1) % m) * std::conj(u0));
    }

  std::vector<DetectedVortex> found;
  for (int j = 0; j < m; ++j) {
    const int jp = (j + 1) % m;
    for (int i = 0; i < m; ++i) {
      const int ip = (i + 1) % m;
      const double circulation = along_x(i, j) + along_y(ip, j) - along_x(i, jp) - along_y(i, j);
      const int winding = static_cast<int>(std::lround(circulation / kTwoPi));
      if (winding == 0) continue;

      // zero of the bilinear interpolant, Newton from the plaquette centre
      const std::complex<double> c00 = state.u(i, j), c10 = state.u(ip, j), c01 = state.u(i, jp),
                                 c11 = state.u(ip, jp);
      double s = 0.5, t = 0.5;
      for (int it = 0; it < 30; ++it) {
        const std::complex<double> f = (1 - s) * (1 - t) * c00 + s * (1 - t) * c10 + (1 - s) * t * c01 + s * t * c11;
        const std::complex<double> fs = (1 - t) * (c10 - c00) + t * (c11 - c01);
        const std::complex<double> ft = (1 - s) * (c01 - c00) + s * (c11 - c10);
        Eigen::Matrix2d jac;
        jac << fs.real(), ft.real(), fs.imag(), ft.imag();
        if (std::abs(jac.determinant()) < 1e-300) break;
        const Vec2 step = jac.inverse() * Vec2(f.real(), f.imag());
        s -= step(0);
        t -= step(1);
        if (step.norm() < 1e-14) break;
      }
      if (!(std::isfinite(s) && std::isfinite(t))) s = t = 0.5;
      s = std::clamp(s, 0.0, 1.0);
      t = std::clamp(t, 0.0, 1.0);
      const Vec2 p = grid.node(i, j) + h * Vec2(s, t);
      found.push_back({torus_image(p), winding});
    }
  }
  return found;
}

namespace {

template <typename T>
void put(std::ofstream& out, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  out.write(reinterpret_cast<const char*>(&bits), 8);
}

template <typename T>
T get(std::ifstream& in) {
  std::uint64_t bits = 0;
  if (!in.read(reinterpret_cast<char*>(&bits), 8)) throw std::runtime_error("snapshot: unexpected end of file");
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const FieldState& state) {
  check_state(state);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("snapshot: cannot open " + path.string());
  put<std::int64_t>(out, state.resolution);
  put<double>(out, state.eps);
  put<double>(out, state.t);
  for (const ComplexGrid* g : {&state.u, &state.ut})
    for (int j = 0; j < state.resolution; ++j)
      for (int i = 0; i < state.resolution; ++i) {
        put<double>(out, (*g)(i, j).real());
        put<double>(out, (*g)(i, j).imag());
      }
}

FieldState read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("snapshot: cannot open " + path.string());
  const auto m = get<std::int64_t>(in);
  if (m < 4 || m > (1 << 16)) throw std::runtime_error("snapshot: implausible resolution");
  const double eps = get<double>(in);
  const double t = get<double>(in);
  ComplexGrid u(m, m), ut(m, m);
  for (ComplexGrid* g : {&u, &ut})
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < m; ++i) {
        const double re = get<double>(in);
        const double im = get<double>(in);
        (*g)(i, j) = {re, im};
      }
  return make_field_state(std::move(u), std::move(ut), eps, t);
}

}  // namespace vortex
