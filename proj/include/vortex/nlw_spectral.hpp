#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "vortex/spectral_grid.hpp"

namespace vortex {

/// Raised when the field amplitude exceeds kBlowUpAmplitude.
class BlowUpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kBlowUpAmplitude = 10.0;

/// kappa_eps = 1 / |log eps|.
double kappa_of(double eps);

/// Order parameter u and its time derivative on an M x M torus grid.
struct FieldState {
  int resolution = 0;
  ComplexGrid u;
  ComplexGrid ut;
  double eps = 0.0;
  double kappa = 0.0;
  double t = 0.0;
};

/// Builds a state with kappa = 1/|log eps|; ut defaults to zero.
FieldState make_field_state(ComplexGrid u, double eps, double t = 0.0);
FieldState make_field_state(ComplexGrid u, ComplexGrid ut, double eps, double t = 0.0);

/// 0.1 eps sqrt(kappa_eps).
double default_pde_dt(double eps);

/// Time integrator for
///
///   kappa u_tt = Laplacian u - (|u|^2 - 1) u / eps^2
///
/// written as u_tt = -Omega^2 u + g(u) with Omega^2 = -Laplacian / kappa.
/// Each step is a filtered kick / exact linear rotation / kick:
///
///   v  += h/2 Phi g(Phi u)
///   (u, v) <- exact flow of u_tt = -Omega^2 u over h
///   v  += h/2 Phi g(Phi u)
///
/// with Phi = sinc(h Omega). This is the trigonometric (Gautschi-type)
/// method with filters psi = sinc^2, psi0 = cos sinc, psi1 = sinc. It is
/// symmetric (a step of -h undoes a step of +h) and exact for the linear
/// part. State is held in Fourier space between steps.
class NlwIntegrator {
 public:
  NlwIntegrator(const FieldState& initial, double dt);

  /// Advance by `steps` steps of size dt; throws BlowUpError.
  void advance(long steps = 1);

  FieldState state() const;
  double time() const { return t_; }
  double dt() const { return dt_; }
  const TorusGrid& grid() const { return grid_; }

 private:
  // Phi-filtered force in Fourier space for the current u_hat.
  void compute_force();

  TorusGrid grid_;
  double eps_, kappa_, dt_, t_;
  long steps_taken_ = 0;
  double t0_;
  ComplexGrid u_hat_, v_hat_, force_hat_;
  RealGrid cos_, sin_over_omega_, omega_sin_, filter_;
  mutable ComplexGrid work_;
};

/// Largest relative deviation of the Hamiltonian from its initial value,
/// sampled every `sample_every` steps over [t0, t0 + horizon].
double hamiltonian_drift(const FieldState& initial, double dt, double horizon, long sample_every = 1);

struct PdeStepChoice {
  double dt = 0.0;
  double drift = 0.0;
  int halvings = 0;
};

/// Starts from default_pde_dt and halves (at most max_halvings times) until
/// the relative Hamiltonian drift over the horizon is below the tolerance.
/// The step is shrunk to divide the horizon evenly.
PdeStepChoice choose_pde_dt(const FieldState& initial, double horizon, double tolerance, int max_halvings = 4);

/// One step from `state` (dt may be negative).
FieldState pde_step(const FieldState& state, double dt);

/// E(u) = integral of |grad u|^2 / 2 + (1 - |u|^2)^2 / (4 eps^2).
double energy(const FieldState& state);
/// Q(u) = integral of Im(conj(u) grad u).
Vec2 momentum(const FieldState& state);
/// H = integral of kappa |u_t|^2 / 2 + energy density.
double hamiltonian(const FieldState& state);
/// J(u) = Im(conj(u_x) u_y) at each node.
RealGrid jacobian_grid(const FieldState& state);

struct DetectedVortex {
  LiftedPoint position;  // torus image, sub-grid refined
  int degree = 0;
};

/// Plaquettes around which the phase of u winds by +-2 pi; position from the
/// zero of the bilinear interpolant of u inside the plaquette.
std::vector<DetectedVortex> detect_vortices(const FieldState& state);

/// Raw snapshot: little-endian int64 M, float64 eps, float64 t, then u and
/// u_t as row-major (y outer, x inner) interleaved (re, im) float64 pairs.
void write_snapshot(const std::filesystem::path& path, const FieldState& state);
FieldState read_snapshot(const std::filesystem::path& path);

}  // namespace vortex
