#pragma once

#include <stdexcept>

#include "vortex/nlw_spectral.hpp"
#include "vortex/renorm_energy.hpp"

namespace vortex {

/// Co-tree edges of the phase reconstruction failed to close modulo 2 pi.
class PhaseClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResolutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sampled vector field on a TorusGrid.
struct CurrentField {
  RealGrid x, y;
};

/// Current of the canonical harmonic map at the grid nodes:
///
///   j(x) = -sum_j d_j J grad F(x - a_j) + J q_*,   J (v1, v2) = (v2, -v1).
///
/// It is divergence free, has mean J q_* and circulation 2 pi d_j around a_j.
/// Vortices within 1e-9 of a node are nudged by 1e-9 along both axes first.
CurrentField canonical_current(const VortexConfig& config, const GreenEvaluator& green, const TorusGrid& grid);
CurrentField canonical_current(const VortexConfig& config, const GreenEvaluator& green, int resolution);

struct PhaseField {
  RealGrid theta;
  /// Largest co-tree closure error, in radians modulo 2 pi.
  double max_closure_defect = 0.0;
};

/// Closure error above which the current is rejected as inconsistent.
inline constexpr double kPhaseClosureTolerance = 1e-3;

/// Phase theta with grad theta = current, by integration along a spanning
/// tree of the periodic grid graph (the x-edges of row 0 plus every
/// y-edge except the wrap-around ones). Edge increments subtract each
/// vortex's angular singularity exactly and integrate the smooth remainder
/// with the trapezoid rule. Every co-tree edge must then close modulo 2 pi;
/// throws PhaseClosureError otherwise (an inconsistent momentum branch).
PhaseField reconstruct_phase(const CurrentField& current, const VortexConfig& config);

/// Well-prepared initial data u0 = rho e^{i theta}, u_t = 0, where theta is
/// the canonical harmonic map phase and rho = prod_j f(|x - a_j| / eps) with
/// f the radial core profile. Requires eps * M >= 8.
FieldState initial_data(const VortexConfig& config, double eps, const GreenEvaluator& green, int resolution);

}  // namespace vortex
