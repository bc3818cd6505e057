#pragma once

#include <complex>
#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "vortex/torus.hpp"

namespace vortex {

using RealGrid = Eigen::ArrayXXd;
using ComplexGrid = Eigen::ArrayXXcd;

/// Uniform cell-centred M x M grid on the unit torus: node (i, j) sits at
/// ((i + 1/2) / M, (j + 1/2) / M). The first array index is x.
///
/// Cell centring keeps vortices placed at "round" coordinates (multiples of
/// 1/M, including y = 0) off grid lines, so plaquette windings are never
/// ambiguous for such configurations.
class TorusGrid {
 public:
  explicit TorusGrid(int resolution);
  ~TorusGrid();
  TorusGrid(TorusGrid&&) noexcept;
  TorusGrid& operator=(TorusGrid&&) noexcept;

  int size() const { return m_; }
  double spacing() const { return 1.0 / m_; }
  double cell_area() const { return 1.0 / (double(m_) * m_); }
  Vec2 node(int i, int j) const { return {(i + 0.5) / m_, (j + 0.5) / m_}; }

  /// Angular wavenumber 2 pi k for FFT index i (Nyquist as negative).
  double wavenumber(int i) const;

  /// In-place 2-D transforms; inverse includes the 1/M^2 normalisation.
  void forward(ComplexGrid& a) const;
  void inverse(ComplexGrid& a) const;

  /// Spectral partial derivatives (Nyquist mode dropped).
  ComplexGrid dx(const ComplexGrid& a) const;
  ComplexGrid dy(const ComplexGrid& a) const;
  RealGrid dx(const RealGrid& a) const;
  RealGrid dy(const RealGrid& a) const;
  RealGrid laplacian(const RealGrid& a) const;

  /// Uniform (trapezoid) quadrature over the torus.
  template <typename Derived>
  auto integrate(const Eigen::ArrayBase<Derived>& a) const {
    return a.sum() * cell_area();
  }

 private:
  ComplexGrid derivative(const ComplexGrid& a, int axis) const;

  struct Impl;
  int m_;
  std::unique_ptr<Impl> impl_;
};

/// Runs body(i) for i in [0, count), split over VORTEXDYN_THREADS threads
/// (default 1). Bodies must write disjoint data.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace vortex
