#include "vortex/spectral_grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace vortex {

struct TorusGrid::Impl {
  // Plans are cached inside Eigen::FFT, so transforms are not reentrant.
  mutable Eigen::FFT<double> fft{Eigen::default_fft_impl<double>(), Eigen::FFT<double>::Unscaled};
  mutable std::vector<std::complex<double>> in, out;
};

TorusGrid::TorusGrid(int resolution) : m_(resolution), impl_(std::make_unique<Impl>()) {
  if (resolution < 4 || resolution % 2 != 0)
    throw std::invalid_argument("TorusGrid: resolution must be even and at least 4, got " + std::to_string(resolution));
  impl_->in.resize(static_cast<std::size_t>(m_));
  impl_->out.resize(static_cast<std::size_t>(m_));
}

TorusGrid::~TorusGrid() = default;
TorusGrid::TorusGrid(TorusGrid&&) noexcept = default;
TorusGrid& TorusGrid::operator=(TorusGrid&&) noexcept = default;

double TorusGrid::wavenumber(int i) const { return kTwoPi * (i < m_ / 2 ? i : i - m_); }

namespace {

template <typename Transform>
void transform_2d(ComplexGrid& a, std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out,
                  Transform&& t) {
  const Eigen::Index m = a.rows();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    std::copy_n(&a(0, j), m, in.begin());
    t(out.data(), in.data(), m);
    std::copy_n(out.begin(), m, &a(0, j));
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) in[static_cast<std::size_t>(j)] = a(i, j);
    t(out.data(), in.data(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = out[static_cast<std::size_t>(j)];
  }
}

}  // namespace

void TorusGrid::forward(ComplexGrid& a) const {
  transform_2d(a, impl_->in, impl_->out,
               [&](std::complex<double>* d, const std::complex<double>* s, Eigen::Index n) { impl_->fft.fwd(d, s, n); });
}

void TorusGrid::inverse(ComplexGrid& a) const {
  transform_2d(a, impl_->in, impl_->out,
               [&](std::complex<double>* d, const std::complex<double>* s, Eigen::Index n) { impl_->fft.inv(d, s, n); });
  a *= cell_area();
}

ComplexGrid TorusGrid::derivative(const ComplexGrid& a, int axis) const {
  ComplexGrid h = a;
  forward(h);
  const std::complex<double> I(0.0, 1.0);
  for (int j = 0; j < m_; ++j)
    for (int i = 0; i < m_; ++i) {
      const int idx = axis == 0 ? i : j;
      h(i, j) *= (idx == m_ / 2) ? std::complex<double>(0.0) : I * wavenumber(idx);
    }
  inverse(h);
  return h;
}

ComplexGrid TorusGrid::dx(const ComplexGrid& a) const { return derivative(a, 0); }
ComplexGrid TorusGrid::dy(const ComplexGrid& a) const { return derivative(a, 1); }
RealGrid TorusGrid::dx(const RealGrid& a) const { return derivative(a.cast<std::complex<double>>(), 0).real(); }
RealGrid TorusGrid::dy(const RealGrid& a) const { return derivative(a.cast<std::complex<double>>(), 1).real(); }

RealGrid TorusGrid::laplacian(const RealGrid& a) const {
  ComplexGrid h = a.cast<std::complex<double>>();
  forward(h);
  for (int j = 0; j < m_; ++j)
    for (int i = 0; i < m_; ++i) {
      const double kx = wavenumber(i), ky = wavenumber(j);
      h(i, j) *= -(kx * kx + ky * ky);
    }
  inverse(h);
  return h.real();
}

void parallel_for(int count, const std::function<void(int)>& body) {
  int threads = 1;
  if (const char* env = std::getenv("VORTEXDYN_THREADS")) threads = std::max(1, std::atoi(env));
  threads = std::min(threads, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace vortex
