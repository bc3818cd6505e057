#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "vortex/nlw_spectral.hpp"

namespace vortex {

class TrackingError : public std::runtime_error {
 public:
  TrackingError(const std::string& what, std::size_t frame) : std::runtime_error(what), frame_(frame) {}
  std::size_t frame() const { return frame_; }

 private:
  std::size_t frame_;
};

/// Per-vortex lifted paths assembled from frame-by-frame detections.
struct TrackSet {
  std::vector<int> degrees;
  /// paths[v][f]: lifted position of vortex v in frame f.
  std::vector<std::vector<LiftedPoint>> paths;
  /// First frame whose matching was ambiguous, if any.
  std::optional<std::size_t> unreliable_from;

  std::size_t frame_count() const { return paths.empty() ? 0 : paths.front().size(); }
};

/// Greedy nearest-neighbour matching within degree classes by periodic
/// distance. Each step moves the lift by the nearest-image displacement, so
/// paths crossing the periodic boundary stay continuous.
///
/// A match is flagged ambiguous when it is farther than max_displacement / 2
/// and a second candidate lies within twice that distance. Throws
/// TrackingError when a frame's count or degree multiset changes.
TrackSet track(const std::vector<std::vector<DetectedVortex>>& frames, double max_displacement = 0.1);

}  // namespace vortex
