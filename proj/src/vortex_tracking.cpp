#include "vortex/vortex_tracking.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <tuple>

namespace vortex {

namespace {

std::vector<int> sorted_degrees(const std::vector<DetectedVortex>& frame) {
  std::vector<int> d;
  for (const auto& v : frame) d.push_back(v.degree);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TrackSet track(const std::vector<std::vector<DetectedVortex>>& frames, double max_displacement) {
  TrackSet out;
  if (frames.empty()) return out;

  for (const auto& v : frames.front()) {
    out.degrees.push_back(v.degree);
    out.paths.push_back({v.position});
  }
  const auto reference = sorted_degrees(frames.front());

  for (std::size_t f = 1; f < frames.size(); ++f) {
    const auto& frame = frames[f];
    if (frame.size() != out.paths.size() || sorted_degrees(frame) != reference)
      throw TrackingError("frame " + std::to_string(f) + ": detection count or degrees changed (" +
                              std::to_string(frame.size()) + " vortices, expected " +
                              std::to_string(out.paths.size()) + ")",
                          f);

    // all same-degree (distance, track, detection) pairs, cheapest first
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t v = 0; v < out.paths.size(); ++v)
      for (std::size_t d = 0; d < frame.size(); ++d)
        if (frame[d].degree == out.degrees[v])
          pairs.emplace_back(periodic_distance(frame[d].position, out.paths[v].back()), v, d);
    std::sort(pairs.begin(), pairs.end());

    std::vector<bool> track_done(out.paths.size(), false), det_used(frame.size(), false);
    std::vector<std::size_t> chosen(out.paths.size());
    for (const auto& [dist, v, d] : pairs) {
      if (track_done[v] || det_used[d]) continue;
      track_done[v] = det_used[d] = true;
      chosen[v] = d;
      if (dist > 0.5 * max_displacement && !out.unreliable_from) {
        for (const auto& [dist2, v2, d2] : pairs)
          if (v2 == v && d2 != d && dist2 < 2.0 * dist) {
            out.unreliable_from = f;
            break;
          }
      }
    }
    for (std::size_t v = 0; v < out.paths.size(); ++v) {
      const LiftedPoint& last = out.paths[v].back();
      out.paths[v].push_back(last + wrap_displacement(frame[chosen[v]].position - last));
    }
  }
  return out;
}

}  // namespace vortex
