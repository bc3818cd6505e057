#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vortex/torus.hpp"

namespace vortex {

/// Paths drawn on the fundamental domain [0,1)^2 of the torus. Lifted paths
/// are reduced to torus images and broken where they cross the boundary.
/// Initial positions are marked '+' for degree +1 and 'x' for degree -1.
void write_trajectory_svg(const std::filesystem::path& path, const std::string& title,
                          const std::vector<std::vector<LiftedPoint>>& paths, const std::vector<int>& degrees);

struct Series {
  std::string label;
  std::vector<double> values;
};

/// Line chart of several series against t.
void write_series_svg(const std::filesystem::path& path, const std::string& title, const std::vector<double>& t,
                      const std::vector<Series>& series);

}  // namespace vortex
