#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vortex/reduced_dynamics.hpp"
#include "vortex/vortex_tracking.hpp"

namespace vortex {

enum class RunMode { ode, pde, compare };

std::string to_string(RunMode mode);
RunMode parse_mode(const std::string& text);

/// Process exit codes of the scenario runner.
enum ExitCode : int {
  kExitOk = 0,
  kExitComparisonFailed = 1,
  kExitInvalidSpec = 2,
  kExitPdeCollision = 3,
  kExitBlowUp = 4,
};

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ScenarioSpec {
  std::string name = "custom";
  std::vector<Vec2> positions;
  std::vector<int> degrees;
  Eigen::Vector2i branch_offset = Eigen::Vector2i::Zero();
  double dt = 5e-6;
  /// Horizon; in compare mode this is the comparison window t_cmp.
  double t_end = 1.0;
  RunMode mode = RunMode::ode;
  std::vector<double> eps_list = {1.0 / 8, 1.0 / 16, 1.0 / 32};
  int grid = 256;
  std::filesystem::path output_dir = "out";
  /// ODE sample stride in steps; 0 selects one sample per 1e-3 time units.
  int output_stride = 0;
  /// Time between PDE frames (detection, diagnostics, comparison).
  double frame_interval = 0.005;
  /// PDE time step as a multiple of eps sqrt(kappa_eps).
  double pde_dt_factor = 0.1;
  /// The PDE step is halved (at most four times) until the relative
  /// Hamiltonian drift over the run is below this.
  double drift_tolerance = 1e-3;

  VortexConfig config() const;
};

/// Throws SpecError on inconsistent input.
void validate(const ScenarioSpec& spec);

/// Built-in scenarios: fig1-left, fig1-right, fig2-left, fig2-right (dipole
/// experiments with the captioned initial data) and checkerboard (a
/// four-vortex equilibrium).
std::vector<std::string> preset_names();
std::optional<ScenarioSpec> preset(const std::string& name);

/// Flat "key = value" text; '#' starts a comment. Keys: name, positions
/// ("x y; x y; ..."), degrees, branch_offset, dt, t_end, mode, eps, grid,
/// out, output_stride, frame_interval, pde_dt_factor,
/// drift_tolerance.
ScenarioSpec parse_scenario(const std::string& text);
ScenarioSpec load_scenario(const std::filesystem::path& path);

/// Applies one key/value pair (shared by files and command-line overrides).
void apply_setting(ScenarioSpec& spec, const std::string& key, const std::string& value);

/// Per-eps row of a comparison.
struct ComparisonRow {
  double eps = 0.0;
  double dev = 0.0;
  /// Time up to which PDE tracks were available.
  double t_covered = 0.0;
  double pde_dt = 0.0;
  double hamiltonian_drift = 0.0;
  /// Set when the PDE vortices collided (detections changed) before t_cmp.
  std::optional<double> pde_collision_time;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  bool complete = false;    // every PDE run covered the full window
  bool decreasing = false;  // dev strictly decreasing in the eps order given
};

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  std::vector<std::filesystem::path> files;
  std::optional<TrajectoryRecord> ode;
  std::optional<ComparisonReport> comparison;
};

/// Runs a scenario and writes its artifacts into spec.output_dir.
RunResult run_scenario(const ScenarioSpec& spec);

/// PDE-vs-ODE comparison over eps_list on the window [0, t_end].
ComparisonReport compare(const ScenarioSpec& spec, const GreenEvaluator& green,
                         std::vector<std::filesystem::path>* files = nullptr);

/// Writes the trajectory CSV: t, lifted x_j y_j, torus x_j y_j, vx_j vy_j,
/// conserved_energy, qx, qy.
void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& record);

}  // namespace vortex
