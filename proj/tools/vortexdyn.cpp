// Scenario runner for vortex dynamics on the flat torus.

#include <CLI11.hpp>
#include <iostream>

#include "vortex/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Vortex dynamics on the flat torus: reduced ODE, wave-equation PDE and their comparison"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a preset or a key = value scenario file");
  std::string target;
  std::optional<double> dt, t_end;
  std::optional<std::string> eps, mode, out;
  std::optional<int> grid;
  run->add_option("scenario", target, "Preset name or path to a scenario file")->required();
  run->add_option("--dt", dt, "ODE time step");
  run->add_option("--t-end", t_end, "Final time (comparison window in compare mode)");
  run->add_option("--eps", eps, "Core size(s), comma separated");
  run->add_option("--grid", grid, "PDE grid size M");
  run->add_option("--out", out, "Output directory");
  run->add_option("--mode", mode, "ode, pde or compare");

  app.add_subcommand("presets", "List built-in presets")->callback([] {
    for (const auto& name : vortex::preset_names()) std::cout << name << '\n';
  });

  CLI11_PARSE(app, argc, argv);
  if (!run->parsed()) return 0;

  vortex::ScenarioSpec spec;
  try {
    if (auto p = vortex::preset(target)) {
      spec = *p;
      spec.output_dir = std::filesystem::path("out") / target;
    } else {
      spec = vortex::load_scenario(target);
    }
    if (dt) spec.dt = *dt;
    if (t_end) spec.t_end = *t_end;
    if (eps) vortex::apply_setting(spec, "eps", *eps);
    if (grid) spec.grid = *grid;
    if (out) spec.output_dir = *out;
    if (mode) spec.mode = vortex::parse_mode(*mode);
  } catch (const vortex::SpecError& e) {
    std::cerr << "invalid spec: " << e.what() << '\n';
    return vortex::kExitInvalidSpec;
  }

  const vortex::RunResult result = vortex::run_scenario(spec);
  (result.exit_code == vortex::kExitOk ? std::cout : std::cerr) << result.message;
  for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
  return result.exit_code;
}
