#include "vortex/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "vortex/harmonic_map.hpp"
#include "vortex/plotting.hpp"

namespace vortex {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw SpecError(key + ": not a number: '" + text + "'");
}

int to_int(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw SpecError(key + ": not an integer: '" + text + "'");
}

// Whitespace or comma separated list.
std::vector<std::string> tokens(std::string text) {
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream is(text);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

std::vector<double> doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& t : tokens(text)) out.push_back(to_double(key, t));
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string brief(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

ScenarioSpec dipole(const std::string& name, Vec2 a1, Vec2 a2, Eigen::Vector2i m) {
  ScenarioSpec s;
  s.name = name;
  s.positions = {a1, a2};
  s.degrees = {1, -1};
  s.branch_offset = m;
  return s;
}

int ode_stride(const ScenarioSpec& spec) {
  if (spec.output_stride > 0) return spec.output_stride;
  return std::max(1, static_cast<int>(std::lround(1e-3 / spec.dt)));
}

TrajectoryRecord run_ode(const ScenarioSpec& spec, int stride, const GreenEvaluator& green) {
  IntegrationOptions opts;
  opts.dt = spec.dt;
  opts.t_end = spec.t_end;
  opts.output_stride = stride;
  return integrate(spec.config(), opts, green);
}

std::vector<std::vector<LiftedPoint>> ode_paths(const TrajectoryRecord& rec) {
  std::vector<std::vector<LiftedPoint>> paths;
  if (rec.samples.empty()) return paths;
  paths.resize(rec.samples.front().positions.cols());
  for (const auto& s : rec.samples)
    for (Eigen::Index j = 0; j < s.positions.cols(); ++j) paths[j].push_back(s.positions.col(j));
  return paths;
}

constexpr int kMaxDtHalvings = 4;

// One PDE run with detection every frame; stops at the first frame whose
// detections no longer match the initial vortex set. The step starts at
// pde_dt_factor eps sqrt(kappa) and is halved until the relative Hamiltonian
// drift stays below drift_tolerance.
struct PdeRun {
  std::vector<double> times;
  TrackSet tracks;
  std::optional<double> collision_time;
  std::optional<std::size_t> collision_frame;
  double dt = 0.0;
  double drift = 0.0;
  std::string diagnostics;
};

PdeRun run_pde_once(const ScenarioSpec& spec, const FieldState& u0, double factor, double t_end) {
  const double eps = u0.eps;
  const long per_frame =
      std::max(1L, std::lround(std::ceil(spec.frame_interval / (factor * eps * std::sqrt(u0.kappa)) - 1e-9)));
  const long frames = std::lround(std::floor(t_end / spec.frame_interval + 1e-9));

  PdeRun out;
  out.dt = spec.frame_interval / static_cast<double>(per_frame);
  NlwIntegrator pde(u0, out.dt);
  std::ostringstream diag;
  const double h0 = hamiltonian(u0);
  std::vector<std::vector<DetectedVortex>> detections;
  for (long f = 0; f <= frames; ++f) {
    if (f > 0) pde.advance(per_frame);
    const FieldState s = pde.state();
    const double t = f * spec.frame_interval;
    auto found = detect_vortices(s);
    const Vec2 q = momentum(s);
    const double h = hamiltonian(s);
    out.drift = std::max(out.drift, std::abs(h - h0) / std::abs(h0));
    diag << fmt(eps) << ',' << fmt(t) << ',' << fmt(energy(s)) << ',' << fmt(q(0)) << ',' << fmt(q(1)) << ','
         << fmt(h) << ',' << found.size() << '\n';
    detections.push_back(std::move(found));
    try {
      out.tracks = track(detections);
    } catch (const TrackingError& e) {
      detections.pop_back();
      out.tracks = track(detections);
      out.collision_time = t;
      out.collision_frame = e.frame();
      break;
    }
    out.times.push_back(t);
  }
  out.diagnostics = diag.str();
  return out;
}

PdeRun run_pde(const ScenarioSpec& spec, double eps, double t_end, const GreenEvaluator& green, std::ostream* diag) {
  const FieldState u0 = initial_data(spec.config(), eps, green, spec.grid);
  double factor = spec.pde_dt_factor;
  PdeRun run = run_pde_once(spec, u0, factor, t_end);
  for (int k = 0; k < kMaxDtHalvings && run.drift >= spec.drift_tolerance; ++k) {
    factor /= 2;
    run = run_pde_once(spec, u0, factor, t_end);
  }
  if (diag) *diag << run.diagnostics;
  return run;
}

void write_tracks_csv(const std::filesystem::path& path, const PdeRun& run) {
  auto os = open_csv(path);
  os << 't';
  for (std::size_t v = 0; v < run.tracks.paths.size(); ++v) os << ",x" << v + 1 << ",y" << v + 1;
  os << '\n';
  for (std::size_t f = 0; f < run.times.size(); ++f) {
    os << fmt(run.times[f]);
    for (const auto& p : run.tracks.paths) os << ',' << fmt(p[f](0)) << ',' << fmt(p[f](1));
    os << '\n';
  }
}

const char* kDiagnosticsHeader = "eps,t,energy,momentum_x,momentum_y,hamiltonian,vortices\n";

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::ode: return "ode";
    case RunMode::pde: return "pde";
    case RunMode::compare: return "compare";
  }
  return "?";
}

RunMode parse_mode(const std::string& text) {
  if (text == "ode") return RunMode::ode;
  if (text == "pde") return RunMode::pde;
  if (text == "compare") return RunMode::compare;
  throw SpecError("mode must be ode, pde or compare, got '" + text + "'");
}

VortexConfig ScenarioSpec::config() const {
  try {
    return make_config(positions, degrees, branch_offset);
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
}

void validate(const ScenarioSpec& spec) {
  if (spec.positions.empty()) throw SpecError("no vortices given");
  spec.config();
  if (!(spec.dt > 0.0)) throw SpecError("dt must be positive");
  if (!(spec.t_end > 0.0)) throw SpecError("t_end must be positive");
  if (spec.output_stride < 0) throw SpecError("output_stride must be non-negative");
  if (spec.mode == RunMode::ode) return;

  if (spec.grid < 4 || spec.grid % 2 != 0) throw SpecError("grid must be an even integer >= 4");
  if (!(spec.frame_interval > 0.0)) throw SpecError("frame_interval must be positive");
  if (!(spec.pde_dt_factor > 0.0)) throw SpecError("pde_dt_factor must be positive");
  if (!(spec.drift_tolerance > 0.0)) throw SpecError("drift_tolerance must be positive");
  if (spec.eps_list.empty()) throw SpecError("eps list is empty");
  for (double e : spec.eps_list) {
    if (!(e > 0.0 && e < 1.0)) throw SpecError("eps values must lie in (0, 1)");
    if (e * spec.grid < 8.0) throw SpecError("eps * grid must be at least 8 (eps = " + fmt(e) + ")");
  }
  if (spec.mode == RunMode::compare) {
    if (spec.eps_list.size() < 2) throw SpecError("compare needs at least two eps values");
    for (std::size_t i = 1; i < spec.eps_list.size(); ++i)
      if (!(spec.eps_list[i] < spec.eps_list[i - 1])) throw SpecError("compare eps values must decrease");
    const double ratio = spec.frame_interval / spec.dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-6 * ratio)
      throw SpecError("frame_interval must be a whole number of ODE steps in compare mode");
  }
}

std::vector<std::string> preset_names() { return {"fig1-left", "fig1-right", "fig2-left", "fig2-right", "checkerboard"}; }

std::optional<ScenarioSpec> preset(const std::string& name) {
  if (name == "fig1-left") return dipole(name, {0.3, 0.0}, {0.7, 0.0}, {0, 0});
  if (name == "fig1-right") return dipole(name, {0.3, 0.0}, {0.7, 0.0}, {1, 0});
  if (name == "fig2-left") return dipole(name, {0.48, 0.0}, {0.52, 0.0}, {0, 0});
  if (name == "fig2-right") return dipole(name, {0.48, 0.0}, {0.52, 0.0}, {0, 2});
  if (name == "checkerboard") {
    ScenarioSpec s;
    s.name = name;
    s.positions = {{0.0, 0.0}, {0.5, 0.5}, {0.5, 0.0}, {0.0, 0.5}};
    s.degrees = {1, 1, -1, -1};
    return s;
  }
  return std::nullopt;
}

void apply_setting(ScenarioSpec& spec, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in), value = trim(value_in);
  if (key == "name") {
    spec.name = value;
  } else if (key == "positions") {
    spec.positions.clear();
    std::istringstream is(value);
    for (std::string item; std::getline(is, item, ';');) {
      if (trim(item).empty()) continue;
      const auto xy = doubles(key, item);
      if (xy.size() != 2) throw SpecError("positions: each entry needs two coordinates: '" + trim(item) + "'");
      spec.positions.emplace_back(xy[0], xy[1]);
    }
  } else if (key == "degrees") {
    spec.degrees.clear();
    for (const auto& t : tokens(value)) spec.degrees.push_back(to_int(key, t));
  } else if (key == "branch_offset" || key == "m") {
    const auto t = tokens(value);
    if (t.size() != 2) throw SpecError("branch_offset needs two integers");
    spec.branch_offset = {to_int(key, t[0]), to_int(key, t[1])};
  } else if (key == "dt") {
    spec.dt = to_double(key, value);
  } else if (key == "t_end" || key == "t-end") {
    spec.t_end = to_double(key, value);
  } else if (key == "mode") {
    spec.mode = parse_mode(value);
  } else if (key == "eps" || key == "eps_list") {
    spec.eps_list = doubles(key, value);
  } else if (key == "grid") {
    spec.grid = to_int(key, value);
  } else if (key == "out" || key == "output_dir") {
    spec.output_dir = value;
  } else if (key == "output_stride") {
    spec.output_stride = to_int(key, value);
  } else if (key == "frame_interval") {
    spec.frame_interval = to_double(key, value);
  } else if (key == "drift_tolerance") {
    spec.drift_tolerance = to_double(key, value);
  } else if (key == "pde_dt_factor") {
    spec.pde_dt_factor = to_double(key, value);
  } else {
    throw SpecError("unknown key '" + key + "'");
  }
}

ScenarioSpec parse_scenario(const std::string& text) {
  ScenarioSpec spec;
  std::istringstream is(text);
  int line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError("line " + std::to_string(line_no) + ": expected key = value");
    apply_setting(spec, line.substr(0, eq), line.substr(eq + 1));
  }
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw SpecError("cannot read " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_scenario(buf.str());
}

void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& record) {
  auto os = open_csv(path);
  const Eigen::Index n = record.final_state.positions.cols();
  os << 't';
  for (Eigen::Index j = 1; j <= n; ++j) os << ",x" << j << ",y" << j;
  for (Eigen::Index j = 1; j <= n; ++j) os << ",x" << j << "_torus,y" << j << "_torus";
  for (Eigen::Index j = 1; j <= n; ++j) os << ",vx" << j << ",vy" << j;
  os << ",conserved_energy,qx,qy\n";
  for (const auto& s : record.samples) {
    os << fmt(s.t);
    for (Eigen::Index j = 0; j < n; ++j) os << ',' << fmt(s.positions(0, j)) << ',' << fmt(s.positions(1, j));
    const PointSet torus = s.torus_positions();
    for (Eigen::Index j = 0; j < n; ++j) os << ',' << fmt(torus(0, j)) << ',' << fmt(torus(1, j));
    for (Eigen::Index j = 0; j < n; ++j) os << ',' << fmt(s.velocities(0, j)) << ',' << fmt(s.velocities(1, j));
    os << ',' << fmt(s.conserved_energy) << ',' << fmt(s.q(0)) << ',' << fmt(s.q(1)) << '\n';
  }
}

ComparisonReport compare(const ScenarioSpec& spec, const GreenEvaluator& green,
                         std::vector<std::filesystem::path>* files) {
  validate(spec);
  const int stride = static_cast<int>(std::lround(spec.frame_interval / spec.dt));
  const TrajectoryRecord ode = run_ode(spec, stride, green);

  std::ofstream diag;
  if (files) {
    files->push_back(spec.output_dir / "diagnostics.csv");
    diag = open_csv(files->back());
    diag << kDiagnosticsHeader;
  }

  ComparisonReport report;
  report.complete = true;
  for (std::size_t e = 0; e < spec.eps_list.size(); ++e) {
    const double eps = spec.eps_list[e];
    const PdeRun pde = run_pde(spec, eps, spec.t_end, green, files ? &diag : nullptr);
    if (files) {
      files->push_back(spec.output_dir / ("pde_tracks_eps" + std::to_string(e + 1) + ".csv"));
      write_tracks_csv(files->back(), pde);
    }

    // pair each track with the nearest same-degree ODE vortex at t = 0
    const PointSet& a0 = ode.samples.front().positions;
    std::vector<Eigen::Index> match(pde.tracks.paths.size());
    std::vector<bool> used(a0.cols(), false);
    for (std::size_t v = 0; v < pde.tracks.paths.size(); ++v) {
      double best = HUGE_VAL;
      for (Eigen::Index j = 0; j < a0.cols(); ++j) {
        if (used[j] || spec.degrees[j] != pde.tracks.degrees[v]) continue;
        const double d = periodic_distance(pde.tracks.paths[v].front(), a0.col(j));
        if (d < best) best = d, match[v] = j;
      }
      if (best == HUGE_VAL) throw TrackingError("frame 0: PDE vortices do not match the initial configuration", 0);
      used[match[v]] = true;
    }

    ComparisonRow row;
    row.eps = eps;
    row.pde_collision_time = pde.collision_time;
    row.pde_dt = pde.dt;
    row.hamiltonian_drift = pde.drift;
    const std::size_t frames = std::min(pde.times.size(), ode.samples.size());
    for (std::size_t f = 0; f < frames; ++f)
      for (std::size_t v = 0; v < pde.tracks.paths.size(); ++v)
        row.dev = std::max(row.dev, periodic_distance(pde.tracks.paths[v][f], ode.samples[f].positions.col(match[v])));
    row.t_covered = frames ? pde.times[frames - 1] : 0.0;
    if (row.t_covered < spec.t_end - 1e-9) report.complete = false;
    report.rows.push_back(row);
  }
  report.decreasing = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    if (!(report.rows[i].dev < report.rows[i - 1].dev)) report.decreasing = false;

  if (files) {
    files->push_back(spec.output_dir / "convergence.csv");
    auto os = open_csv(files->back());
    os << "eps,dev,t_covered,pde_collision_time\n";
    for (const auto& r : report.rows)
      os << fmt(r.eps) << ',' << fmt(r.dev) << ',' << fmt(r.t_covered) << ','
         << (r.pde_collision_time ? fmt(*r.pde_collision_time) : "") << '\n';
  }
  return report;
}

RunResult run_scenario(const ScenarioSpec& spec) {
  RunResult result;
  try {
    validate(spec);
  } catch (const SpecError& e) {
    result.exit_code = kExitInvalidSpec;
    result.message = std::string("invalid spec: ") + e.what();
    return result;
  }
  std::filesystem::create_directories(spec.output_dir);
  const GreenEvaluator green = build_green();
  std::ostringstream msg;

  try {
    if (spec.mode == RunMode::compare) {
      ComparisonReport rep = compare(spec, green, &result.files);
      for (const auto& r : rep.rows) {
        msg << "eps " << brief(r.eps) << ": dev " << brief(r.dev) << " up to t = " << brief(r.t_covered);
        if (r.pde_collision_time) msg << " (PDE vortices collided at t = " << brief(*r.pde_collision_time) << ")";
        msg << '\n';
      }
      if (!rep.complete) {
        result.exit_code = kExitPdeCollision;
        msg << "PDE collision before t_cmp = " << brief(spec.t_end) << '\n';
      } else if (!rep.decreasing) {
        result.exit_code = kExitComparisonFailed;
        msg << "dev(eps) is not strictly decreasing\n";
      }
      result.comparison = std::move(rep);
    }

    const TrajectoryRecord ode = run_ode(spec, ode_stride(spec), green);
    result.files.push_back(spec.output_dir / "trajectory.csv");
    write_trajectory_csv(result.files.back(), ode);
    result.files.push_back(spec.output_dir / "trajectories.svg");
    write_trajectory_svg(result.files.back(), spec.name + " (reduced dynamics)", ode_paths(ode), spec.degrees);
    if (spec.name.rfind("fig2", 0) == 0 && !ode.samples.empty()) {
      std::vector<double> t;
      Series x1{"x1", {}}, y1{"y1", {}}, x2{"x2", {}}, y2{"y2", {}};
      for (const auto& s : ode.samples) {
        t.push_back(s.t);
        x1.values.push_back(s.positions(0, 0));
        y1.values.push_back(s.positions(1, 0));
        x2.values.push_back(s.positions(0, 1));
        y2.values.push_back(s.positions(1, 1));
      }
      result.files.push_back(spec.output_dir / "coordinates.svg");
      write_series_svg(result.files.back(), spec.name + " coordinates", t, {x1, y1, x2, y2});
    }
    if (ode.reason == Termination::collision)
      msg << "ODE collision at t = " << brief(ode.final_state.t) << " after " << ode.steps << " steps\n";
    else
      msg << "ODE completed at t = " << brief(ode.final_state.t) << '\n';
    result.ode = ode;

    if (spec.mode == RunMode::pde) {
      const double eps = spec.eps_list.front();
      result.files.push_back(spec.output_dir / "diagnostics.csv");
      auto diag = open_csv(result.files.back());
      diag << kDiagnosticsHeader;
      const PdeRun pde = run_pde(spec, eps, spec.t_end, green, &diag);
      result.files.push_back(spec.output_dir / "pde_tracks.csv");
      write_tracks_csv(result.files.back(), pde);
      result.files.push_back(spec.output_dir / "pde_trajectories.svg");
      write_trajectory_svg(result.files.back(), spec.name + " (PDE, eps = " + fmt(eps) + ")", pde.tracks.paths,
                           pde.tracks.degrees);
      msg << "PDE dt " << brief(pde.dt) << ", relative Hamiltonian drift " << brief(pde.drift) << '\n';
      if (pde.collision_time) {
        result.exit_code = kExitPdeCollision;
        msg << "PDE collision at t = " << brief(*pde.collision_time) << " (frame " << *pde.collision_frame << ")\n";
      } else {
        msg << "PDE completed at t = " << brief(pde.times.back()) << '\n';
      }
    }
  } catch (const BlowUpError& e) {
    result.exit_code = kExitBlowUp;
    msg << "blow-up: " << e.what() << '\n';
  } catch (const PhaseClosureError& e) {
    result.exit_code = kExitInvalidSpec;
    msg << "invalid spec: " << e.what() << '\n';
  } catch (const SpecError& e) {
    result.exit_code = kExitInvalidSpec;
    msg << "invalid spec: " << e.what() << '\n';
  }
  result.message = msg.str();
  return result;
}

}  // namespace vortex
