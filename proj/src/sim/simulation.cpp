// Copyright 2026 The tcore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tcore/sim/simulation.h"

#include <fmt/format.h>

#include <bit>
#include <cstring>

#include "tcore/diagnostics/profiler.h"
#include "tcore/serialization/snapshot.h"
#include "tcore/sim/projection.h"
#include "tcore/sim/transfer.h"

namespace tc::sim {

using profile::scoped;
using serial::ErrorKind;
using serial::Record;
using serial::SerializationError;

Simulation::Simulation(const ConfigMap& config, Scheme scheme) {
  if (const auto s = config.find("scheme")) {
    const auto* name = std::get_if<std::string>(&*s);
    if (name == nullptr || *name != scheme_name(scheme)) {
      throw ConfigError(fmt::format("config selects scheme {} but the unit is '{}'", to_text(*s),
                                    scheme_name(scheme)));
    }
  }
  state_.config = sim_config_from(config);
  state_.config.scheme = scheme;
  state_.grid = MacGrid2(state_.config.nx, state_.config.ny, state_.config.dx);
}

void Simulation::set_particles(ParticleSet particles) {
  if (particles.velocity.size() != particles.size() || particles.affine.size() != particles.size()) {
    throw SimulationError("particle arrays have different lengths");
  }
  state_.particles = std::move(particles);
}

void Simulation::restore(SimState state) {
  if (state.config.scheme != state_.config.scheme) {
    throw ConfigError(fmt::format("snapshot was taken with scheme '{}', this simulation is '{}'",
                                  scheme_name(state.config.scheme),
                                  scheme_name(state_.config.scheme)));
  }
  state.config.validate();
  state_ = std::move(state);
}

StepReport Simulation::step() {
  return scoped("step", [&] {
    SimState& s = state_;
    const SimConfig& cfg = s.config;
    MacGrid2& grid = s.grid;
    StepReport report;
    scoped("mark_fluid_cells", [&] { mark_fluid_cells(s.particles, grid); });
    scoped("p2g", [&] { p2g(s.particles, grid); });
    scoped("apply_body_forces", [&] { apply_body_forces(grid, cfg); });
    scoped("enforce_boundaries", [&] { enforce_boundaries(grid); });
    report.solve = scoped("pressure_project", [&] { return pressure_project(grid, cfg); });
    scoped("extrapolate_velocity", [&] { extrapolate_velocity(grid); });
    scoped("enforce_boundaries", [&] { enforce_boundaries(grid); });

    report.max_speed = max_face_speed(grid);
    report.cfl = report.max_speed * cfg.dt / cfg.dx;
    if (report.cfl > cfg.cfl_max) {
      throw CflError(fmt::format(
          "CFL number {:.3f} exceeds cfl_max {} at step {} (max speed {:.4g} m/s); reduce dt to "
          "at most {:.4g}",
          report.cfl, cfg.cfl_max, s.step_index, report.max_speed,
          cfg.cfl_max * cfg.dx / report.max_speed));
    }
    scoped("g2p", [&] { g2p(grid, s.particles, cfg); });
    scoped("advect_particles", [&] { advect_particles(s.particles, grid, cfg.dt); });
    s.step_index += 1;
    s.time += cfg.dt;
    return report;
  });
}

void register_simulation_units(UnitRegistry& registry) {
  registry.register_unit({std::string(Simulation::kInterface), "apic",
                          make_factory<ApicSimulation>(), __FILE__});
  registry.register_unit({std::string(Simulation::kInterface), "flip",
                          make_factory<FlipSimulation>(), __FILE__});
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

constexpr std::string_view kStateFormat = "tcore.sim_state";

std::vector<double> flatten(const std::vector<Vec2>& v) {
  std::vector<double> out;
  out.reserve(2 * v.size());
  for (const Vec2 e : v) {
    out.push_back(e.x);
    out.push_back(e.y);
  }
  return out;
}

std::vector<double> flatten(const std::vector<Mat2>& v) {
  std::vector<double> out;
  out.reserve(4 * v.size());
  for (const Mat2& m : v) {
    out.insert(out.end(), {m.xx, m.xy, m.yx, m.yy});
  }
  return out;
}

[[noreturn]] void malformed(const std::string& msg) {
  throw SerializationError(ErrorKind::malformed, "simulation state: " + msg);
}

const std::vector<double>& sized(const Record& r, std::string_view key, std::size_t expected) {
  const auto& v = r.get_f64_array(key);
  if (v.size() != expected) {
    malformed(fmt::format("field '{}' has {} values, expected {}", key, v.size(), expected));
  }
  return v;
}

void put_array(Record& r, std::string key, const Array2<double>& a) { r.set(std::move(key), a.data()); }

void get_array(const Record& r, std::string_view key, Array2<double>& a) {
  a.data() = sized(r, key, a.size());
}

int get_dim(const Record& r, std::string_view key) {
  const auto v = r.get_i64(key);
  if (v < 1 || v > 1'000'000) malformed(fmt::format("field '{}' out of range: {}", key, v));
  return static_cast<int>(v);
}

}  // namespace

Record to_record(const SimState& s) {
  Record cfg;
  const SimConfig& c = s.config;
  cfg.set("nx", c.nx)
      .set("ny", c.ny)
      .set("dx", c.dx)
      .set("dt", c.dt)
      .set("gravity_x", c.gravity.x)
      .set("gravity_y", c.gravity.y)
      .set("scheme", scheme_name(c.scheme))
      .set("flip_blend", c.flip_blend)
      .set("cfl_max", c.cfl_max)
      .set("solver_tol", c.solver_tol)
      .set("max_cg_iters", c.max_cg_iters)
      .set("seed", std::bit_cast<std::int64_t>(c.seed));

  Record particles;
  particles.set("count", static_cast<std::int64_t>(s.particles.size()))
      .set("position", flatten(s.particles.position))
      .set("velocity", flatten(s.particles.velocity))
      .set("affine", flatten(s.particles.affine));

  Record grid;
  grid.set("nx", s.grid.nx).set("ny", s.grid.ny).set("dx", s.grid.dx);
  put_array(grid, "u", s.grid.u);
  put_array(grid, "v", s.grid.v);
  put_array(grid, "mass_u", s.grid.mass_u);
  put_array(grid, "mass_v", s.grid.mass_v);
  put_array(grid, "u_saved", s.grid.u_saved);
  put_array(grid, "v_saved", s.grid.v_saved);
  put_array(grid, "pressure", s.grid.pressure);
  serial::Bytes labels(s.grid.label.size());
  for (std::size_t k = 0; k < labels.size(); ++k) {
    labels[k] = static_cast<std::uint8_t>(s.grid.label.data()[k]);
  }
  grid.set("label", labels);

  Record out;
  out.set("format", kStateFormat)
      .set("config", cfg)
      .set("step_index", s.step_index)
      .set("time", s.time)
      .set("particles", particles)
      .set("grid", grid);
  return out;
}

SimState state_from_record(const Record& r) {
  if (r.get_string("format") != kStateFormat) malformed("not a simulation state record");
  SimState s;
  const Record& cfg = r.get_record("config");
  SimConfig& c = s.config;
  c.nx = get_dim(cfg, "nx");
  c.ny = get_dim(cfg, "ny");
  c.dx = cfg.get_f64("dx");
  c.dt = cfg.get_f64("dt");
  c.gravity = {cfg.get_f64("gravity_x"), cfg.get_f64("gravity_y")};
  const auto scheme = cfg.get_string("scheme");
  if (scheme == "apic") {
    c.scheme = Scheme::apic;
  } else if (scheme == "flip") {
    c.scheme = Scheme::flip;
  } else {
    malformed(fmt::format("unknown scheme '{}'", scheme));
  }
  c.flip_blend = cfg.get_f64("flip_blend");
  c.cfl_max = cfg.get_f64("cfl_max");
  c.solver_tol = cfg.get_f64("solver_tol");
  c.max_cg_iters = get_dim(cfg, "max_cg_iters");
  c.seed = std::bit_cast<std::uint64_t>(cfg.get_i64("seed"));
  try {
    c.validate();
  } catch (const ConfigError& e) {
    malformed(e.what());
  }

  s.step_index = r.get_i64("step_index");
  s.time = r.get_f64("time");

  const Record& pr = r.get_record("particles");
  const auto count = pr.get_i64("count");
  if (count < 0 || count > (std::int64_t{1} << 40)) malformed("bad particle count");
  const auto n = static_cast<std::size_t>(count);
  const auto& pos = sized(pr, "position", 2 * n);
  const auto& vel = sized(pr, "velocity", 2 * n);
  const auto& aff = sized(pr, "affine", 4 * n);
  for (std::size_t p = 0; p < n; ++p) {
    s.particles.add({pos[2 * p], pos[2 * p + 1]}, {vel[2 * p], vel[2 * p + 1]},
                    Mat2{aff[4 * p], aff[4 * p + 1], aff[4 * p + 2], aff[4 * p + 3]});
  }

  const Record& gr = r.get_record("grid");
  const int gnx = get_dim(gr, "nx"), gny = get_dim(gr, "ny");
  if (gnx != c.nx || gny != c.ny) malformed("grid size disagrees with config");
  s.grid = MacGrid2(gnx, gny, gr.get_f64("dx"));
  get_array(gr, "u", s.grid.u);
  get_array(gr, "v", s.grid.v);
  get_array(gr, "mass_u", s.grid.mass_u);
  get_array(gr, "mass_v", s.grid.mass_v);
  get_array(gr, "u_saved", s.grid.u_saved);
  get_array(gr, "v_saved", s.grid.v_saved);
  get_array(gr, "pressure", s.grid.pressure);
  const auto& labels = gr.get_bytes("label");
  if (labels.size() != s.grid.label.size()) malformed("label array has the wrong size");
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] > 2) malformed(fmt::format("bad cell label {}", labels[k]));
    s.grid.label.data()[k] = static_cast<CellLabel>(labels[k]);
  }
  return s;
}

void write_state_snapshot(const SimState& state, const std::filesystem::path& path) {
  serial::write_snapshot(to_record(state), path);
}

SimState read_state_snapshot(const std::filesystem::path& path) {
  const Record r = serial::read_snapshot(path);
  try {
    return state_from_record(r);
  } catch (const SerializationError& e) {
    throw SerializationError(e.kind(), path.string() + ": " + e.what());
  }
}

serial::Bytes particle_dump(const ParticleSet& particles) {
  serial::Bytes out;
  out.reserve(16 + 32 * particles.size());
  const std::string_view magic = "TCPART01";
  out.insert(out.end(), magic.begin(), magic.end());
  auto put64 = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  put64(particles.size());
  for (std::size_t p = 0; p < particles.size(); ++p) {
    put64(std::bit_cast<std::uint64_t>(particles.position[p].x));
    put64(std::bit_cast<std::uint64_t>(particles.position[p].y));
    put64(std::bit_cast<std::uint64_t>(particles.velocity[p].x));
    put64(std::bit_cast<std::uint64_t>(particles.velocity[p].y));
  }
  return out;
}

void write_particle_dump(const ParticleSet& particles, const std::filesystem::path& path) {
  serial::write_file_atomic(particle_dump(particles), path);
}

}  // namespace tc::sim
