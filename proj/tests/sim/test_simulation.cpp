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

#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>

#include "tcore/diagnostics/profiler.h"
#include "tcore/serialization/snapshot.h"
#include "tcore/sim/simulation.h"
#include "tcore/sim/transfer.h"

using namespace tc::sim;
using tc::ConfigMap;
using tc::Vec2;

namespace {

std::unique_ptr<Simulation> make_sim(const ConfigMap& cfg = {}, Scheme scheme = Scheme::apic) {
  if (scheme == Scheme::flip) return std::make_unique<FlipSimulation>(cfg);
  return std::make_unique<ApicSimulation>(cfg);
}

std::unique_ptr<Simulation> dam_break(Scheme scheme = Scheme::apic) {
  auto sim = make_sim({}, scheme);
  const auto& c = sim->config();
  sim->set_particles(seed_block(c, {{c.dx, c.dx}, {c.dx + 0.4, c.dx + 0.6}}, 4));
  return sim;
}

double max_speed(const ParticleSet& ps) {
  double m = 0;
  for (const auto& v : ps.velocity) m = std::max(m, std::hypot(v.x, v.y));
  return m;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "tcore_sim_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("hydrostatic tank stays at rest") {
  auto sim = make_sim();
  const auto& c = sim->config();
  sim->set_particles(seed_block(c, {{c.dx, c.dx}, {c.width() - c.dx, c.dx + 0.5}}, 4));
  for (int s = 0; s < 10; ++s) sim->step();
  INFO("max speed " << max_speed(sim->particles()));
  CHECK(max_speed(sim->particles()) <= 1e-3);
}

TEST_CASE("dam-break keeps every particle inside the tank") {
  for (auto scheme : {Scheme::apic, Scheme::flip}) {
    auto sim = dam_break(scheme);
    const auto count = sim->particles().size();
    const double lo = sim->config().dx, hi = sim->config().width() - sim->config().dx;
    for (int s = 0; s < 200; ++s) {
      sim->step();
      REQUIRE(sim->particles().size() == count);
    }
    for (const auto& p : sim->particles().position) {
      REQUIRE(std::isfinite(p.x));
      REQUIRE(std::isfinite(p.y));
      REQUIRE(p.x >= lo);
      REQUIRE(p.x <= hi);
      REQUIRE(p.y >= lo);
      REQUIRE(p.y <= hi);
    }
    CHECK(sim->step_index() == 200);
    CHECK(sim->state().time == Approx(200 * sim->config().dt));
  }
}

TEST_CASE("water spreads along the floor") {
  auto sim = dam_break();
  double front0 = 0;
  for (const auto& p : sim->particles().position) front0 = std::max(front0, p.x);
  for (int s = 0; s < 200; ++s) sim->step();
  double front = 0;
  for (const auto& p : sim->particles().position) front = std::max(front, p.x);
  CHECK(front > front0 + 0.2);
}

TEST_CASE("steps are deterministic") {
  auto a = dam_break();
  auto b = dam_break();
  for (int s = 0; s < 30; ++s) {
    a->step();
    b->step();
  }
  CHECK(a->particles().bitwise_equal(b->particles()));
  CHECK(particle_dump(a->particles()) == particle_dump(b->particles()));
}

TEST_CASE("state record round-trip") {
  auto sim = dam_break(Scheme::flip);
  for (int s = 0; s < 5; ++s) sim->step();
  const auto record = to_record(sim->state());
  const auto bytes = tc::serial::serialize(record);
  const auto back = state_from_record(tc::serial::deserialize(bytes));
  CHECK(to_record(back) == record);
  CHECK(back.config == sim->config());
  CHECK(back.particles.bitwise_equal(sim->particles()));
  CHECK(back.step_index == 5);
}

TEST_CASE("malformed state records are rejected") {
  auto sim = dam_break();
  auto record = to_record(sim->state());
  tc::serial::Record cut;
  for (const auto& f : record.fields()) {
    if (f.key != "particles") cut.set_field(f);
  }
  try {
    state_from_record(cut);
    FAIL("accepted a record without particles");
  } catch (const tc::serial::SerializationError& e) {
    CHECK(e.kind() == tc::serial::ErrorKind::malformed);
  }
}

TEST_CASE("restart from a snapshot is bitwise identical") {
  auto straight = dam_break();
  for (int s = 0; s < 100; ++s) straight->step();

  auto first = dam_break();
  for (int s = 0; s < 50; ++s) first->step();
  const auto path = scratch("half.tcsnap");
  write_state_snapshot(first->state(), path);

  auto resumed = make_sim();
  resumed->restore(read_state_snapshot(path));
  CHECK(resumed->step_index() == 50);
  for (int s = 0; s < 50; ++s) resumed->step();
  CHECK(particle_dump(resumed->particles()) == particle_dump(straight->particles()));
}

TEST_CASE("restore rejects a state of the other scheme") {
  auto flip = dam_break(Scheme::flip);
  auto apic = make_sim();
  CHECK_THROWS_AS(apic->restore(flip->state()), tc::ConfigError);
}

TEST_CASE("CFL violation stops the step before particles move") {
  ConfigMap cfg;
  cfg.set("gravity.y", 0.0);
  auto sim = make_sim(cfg);
  const auto& c = sim->config();
  auto ps = seed_block(c, {{0.3, 0.3}, {0.6, 0.6}}, 4);
  for (auto& v : ps.velocity) v = Vec2{40.0, 0.0};  // 40 * 0.002 * 32 = 2.56 cells
  sim->set_particles(ps);
  const auto before = sim->particles();
  CHECK_THROWS_AS(sim->step(), CflError);
  CHECK(sim->particles().bitwise_equal(before));
  CHECK(sim->step_index() == 0);
}

TEST_CASE("each phase is profiled under step") {
  auto sim = dam_break();
  tc::profile::Session session;
  {
    tc::profile::Session::Activation on(session);
    for (int s = 0; s < 3; ++s) sim->step();
  }
  const auto tree = session.tree();
  const auto* step = tree.child("step");
  REQUIRE(step != nullptr);
  CHECK(step->call_count == 3);
  std::vector<std::string> names;
  for (const auto& c : step->children) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"mark_fluid_cells", "p2g", "apply_body_forces",
                                          "enforce_boundaries", "pressure_project",
                                          "extrapolate_velocity", "g2p", "advect_particles"});
  CHECK(step->child("enforce_boundaries")->call_count == 6);
  CHECK(step->inclusive_ns >= step->children_ns());
}

TEST_CASE("fault path names the failing phase") {
  ConfigMap cfg;
  cfg.set("solver.max_iters", std::int64_t{1});
  cfg.set("solver.tolerance", 1e-14);
  auto sim = make_sim(cfg);
  const auto& c = sim->config();
  sim->set_particles(seed_block(c, {{c.dx, c.dx}, {c.dx + 0.4, c.dx + 0.6}}, 4));
  tc::profile::Session session;
  {
    tc::profile::Session::Activation on(session);
    CHECK_THROWS_AS(sim->step(), SolverError);
  }
  CHECK(session.fault_path() == std::vector<std::string>{"step", "pressure_project"});
}

TEST_CASE("simulation units in a registry") {
  tc::UnitRegistry registry;
  register_simulation_units(registry);
  CHECK(registry.list_units(Simulation::kInterface) == std::vector<std::string>{"apic", "flip"});
  ConfigMap cfg;
  cfg.set("nx", std::int64_t{16});
  cfg.set("ny", std::int64_t{24});
  cfg.set("dx", 1.0 / 16);
  auto sim = registry.create_as<Simulation>(Simulation::kInterface, "flip", cfg);
  CHECK(sim->unit_name() == "flip");
  CHECK(sim->config().ny == 24);
  CHECK(sim->state().grid.nx == 16);

  cfg.set("scheme", std::string("apic"));
  CHECK_THROWS_AS(registry.create(Simulation::kInterface, "flip", cfg), tc::ConfigError);
  CHECK_THROWS_WITH(registry.create(Simulation::kInterface, "pic", cfg),
                    Catch::Contains("apic") && Catch::Contains("flip"));
}

TEST_CASE("particle dump layout") {
  ParticleSet ps;
  ps.add({0.25, 0.5}, {1.0, -2.0});
  const auto bytes = particle_dump(ps);
  REQUIRE(bytes.size() == 8 + 8 + 4 * 8);
  CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "TCPART01");
  CHECK(bytes[8] == 1);
  for (int k = 9; k < 16; ++k) CHECK(bytes[static_cast<std::size_t>(k)] == 0);
  double x = 0;
  std::memcpy(&x, bytes.data() + 16, 8);
  CHECK(x == 0.25);
  double vy = 0;
  std::memcpy(&vy, bytes.data() + 40, 8);
  CHECK(vy == -2.0);
}
