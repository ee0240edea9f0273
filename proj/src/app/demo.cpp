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

#include "tcore/app/demo.h"

#include <fmt/format.h>

#include <cmath>
#include <mutex>

#include "tcore/sim/simulation.h"
#include "tcore/sim/transfer.h"

namespace tc::app {
namespace {

int particles_per_cell(const ConfigMap& resolved) {
  const auto ppc = resolved.get_int("particles_per_cell", 4);
  if (ppc < 1 || ppc > 64) {
    throw ConfigError(fmt::format("particles_per_cell must be in [1, 64] (got {})", ppc));
  }
  return static_cast<int>(ppc);
}

double positive(const ConfigMap& resolved, std::string_view key, double fallback) {
  const double v = resolved.get_float(key, fallback);
  if (!(v > 0)) throw ConfigError(fmt::format("{} must be positive (got {})", key, v));
  return v;
}

}  // namespace

std::string_view DamBreakDemo::description() const {
  return "column of water collapsing from the lower left corner";
}

ConfigMap DamBreakDemo::defaults() const {
  ConfigMap m;
  m.set("particles_per_cell", std::int64_t{4});
  m.set("fill.width", 0.4);
  m.set("fill.height", 0.6);
  return m;
}

sim::ParticleSet DamBreakDemo::seed(const sim::SimConfig& config, const ConfigMap& resolved) const {
  const double w = positive(resolved, "fill.width", 0.4);
  const double h = positive(resolved, "fill.height", 0.6);
  const double dx = config.dx;
  return sim::seed_block(config, {{dx, dx}, {dx + w, dx + h}}, particles_per_cell(resolved));
}

std::string_view HydrostaticDemo::description() const { return "tank of water at rest"; }

ConfigMap HydrostaticDemo::defaults() const {
  ConfigMap m;
  m.set("particles_per_cell", std::int64_t{4});
  m.set("fill.height", 0.5);
  return m;
}

sim::ParticleSet HydrostaticDemo::seed(const sim::SimConfig& config,
                                       const ConfigMap& resolved) const {
  const double h = positive(resolved, "fill.height", 0.5);
  const double dx = config.dx;
  return sim::seed_block(config, {{dx, dx}, {config.width() - dx, dx + h}},
                         particles_per_cell(resolved));
}

std::string_view RotationDemo::description() const {
  return "disc of water in rigid rotation, no gravity";
}

ConfigMap RotationDemo::defaults() const {
  ConfigMap m;
  m.set("particles_per_cell", std::int64_t{4});
  m.set("rotation.radius", 0.3);
  m.set("rotation.omega", 2.0);
  m.set("gravity.x", 0.0);
  m.set("gravity.y", 0.0);
  return m;
}

sim::ParticleSet RotationDemo::seed(const sim::SimConfig& config, const ConfigMap& resolved) const {
  const double r = positive(resolved, "rotation.radius", 0.3);
  const double omega = resolved.get_float("rotation.omega", 2.0);
  const Vec2 c{0.5 * config.width(), 0.5 * config.height()};
  const auto block = sim::seed_block(config, {{c.x - r, c.y - r}, {c.x + r, c.y + r}},
                                     particles_per_cell(resolved));
  const Mat2 grad = config.scheme == sim::Scheme::apic ? Mat2{0.0, -omega, omega, 0.0} : Mat2{};
  sim::ParticleSet disc;
  for (std::size_t p = 0; p < block.size(); ++p) {
    const Vec2 d = block.position[p] - c;
    if (d.x * d.x + d.y * d.y > r * r) continue;
    disc.add(block.position[p], Vec2{-omega * d.y, omega * d.x}, grad);
  }
  return disc;
}

void register_builtin_units(UnitRegistry& registry) {
  sim::register_simulation_units(registry);
  const std::string demo(Demo::kInterface);
  registry.register_unit({demo, "dam-break", make_factory<DamBreakDemo>(), __FILE__});
  registry.register_unit({demo, "hydrostatic", make_factory<HydrostaticDemo>(), __FILE__});
  registry.register_unit({demo, "rotation", make_factory<RotationDemo>(), __FILE__});
}

const UnitRegistry& builtin_registry() {
  static std::once_flag once;
  std::call_once(once, [] {
    auto& global = UnitRegistry::global();
    register_builtin_units(global);
    global.freeze();
  });
  return UnitRegistry::global();
}

}  // namespace tc::app
