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

#include "tcore/sim/config.h"

#include <fmt/format.h>

#include <cmath>

#include "tcore/common/error.h"

namespace tc::sim {

std::string_view scheme_name(Scheme scheme) { return scheme == Scheme::apic ? "apic" : "flip"; }

void SimConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("invalid simulation config: " + msg); };
  if (nx < 8 || ny < 8) fail(fmt::format("nx and ny must be at least 8 (got {}x{})", nx, ny));
  if (!(dx > 0) || !std::isfinite(dx)) fail(fmt::format("dx must be positive (got {})", dx));
  if (!(dt > 0) || !std::isfinite(dt)) fail(fmt::format("dt must be positive (got {})", dt));
  if (!std::isfinite(gravity.x) || !std::isfinite(gravity.y)) fail("gravity must be finite");
  if (!(flip_blend >= 0 && flip_blend <= 1)) {
    fail(fmt::format("flip_blend must lie in [0, 1] (got {})", flip_blend));
  }
  if (!(cfl_max > 0)) fail(fmt::format("cfl_max must be positive (got {})", cfl_max));
  if (!(solver_tol > 0 && solver_tol < 1)) {
    fail(fmt::format("solver.tolerance must lie in (0, 1) (got {})", solver_tol));
  }
  if (max_cg_iters < 1) fail(fmt::format("solver.max_iters must be at least 1 (got {})", max_cg_iters));
}

const std::vector<std::string>& sim_config_keys() {
  static const std::vector<std::string> keys{
      "nx",      "ny",       "dx",         "dt",      "gravity.x", "gravity.y", "scheme",
      "flip_blend", "cfl_max", "solver.tolerance", "solver.max_iters", "seed"};
  return keys;
}

namespace {

int get_count(const ConfigMap& c, std::string_view key, int fallback) {
  const auto v = c.get_int(key, fallback);
  if (v < 0 || v > 1'000'000) throw ConfigError(fmt::format("config key '{}' out of range: {}", key, v));
  return static_cast<int>(v);
}

}  // namespace

SimConfig sim_config_from(const ConfigMap& c) {
  SimConfig s;
  s.nx = get_count(c, "nx", s.nx);
  s.ny = get_count(c, "ny", s.ny);
  // A changed resolution keeps the 1 m domain unless dx is given.
  s.dx = c.get_float("dx", 1.0 / s.nx);
  s.dt = c.get_float("dt", s.dt);
  s.gravity.x = c.get_float("gravity.x", s.gravity.x);
  s.gravity.y = c.get_float("gravity.y", s.gravity.y);
  const auto scheme = c.get_string("scheme", "apic");
  if (scheme == "apic") {
    s.scheme = Scheme::apic;
  } else if (scheme == "flip") {
    s.scheme = Scheme::flip;
  } else {
    throw ConfigError(fmt::format("unknown scheme '{}'; available: apic, flip", scheme));
  }
  s.flip_blend = c.get_float("flip_blend", s.flip_blend);
  s.cfl_max = c.get_float("cfl_max", s.cfl_max);
  s.solver_tol = c.get_float("solver.tolerance", s.solver_tol);
  s.max_cg_iters = get_count(c, "solver.max_iters", s.max_cg_iters);
  const auto seed = c.get_int("seed", static_cast<std::int64_t>(s.seed));
  if (seed < 0) throw ConfigError(fmt::format("seed must be non-negative (got {})", seed));
  s.seed = static_cast<std::uint64_t>(seed);
  s.validate();
  return s;
}

ConfigMap to_config_map(const SimConfig& s) {
  ConfigMap c;
  c.set("nx", std::int64_t{s.nx});
  c.set("ny", std::int64_t{s.ny});
  c.set("dx", s.dx);
  c.set("dt", s.dt);
  c.set("gravity.x", s.gravity.x);
  c.set("gravity.y", s.gravity.y);
  c.set("scheme", std::string(scheme_name(s.scheme)));
  c.set("flip_blend", s.flip_blend);
  c.set("cfl_max", s.cfl_max);
  c.set("solver.tolerance", s.solver_tol);
  c.set("solver.max_iters", std::int64_t{s.max_cg_iters});
  c.set("seed", static_cast<std::int64_t>(s.seed));
  return c;
}

}  // namespace tc::sim
