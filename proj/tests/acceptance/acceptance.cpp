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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "oracles/oracles.h"
#include "tcore/app/cli.h"
#include "tcore/app/demo.h"
#include "tcore/app/run.h"
#include "tcore/diagnostics/profiler.h"
#include "tcore/math/layout_benchmark.h"
#include "tcore/media/image.h"
#include "tcore/serialization/snapshot.h"
#include "tcore/sim/poisson.h"
#include "tcore/sim/projection.h"
#include "tcore/sim/simulation.h"
#include "tcore/sim/transfer.h"

namespace fs = std::filesystem;
using namespace tc;

namespace {

// Tolerances and budgets.
constexpr std::size_t kBenchElements = 1'000'000;
constexpr int kBenchPasses = 10;
constexpr double kBenchMinRatio = 1.0;
constexpr double kBenchBudgetSeconds = 30;

constexpr int kPoissonN = 64;
constexpr double kPoissonSolveTol = 1e-12;
constexpr double kPoissonMatchTol = 1e-8;
constexpr double kIterationGrowthLimit = 2.0;
constexpr double kPoissonBudgetSeconds = 60;

constexpr double kDivergenceSlack = 1e-12;
constexpr double kAffineTol = 1e-10;
constexpr int kHydrostaticSteps = 10;
constexpr double kHydrostaticMaxSpeed = 1e-3;
constexpr double kRestartBudgetSeconds = 60;

constexpr int kRandomStates = 200;
constexpr int kFuzzStreams = 10'000;

constexpr int kProfilerScripts = 200;
constexpr double kSleepMs = 50;
constexpr double kSleepUpperMs = 75;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "tcore_acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& e : v) e = d(rng);
  return v;
}

Outcome layout_benchmark() {
  const auto t0 = Clock::now();
  const auto r = run_layout_benchmark(kBenchElements, kBenchPasses, 42);
  const double secs = seconds_since(t0);
  const bool pass = r.speedup_ratio > kBenchMinRatio && r.checksums_match() &&
                    secs < kBenchBudgetSeconds;
  return {pass, fmt::format("speedup {:.3f}x (reference range 1.8-2.3x, not enforced), "
                            "checksums {}, {:.1f} s",
                            r.speedup_ratio, r.checksums_match() ? "match" : "differ", secs)};
}

int mgpcg_iterations(int n) {
  const auto sys = sim::PoissonSystem::all_unknown(n, n);
  sim::SolveStats stats;
  sim::solve(sys, random_vector(sys.size(), 7), {kPoissonSolveTol, 2000, sim::Preconditioner::multigrid},
             &stats);
  return stats.iterations;
}

Outcome mgpcg() {
  const auto t0 = Clock::now();
  const auto sys = sim::PoissonSystem::all_unknown(kPoissonN, kPoissonN);
  const auto b = random_vector(sys.size(), 2024);
  sim::SolveStats stats;
  const auto x = sim::solve(sys, b, {kPoissonSolveTol, 2000, sim::Preconditioner::multigrid}, &stats);
  const auto ref = oracle::plain_cg(kPoissonN, kPoissonN, b, kPoissonSolveTol, 10'000);
  double diff = 0;
  for (std::size_t k = 0; k < x.size(); ++k) diff = std::max(diff, std::abs(x[k] - ref.x[k]));
  const int it32 = mgpcg_iterations(32), it128 = mgpcg_iterations(128);
  const double growth = static_cast<double>(it128) / it32;
  const double secs = seconds_since(t0);
  const bool pass = diff <= kPoissonMatchTol && stats.iterations < ref.iterations &&
                    growth < kIterationGrowthLimit && secs < kPoissonBudgetSeconds;
  return {pass, fmt::format("|x - x_cg|inf {:.2e}, iterations {} vs plain CG {}, "
                            "32^2 {} -> 128^2 {} ({:.2f}x), {:.1f} s",
                            diff, stats.iterations, ref.iterations, it32, it128, growth, secs)};
}

Outcome projection() {
  sim::SimConfig c;
  const auto ps = sim::seed_block(c, {{c.dx, c.dx}, {c.dx + 0.4, c.dx + 0.6}}, 4);
  sim::MacGrid2 g(c.nx, c.ny, c.dx);
  sim::mark_fluid_cells(ps, g);
  sim::p2g(ps, g);
  sim::apply_body_forces(g, c);
  sim::enforce_boundaries(g);
  double b_inf = 0;
  for (double e : sim::pressure_rhs(g, c)) b_inf = std::max(b_inf, std::abs(e));
  sim::pressure_project(g, c);
  const double div = sim::max_fluid_divergence(g);
  const double bound = c.solver_tol * b_inf + kDivergenceSlack;
  return {div <= bound, fmt::format("max divergence {:.3e} <= {:.3e}", div, bound)};
}

Outcome apic_affine() {
  sim::SimConfig c;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Vec2 a{u(rng), u(rng)};
  const Mat2 grad{u(rng), u(rng), u(rng), u(rng)};
  auto ps = sim::seed_block(c, {{0.2, 0.2}, {0.8, 0.7}}, 4);
  for (std::size_t p = 0; p < ps.size(); ++p) {
    ps.velocity[p] = a + grad * ps.position[p];
    ps.affine[p] = grad;
  }
  const auto before = ps;
  sim::MacGrid2 g(c.nx, c.ny, c.dx);
  sim::p2g(ps, g);
  sim::g2p(g, ps, c);
  double ev = 0, ec = 0;
  for (std::size_t p = 0; p < ps.size(); ++p) {
    const auto dv = ps.velocity[p] - before.velocity[p];
    ev = std::max({ev, std::abs(dv.x), std::abs(dv.y)});
    const auto& m = ps.affine[p];
    ec = std::max({ec, std::abs(m.xx - grad.xx), std::abs(m.xy - grad.xy),
                   std::abs(m.yx - grad.yx), std::abs(m.yy - grad.yy)});
  }
  return {ev <= kAffineTol && ec <= kAffineTol,
          fmt::format("{} particles, velocity error {:.2e}, C error {:.2e}", ps.size(), ev, ec)};
}

Outcome hydrostatic() {
  app::ConfigLayers layers;
  layers.flags.set("run.demo", std::string("hydrostatic"));
  const auto resolved = app::resolve_run_config(layers, app::builtin_registry());
  auto s = app::create_demo_simulation(resolved, app::builtin_registry());
  for (int k = 0; k < kHydrostaticSteps; ++k) s->step();
  double vmax = 0;
  for (const auto& v : s->particles().velocity) vmax = std::max(vmax, std::hypot(v.x, v.y));
  return {s->config().nx == 32 && vmax <= kHydrostaticMaxSpeed,
          fmt::format("{}x{} tank, {} steps, max speed {:.2e} m/s", s->config().nx, s->config().ny,
                      kHydrostaticSteps, vmax)};
}

int quiet_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int status = app::run_cli(args, out, err);
  if (out_text != nullptr) *out_text = out.str();
  return status;
}

Outcome snapshot_restart() {
  const auto t0 = Clock::now();
  const auto full = scratch("full"), half = scratch("half");
  const int s1 = quiet_cli({"run", "--demo", "dam-break", "--frames", "100", "--no-profile",
                            "--out", full.string()});
  const int s2 = quiet_cli({"run", "--demo", "dam-break", "--frames", "50", "--snapshot-every",
                            "50", "--no-profile", "--out", half.string()});
  const int s3 = quiet_cli({"run", "--restore", (half / app::snapshot_name(50)).string(),
                            "--frames", "50", "--no-profile", "--out", half.string()});
  if (s1 != 0 || s2 != 0 || s3 != 0) {
    return {false, fmt::format("run statuses {} {} {}", s1, s2, s3)};
  }
  const auto a = serial::read_file(full / app::frame_name(100, "tcpart"));
  const auto b = serial::read_file(half / app::frame_name(100, "tcpart"));
  const double secs = seconds_since(t0);
  return {a == b && secs < kRestartBudgetSeconds,
          fmt::format("final particle dumps ({} bytes) {}, {:.1f} s", a.size(),
                      a == b ? "identical" : "differ", secs)};
}

sim::SimState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  auto pick = [&]() -> double {
    switch (rng() % 12) {
      case 0: return -0.0;
      case 1: return std::numeric_limits<double>::quiet_NaN();
      case 2: return std::numeric_limits<double>::infinity();
      case 3: return std::numeric_limits<double>::denorm_min();
      default: return u(rng);
    }
  };
  sim::SimState s;
  s.config.nx = 8 + static_cast<int>(rng() % 9);
  s.config.ny = 8 + static_cast<int>(rng() % 9);
  s.config.dx = 1.0 / s.config.nx;
  s.config.dt = 1e-4 + 1e-3 * std::abs(u(rng));
  s.config.gravity = {u(rng), u(rng)};
  s.config.scheme = rng() % 2 ? sim::Scheme::apic : sim::Scheme::flip;
  s.config.seed = rng() >> 1;
  const std::size_t n = rng() % 300;
  for (std::size_t p = 0; p < n; ++p) {
    s.particles.add({pick(), pick()}, {pick(), pick()}, {pick(), pick(), pick(), pick()});
  }
  s.grid = sim::MacGrid2(s.config.nx, s.config.ny, s.config.dx);
  for (auto* arr : {&s.grid.u, &s.grid.v, &s.grid.mass_u, &s.grid.mass_v, &s.grid.u_saved,
                    &s.grid.v_saved, &s.grid.pressure}) {
    for (std::size_t k = 0; k < arr->size(); ++k) arr->data()[k] = pick();
  }
  for (std::size_t k = 0; k < s.grid.label.size(); ++k) {
    s.grid.label.data()[k] = static_cast<sim::CellLabel>(rng() % 3);
  }
  s.step_index = static_cast<std::int64_t>(rng() % 100000);
  s.time = std::abs(u(rng));
  return s;
}

Outcome serialization() {
  std::mt19937_64 rng(31337);
  int identical = 0;
  serial::Bytes sample;
  for (int t = 0; t < kRandomStates; ++t) {
    const auto state = random_state(rng);
    const auto bytes = serial::serialize(sim::to_record(state));
    const auto back = sim::state_from_record(serial::deserialize(bytes));
    if (serial::serialize(sim::to_record(back)) == bytes && back.particles.bitwise_equal(state.particles)) {
      ++identical;
    }
    if (t == 0) sample = bytes;
  }

  int defined = 0, unchanged = 0, accepted = 0, undefined = 0;
  for (int t = 0; t < kFuzzStreams; ++t) {
    auto bytes = sample;
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits; ++e) {
      switch (rng() % 4) {
        case 0: bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8)); break;
        case 1: bytes[rng() % bytes.size()] = static_cast<std::uint8_t>(rng()); break;
        case 2: bytes.resize(rng() % bytes.size()); break;
        default: bytes.insert(bytes.begin() + static_cast<long>(rng() % (bytes.size() + 1)),
                              static_cast<std::uint8_t>(rng()));
      }
      if (bytes.empty()) break;
    }
    if (bytes == sample) {
      ++unchanged;  // the edits cancelled out
      continue;
    }
    try {
      sim::state_from_record(serial::deserialize(bytes));
      ++accepted;
    } catch (const serial::SerializationError&) {
      ++defined;
    } catch (...) {
      ++undefined;
    }
  }
  return {identical == kRandomStates && undefined == 0,
          fmt::format("{}/{} random states bitwise identical; {} mutated streams: {} defined "
                      "errors, {} unchanged, {} accepted, {} other",
                      identical, kRandomStates, kFuzzStreams, defined, unchanged, accepted,
                      undefined)};
}

bool tree_ok(const profile::ProfileNode& n) {
  if (n.inclusive_ns < n.children_ns()) return false;
  for (const auto& c : n.children)
    if (!tree_ok(c)) return false;
  return true;
}

void random_script(std::mt19937& rng, int depth) {
  const int calls = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < calls; ++i) {
    profile::scoped(std::string(1, static_cast<char>('a' + rng() % 4)), [&] {
      volatile double sink = 0;
      for (int k = 0; k < static_cast<int>(rng() % 300); ++k) sink = sink + k;
      if (depth < 5 && rng() % 2 == 0) random_script(rng, depth + 1);
    });
  }
}

Outcome profiler() {
  std::mt19937 rng(4);
  int good = 0;
  for (int t = 0; t < kProfilerScripts; ++t) {
    profile::Session s;
    {
      profile::Session::Activation on(s);
      random_script(rng, 0);
    }
    good += tree_ok(s.tree());
  }
  profile::Session s;
  {
    profile::Session::Activation on(s);
    profile::scoped("sleep", [] {
      std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(kSleepMs));
    });
  }
  const double ms = static_cast<double>(s.tree().child("sleep")->inclusive_ns) * 1e-6;
  return {good == kProfilerScripts && ms >= kSleepMs && ms <= kSleepUpperMs,
          fmt::format("{}/{} random trees satisfy inclusive >= sum(children); 50 ms sleep "
                      "measured {:.2f} ms",
                      good, kProfilerScripts, ms)};
}

Outcome registry() {
  UnitRegistry reg;
  app::register_builtin_units(reg);
  bool duplicate_rejected = false;
  try {
    app::register_builtin_units(reg);
  } catch (const RegistryError&) {
    duplicate_rejected = true;
  }
  bool lists_available = false;
  try {
    reg.create("demo", "nope", {});
  } catch (const RegistryError& e) {
    const std::string msg = e.what();
    lists_available = msg.find("dam-break") != std::string::npos &&
                      msg.find("hydrostatic") != std::string::npos &&
                      msg.find("rotation") != std::string::npos;
  }
  std::string listing;
  const int status = quiet_cli({"run", "--list-demos"}, &listing);
  int shown = 0;
  for (const char* name : {"dam-break", "hydrostatic", "rotation"})
    shown += listing.find(name) != std::string::npos;
  return {duplicate_rejected && lists_available && status == 0 && shown == 3,
          fmt::format("duplicate {}, unknown-name error {}, --list-demos shows {}/3",
                      duplicate_rejected ? "rejected" : "accepted",
                      lists_available ? "lists units" : "incomplete", shown)};
}

Outcome ppm_golden() {
  media::Image img(1, 1);
  img.set(0, 0, {255, 0, 0});
  const auto path = scratch("ppm") / "red.ppm";
  media::write_ppm(img, path);
  const serial::Bytes golden = {'P', '6', '\n', '1', ' ', '1', '\n', '2', '5', '5', '\n', 0xFF, 0x00, 0x00};
  const auto bytes = serial::read_file(path);
  return {bytes == golden, fmt::format("{} bytes, {}", bytes.size(),
                                       bytes == golden ? "identical to reference" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"layout-benchmark", layout_benchmark},
      {"mgpcg", mgpcg},
      {"projection", projection},
      {"apic-affine", apic_affine},
      {"hydrostatic", hydrostatic},
      {"snapshot-restart", snapshot_restart},
      {"serialization", serialization},
      {"profiler", profiler},
      {"registry", registry},
      {"ppm-golden", ppm_golden},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    failed += !o.pass;
    std::cout << fmt::format("{}  {:<18} {}\n", o.pass ? "PASS" : "FAIL", name, o.detail)
              << std::flush;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
