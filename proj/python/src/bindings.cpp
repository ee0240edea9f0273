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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>

#include "tcore/app/demo.h"
#include "tcore/app/run.h"
#include "tcore/math/layout_benchmark.h"
#include "tcore/media/image.h"
#include "tcore/serialization/snapshot.h"
#include "tcore/sim/simulation.h"

namespace py = pybind11;

namespace {

tc::ConfigValue to_config_value(const std::string& key, const py::handle& obj) {
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  throw tc::ConfigError("config key '" + key + "' must be a bool, int, float or str, got " +
                        std::string(py::str(py::type::of(obj).attr("__name__"))));
}

class HandleClosed : public tc::Error {
 public:
  using tc::Error::Error;
};

class SimHandle {
 public:
  explicit SimHandle(std::unique_ptr<tc::sim::Simulation> sim) : sim_(std::move(sim)) {}

  tc::sim::Simulation& sim() const {
    if (!sim_) throw HandleClosed("simulation handle is closed");
    return *sim_;
  }

  void close() { sim_.reset(); }
  bool closed() const { return !sim_; }

  void step(std::int64_t n) {
    if (n < 0) throw tc::ConfigError("step count must be non-negative");
    auto& s = sim();
    py::gil_scoped_release release;
    for (std::int64_t k = 0; k < n; ++k) s.step();
  }

  py::array_t<double> positions() const { return pairs(sim().particles().position); }
  py::array_t<double> velocities() const { return pairs(sim().particles().velocity); }

 private:
  static py::array_t<double> pairs(const std::vector<tc::Vec2>& v) {
    py::array_t<double> out({static_cast<py::ssize_t>(v.size()), py::ssize_t{2}});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t k = 0; k < v.size(); ++k) {
      w(static_cast<py::ssize_t>(k), 0) = v[k].x;
      w(static_cast<py::ssize_t>(k), 1) = v[k].y;
    }
    return out;
  }

  std::unique_ptr<tc::sim::Simulation> sim_;
};

}  // namespace

PYBIND11_MODULE(_tcore, m) {
  m.doc() = "Bindings for the tcore particle fluid kernel";

  auto base = py::register_exception<tc::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<tc::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<tc::IoError>(m, "IoError", PyExc_OSError);
  auto sim_error = py::register_exception<tc::SimulationError>(m, "SimulationError", base.ptr());
  py::register_exception<tc::sim::CflError>(m, "CflError", sim_error.ptr());
  py::register_exception<tc::serial::SerializationError>(m, "SerializationError", base.ptr());
  py::register_exception<HandleClosed>(m, "ClosedHandleError", base.ptr());

  py::class_<SimHandle>(m, "SimHandle")
      .def("step", &SimHandle::step, py::arg("n") = 1)
      .def("positions", &SimHandle::positions, "N x 2 copy of the particle positions")
      .def("velocities", &SimHandle::velocities, "N x 2 copy of the particle velocities")
      .def_property_readonly("step_index", [](const SimHandle& h) { return h.sim().step_index(); })
      .def_property_readonly("time", [](const SimHandle& h) { return h.sim().state().time; })
      .def_property_readonly("scheme", [](const SimHandle& h) { return std::string(h.sim().unit_name()); })
      .def_property_readonly("closed", &SimHandle::closed)
      .def("__len__", [](const SimHandle& h) { return h.sim().particles().size(); })
      .def("save_frame",
           [](const SimHandle& h, const std::filesystem::path& path, int width, int height) {
             tc::media::write_ppm(tc::media::render_particles(h.sim().state(), width, height), path);
           },
           py::arg("path"), py::arg("width") = 256, py::arg("height") = 256)
      .def("save_snapshot",
           [](const SimHandle& h, const std::filesystem::path& path) {
             tc::sim::write_state_snapshot(h.sim().state(), path);
           })
      .def("particle_dump",
           [](const SimHandle& h) {
             const auto bytes = tc::sim::particle_dump(h.sim().particles());
             return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
           })
      .def("close", &SimHandle::close);

  m.def(
      "_create_sim",
      [](const py::dict& config) {
        tc::app::ConfigLayers layers;
        for (const auto& [k, v] : config) {
          const auto key = py::str(k).cast<std::string>();
          layers.sets.set(key, to_config_value(key, v));
        }
        const auto& registry = tc::app::builtin_registry();
        const auto resolved = tc::app::resolve_run_config(layers, registry);
        return SimHandle(tc::app::create_demo_simulation(resolved, registry));
      },
      py::arg("config"));

  m.def(
      "load_snapshot",
      [](const std::filesystem::path& path) {
        auto state = tc::sim::read_state_snapshot(path);
        const auto& registry = tc::app::builtin_registry();
        auto sim = registry.create_as<tc::sim::Simulation>(
            tc::sim::Simulation::kInterface, std::string(tc::sim::scheme_name(state.config.scheme)),
            tc::sim::to_config_map(state.config));
        sim->restore(std::move(state));
        return SimHandle(std::move(sim));
      },
      py::arg("path"));

  m.def("list_demos", [] {
    return tc::app::builtin_registry().list_units(tc::app::Demo::kInterface);
  });

  m.def(
      "layout_benchmark",
      [](std::size_t n, int passes, std::uint64_t seed) {
        tc::LayoutBenchReport r;
        {
          py::gil_scoped_release release;
          r = tc::run_layout_benchmark(n, passes, seed);
        }
        py::dict d;
        d["n_ops"] = r.n_ops;
        d["aligned_throughput"] = r.aligned_throughput;
        d["packed_throughput"] = r.packed_throughput;
        d["speedup_ratio"] = r.speedup_ratio;
        d["checksum_aligned"] = r.checksum_aligned;
        d["checksum_packed"] = r.checksum_packed;
        d["checksums_match"] = r.checksums_match();
        return d;
      },
      py::arg("n") = 1'000'000, py::arg("passes") = 10, py::arg("seed") = 42);
}
