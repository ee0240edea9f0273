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

// Named implementations ("units") of named interfaces.
//
// Units are registered during a single-threaded initialization phase and
// instantiated afterwards by (interface, name) through the factory. Once
// frozen, a registry is read-only and may be shared between threads.
//
//   class Simulation : public tc::Unit { ... };
//   class Apic final : public Simulation { ... };
//
//   TC_REGISTER_UNIT("simulation", "apic", Apic);   // at namespace scope
//
//   auto sim = registry.create_as<Simulation>("simulation", "apic", config);

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcore/common/error.h"
#include "tcore/registry/config_map.h"

namespace tc {

/// Base class of every registered implementation.
class Unit {
 public:
  virtual ~Unit() = default;
  /// The impl name this instance was registered under.
  virtual std::string_view unit_name() const = 0;
};

using UnitFactory = std::function<std::unique_ptr<Unit>(const ConfigMap&)>;

struct UnitDescriptor {
  std::string interface_name;
  std::string impl_name;
  UnitFactory constructor;
  /// Where the registration happened ("file:line"), used in duplicate errors.
  std::string origin;
};

/// Duplicate or late registration, or an unknown unit requested from create().
class RegistryError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnitRegistry {
 public:
  UnitRegistry() = default;
  UnitRegistry(const UnitRegistry&) = delete;
  UnitRegistry& operator=(const UnitRegistry&) = delete;

  /// Process-wide registry filled by TC_REGISTER_UNIT and register_builtin_units().
  static UnitRegistry& global();

  void register_unit(UnitDescriptor descriptor);

  /// Fresh instance configured from `config`. Constructor errors propagate;
  /// nothing is cached. Recursive create() calls from constructors are
  /// allowed; cycles are not detected.
  std::unique_ptr<Unit> create(std::string_view interface_name, std::string_view impl_name,
                               const ConfigMap& config) const;

  template <typename Interface>
  std::unique_ptr<Interface> create_as(std::string_view interface_name,
                                       std::string_view impl_name, const ConfigMap& config) const {
    auto unit = create(interface_name, impl_name, config);
    auto* typed = dynamic_cast<Interface*>(unit.get());
    if (typed == nullptr) {
      throw RegistryError("unit '" + std::string(impl_name) + "' does not implement interface '" +
                          std::string(interface_name) + "'");
    }
    unit.release();
    return std::unique_ptr<Interface>(typed);
  }

  bool contains(std::string_view interface_name, std::string_view impl_name) const;

  /// Lexicographically sorted impl names; empty for an unknown interface.
  std::vector<std::string> list_units(std::string_view interface_name) const;
  std::vector<std::string> list_interfaces() const;

  /// After freezing, register_unit() throws.
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

 private:
  using Key = std::pair<std::string, std::string>;
  struct KeyLess {
    using is_transparent = void;
    template <typename A, typename B>
    bool operator()(const A& a, const B& b) const {
      return std::pair<std::string_view, std::string_view>(a.first, a.second) <
             std::pair<std::string_view, std::string_view>(b.first, b.second);
    }
  };
  std::map<Key, UnitDescriptor, KeyLess> units_;
  bool frozen_ = false;
};

namespace detail {
struct UnitRegistrar {
  UnitRegistrar(const char* interface_name, const char* impl_name, UnitFactory factory,
                const char* origin);
};
}  // namespace detail

/// Helper for implementations constructed as `T(const ConfigMap&)`.
template <typename T>
UnitFactory make_factory() {
  return [](const ConfigMap& config) -> std::unique_ptr<Unit> { return std::make_unique<T>(config); };
}

}  // namespace tc

#define TC_UNIT_CONCAT_INNER(a, b) a##b
#define TC_UNIT_CONCAT(a, b) TC_UNIT_CONCAT_INNER(a, b)
#define TC_UNIT_STRINGIFY_INNER(x) #x
#define TC_UNIT_STRINGIFY(x) TC_UNIT_STRINGIFY_INNER(x)

/// Registers `Type` into UnitRegistry::global() when the enclosing object
/// file is loaded. Object files pulled from static archives only run this if
/// something else in them is referenced, so the built-in units are registered
/// explicitly by tc::register_builtin_units() instead.
#define TC_REGISTER_UNIT(interface_name, impl_name, Type)                                     \
  static const ::tc::detail::UnitRegistrar TC_UNIT_CONCAT(tc_unit_registrar_, __COUNTER__){ \
      interface_name, impl_name, ::tc::make_factory<Type>(),                                  \
      __FILE__ ":" TC_UNIT_STRINGIFY(__LINE__)}
