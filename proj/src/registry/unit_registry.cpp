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

#include "tcore/registry/unit_registry.h"

#include <fmt/format.h>

namespace tc {

UnitRegistry& UnitRegistry::global() {
  static UnitRegistry registry;
  return registry;
}

void UnitRegistry::register_unit(UnitDescriptor descriptor) {
  if (frozen_) {
    throw RegistryError(fmt::format("late registration of {}/{}: registry is frozen",
                                    descriptor.interface_name, descriptor.impl_name));
  }
  if (descriptor.interface_name.empty() || descriptor.impl_name.empty()) {
    throw RegistryError("unit descriptor needs both an interface and an impl name");
  }
  if (!descriptor.constructor) {
    throw RegistryError(fmt::format("unit {}/{} has no constructor", descriptor.interface_name,
                                    descriptor.impl_name));
  }
  Key key{descriptor.interface_name, descriptor.impl_name};
  if (auto it = units_.find(key); it != units_.end()) {
    const auto& first = it->second.origin.empty() ? std::string("<unknown>") : it->second.origin;
    const auto& second = descriptor.origin.empty() ? std::string("<unknown>") : descriptor.origin;
    throw RegistryError(fmt::format("duplicate unit {}/{}: registered at {} and again at {}",
                                    descriptor.interface_name, descriptor.impl_name, first,
                                    second));
  }
  units_.emplace(std::move(key), std::move(descriptor));
}

std::unique_ptr<Unit> UnitRegistry::create(std::string_view interface_name,
                                           std::string_view impl_name,
                                           const ConfigMap& config) const {
  auto it = units_.find(std::pair<std::string_view, std::string_view>(interface_name, impl_name));
  if (it == units_.end()) {
    const auto available = list_units(interface_name);
    throw RegistryError(fmt::format("no unit '{}' for interface '{}'; available: {}", impl_name,
                                    interface_name,
                                    available.empty() ? std::string("(none)")
                                                      : fmt::format("{}", fmt::join(available, ", "))));
  }
  auto unit = it->second.constructor(config);
  if (!unit) {
    throw RegistryError(
        fmt::format("constructor of {}/{} returned nothing", interface_name, impl_name));
  }
  return unit;
}

bool UnitRegistry::contains(std::string_view interface_name, std::string_view impl_name) const {
  return units_.find(std::pair<std::string_view, std::string_view>(interface_name, impl_name)) !=
         units_.end();
}

std::vector<std::string> UnitRegistry::list_units(std::string_view interface_name) const {
  std::vector<std::string> out;
  for (const auto& [key, d] : units_) {
    if (key.first == interface_name) out.push_back(key.second);
  }
  return out;  // map order is already lexicographic within an interface
}

std::vector<std::string> UnitRegistry::list_interfaces() const {
  std::vector<std::string> out;
  for (const auto& [key, d] : units_) {
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  }
  return out;
}

namespace detail {

UnitRegistrar::UnitRegistrar(const char* interface_name, const char* impl_name,
                             UnitFactory factory, const char* origin) {
  UnitRegistry::global().register_unit({interface_name, impl_name, std::move(factory), origin});
}

}  // namespace detail
}  // namespace tc
