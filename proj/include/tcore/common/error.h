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

#pragma once

#include <stdexcept>
#include <string>

namespace tc {

/// Root of every exception thrown by tcore.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// User-facing configuration problem: bad key, wrong type, unknown unit.
/// The CLI maps these to exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure. The message always names the path involved.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A placeholder template and its arguments disagree.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Runtime failure inside a simulation step.
class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace tc
