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

#include <cstddef>
#include <vector>

#include "tcore/math/vector.h"

namespace tc::sim {

/// Structure-of-arrays particle state. All three arrays always have the same
/// length.
struct ParticleSet {
  std::vector<Vec2> position;  // m
  std::vector<Vec2> velocity;  // m/s
  std::vector<Mat2> affine;    // APIC C, 1/s

  std::size_t size() const { return position.size(); }
  bool empty() const { return position.empty(); }

  void add(Vec2 x, Vec2 v = {}, Mat2 c = {}) {
    position.push_back(x);
    velocity.push_back(v);
    affine.push_back(c);
  }

  /// Compares IEEE-754 bit patterns.
  bool bitwise_equal(const ParticleSet& other) const;
};

}  // namespace tc::sim
