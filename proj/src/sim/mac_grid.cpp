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

#include <bit>
#include <cstdint>

#include "tcore/sim/mac_grid.h"
#include "tcore/sim/particles.h"

namespace tc::sim {
namespace {

bool same(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

}  // namespace

bool ParticleSet::bitwise_equal(const ParticleSet& o) const {
  if (size() != o.size() || velocity.size() != o.velocity.size() ||
      affine.size() != o.affine.size()) {
    return false;
  }
  for (std::size_t p = 0; p < size(); ++p) {
    const auto &a = affine[p], &b = o.affine[p];
    if (!same(position[p].x, o.position[p].x) || !same(position[p].y, o.position[p].y) ||
        !same(velocity[p].x, o.velocity[p].x) || !same(velocity[p].y, o.velocity[p].y) ||
        !same(a.xx, b.xx) || !same(a.xy, b.xy) || !same(a.yx, b.yx) || !same(a.yy, b.yy)) {
      return false;
    }
  }
  return true;
}

MacGrid2::MacGrid2(int nx_, int ny_, double dx_)
    : nx(nx_),
      ny(ny_),
      dx(dx_),
      u(nx_ + 1, ny_),
      v(nx_, ny_ + 1),
      mass_u(nx_ + 1, ny_),
      mass_v(nx_, ny_ + 1),
      u_saved(nx_ + 1, ny_),
      v_saved(nx_, ny_ + 1),
      pressure(nx_, ny_),
      label(nx_, ny_, CellLabel::empty) {}

void MacGrid2::clear_transfer() {
  u.fill(0);
  v.fill(0);
  mass_u.fill(0);
  mass_v.fill(0);
  u_saved.fill(0);
  v_saved.fill(0);
}

}  // namespace tc::sim
