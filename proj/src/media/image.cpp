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

#include "tcore/media/image.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "tcore/serialization/snapshot.h"

namespace tc::media {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw ConfigError(fmt::format("image size must be positive (got {}x{})", width, height));
  }
  pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  for (std::size_t k = 0; k < pixels_.size(); k += 3) {
    pixels_[k] = fill.r;
    pixels_[k + 1] = fill.g;
    pixels_[k + 2] = fill.b;
  }
}

Rgb Image::at(int x, int y) const {
  const std::size_t k = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                             static_cast<std::size_t>(x));
  return {pixels_.at(k), pixels_.at(k + 1), pixels_.at(k + 2)};
}

void Image::set(int x, int y, Rgb c) {
  const std::size_t k = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                             static_cast<std::size_t>(x));
  pixels_.at(k) = c.r;
  pixels_.at(k + 1) = c.g;
  pixels_.at(k + 2) = c.b;
}

Image render_particles(const sim::SimState& state, int width, int height) {
  Image img(width, height, kBackground);
  const auto& cfg = state.config;
  const double sx = width / cfg.width();
  const double sy = height / cfg.height();

  for (int j = 0; j < cfg.ny; ++j) {
    for (int i = 0; i < cfg.nx; ++i) {
      const bool border = i == 0 || j == 0 || i == cfg.nx - 1 || j == cfg.ny - 1;
      const bool solid = border || (state.grid.label.in_range(i, j) &&
                                    state.grid.label(i, j) == sim::CellLabel::solid);
      if (!solid) continue;
      // Pixels whose centers fall inside the cell.
      const int x0 = std::max(0, static_cast<int>(std::ceil(i * cfg.dx * sx - 0.5)));
      const int x1 = std::min(width, static_cast<int>(std::ceil((i + 1) * cfg.dx * sx - 0.5)));
      const int y0 = std::max(0, static_cast<int>(std::ceil(height - (j + 1) * cfg.dx * sy - 0.5)));
      const int y1 = std::min(height, static_cast<int>(std::ceil(height - j * cfg.dx * sy - 0.5)));
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) img.set(x, y, kSolid);
      }
    }
  }

  const double r = std::max(1.0, width / 256.0);
  for (const Vec2 p : state.particles.position) {
    const double cx = p.x * sx;
    const double cy = height - p.y * sy;
    // Also skips NaN and anything too far out to touch the image.
    if (!(cx > -r - 1 && cx < width + r + 1 && cy > -r - 1 && cy < height + r + 1)) continue;
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
    const int x1 = std::min(width - 1, static_cast<int>(std::ceil(cx + r)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
    const int y1 = std::min(height - 1, static_cast<int>(std::ceil(cy + r)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
        if (dx * dx + dy * dy <= r * r) img.set(x, y, kParticle);
      }
    }
  }
  return img;
}

std::vector<std::uint8_t> ppm_bytes(const Image& image) {
  const std::string header = fmt::format("P6\n{} {}\n255\n", image.width(), image.height());
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

void write_ppm(const Image& image, const std::filesystem::path& path) {
  serial::write_file_atomic(ppm_bytes(image), path);
}

}  // namespace tc::media
