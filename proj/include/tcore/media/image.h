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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "tcore/common/error.h"
#include "tcore/sim/simulation.h"

namespace tc::media {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(Rgb, Rgb) = default;
};

inline constexpr Rgb kBackground{18, 20, 28};
inline constexpr Rgb kSolid{128, 128, 128};
inline constexpr Rgb kParticle{90, 170, 255};

/// Row-major RGB8, top row first.
class Image {
 public:
  Image(int width, int height, Rgb fill = {});

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }

  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Maps the domain onto the image (y up), paints solid cells gray and each
/// particle as a disc of radius max(1, width/256) pixels, clipped to the image.
Image render_particles(const sim::SimState& state, int width, int height);

/// "P6\n<w> <h>\n255\n" followed by the raw pixels.
std::vector<std::uint8_t> ppm_bytes(const Image& image);
void write_ppm(const Image& image, const std::filesystem::path& path);

}  // namespace tc::media
