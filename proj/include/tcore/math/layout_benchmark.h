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
#include <cstdint>
#include <string>

namespace tc {

/// Aligned (16-byte) versus packed (12-byte) single-precision matvec throughput.
///
/// Each pass walks the element arrays in tiles of kTileElements; inside a tile
/// every element's vector is replaced by matrix * vector kRepeatsPerTile
/// times. The tile stays cache resident across repeats, so the timing reflects
/// load/shuffle/store cost of the layout rather than DRAM bandwidth. Both
/// layouts start every pass from the same seeded data and perform the same
/// float operations in the same order.
struct LayoutBenchReport {
  std::uint64_t n_ops = 0;         // matvecs per layout, summed over passes
  double aligned_throughput = 0;   // matvecs / second, median pass
  double packed_throughput = 0;
  double speedup_ratio = 0;        // aligned_throughput / packed_throughput
  float checksum_aligned = 0;
  float checksum_packed = 0;

  bool checksums_match() const;
  /// Single line of space separated key=value pairs.
  std::string to_record_line() const;
};

enum class VectorLayout { aligned, packed };

struct LayoutTiming {
  std::uint64_t ops_per_pass = 0;
  double median_pass_seconds = 0;
  float checksum = 0;
};

inline constexpr std::size_t kMinBenchElements = 1024;
inline constexpr std::size_t kTileElements = 1024;
inline constexpr int kRepeatsPerTile = 8;

/// Times one layout. Throws std::invalid_argument when n_elements <
/// kMinBenchElements or n_passes < 1.
LayoutTiming time_layout(VectorLayout layout, std::size_t n_elements, int n_passes,
                         std::uint64_t seed);

LayoutBenchReport run_layout_benchmark(std::size_t n_elements, int n_passes, std::uint64_t seed);

}  // namespace tc
