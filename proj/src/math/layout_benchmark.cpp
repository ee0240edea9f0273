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

#include "tcore/math/layout_benchmark.h"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <random>
#include <stdexcept>
#include <vector>

#include "tcore/math/vector.h"

namespace tc {
namespace {

// Values in [-1, 1) with a 24-bit mantissa, identical on every platform.
std::vector<float> random_floats(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<float> out(count);
  for (auto& f : out) {
    const auto bits = static_cast<std::uint32_t>(rng() >> 40);
    f = static_cast<float>(bits) * (2.0f / 16777216.0f) - 1.0f;
  }
  return out;
}

struct AlignedData {
  std::vector<Matrix3f> matrices;
  std::vector<AlignedVec3f> initial;
};

struct PackedData {
  std::vector<PackedMatrix3> matrices;
  std::vector<PackedVec3> initial;
};

// 12 floats per element: 9 matrix entries (column major) then 3 vector entries.
AlignedData make_aligned(const std::vector<float>& raw, std::size_t n) {
  AlignedData d;
  d.matrices.resize(n);
  d.initial.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const float* e = raw.data() + 12 * i;
    d.matrices[i] = Matrix3f({e[0], e[1], e[2]}, {e[3], e[4], e[5]}, {e[6], e[7], e[8]});
    d.initial[i] = AlignedVec3f(e[9], e[10], e[11]);
  }
  return d;
}

PackedData make_packed(const std::vector<float>& raw, std::size_t n) {
  PackedData d;
  d.matrices.resize(n);
  d.initial.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const float* e = raw.data() + 12 * i;
    d.matrices[i].cols = {PackedVec3{e[0], e[1], e[2]}, PackedVec3{e[3], e[4], e[5]},
                          PackedVec3{e[6], e[7], e[8]}};
    d.initial[i] = PackedVec3{e[9], e[10], e[11]};
  }
  return d;
}

template <typename Mat, typename Vec>
[[gnu::noinline]] void sweep(const Mat* matrices, Vec* vectors, std::size_t n) {
  for (std::size_t begin = 0; begin < n; begin += kTileElements) {
    const std::size_t end = std::min(n, begin + kTileElements);
    for (int rep = 0; rep < kRepeatsPerTile; ++rep) {
      for (std::size_t i = begin; i < end; ++i) vectors[i] = matvec(matrices[i], vectors[i]);
    }
  }
}

float checksum_of(const std::vector<AlignedVec3f>& v) {
  float sum = 0.0f;
  for (const auto& e : v) sum = ((sum + e.x()) + e.y()) + e.z();
  return sum;
}

float checksum_of(const std::vector<PackedVec3>& v) {
  float sum = 0.0f;
  for (const auto& e : v) sum = ((sum + e.x) + e.y) + e.z;
  return sum;
}

template <typename Data>
LayoutTiming time_passes(const Data& data, int n_passes) {
  using Clock = std::chrono::steady_clock;
  const std::size_t n = data.initial.size();
  auto work = data.initial;
  std::vector<double> seconds;
  seconds.reserve(static_cast<std::size_t>(n_passes));
  for (int pass = 0; pass < n_passes; ++pass) {
    std::copy(data.initial.begin(), data.initial.end(), work.begin());
    const auto t0 = Clock::now();
    sweep(data.matrices.data(), work.data(), n);
    const auto t1 = Clock::now();
    seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(seconds.begin(), seconds.end());
  const std::size_t mid = seconds.size() / 2;
  const double median =
      seconds.size() % 2 == 1 ? seconds[mid] : 0.5 * (seconds[mid - 1] + seconds[mid]);

  LayoutTiming t;
  t.ops_per_pass = static_cast<std::uint64_t>(n) * kRepeatsPerTile;
  t.median_pass_seconds = median;
  t.checksum = checksum_of(work);
  return t;
}

void check_args(std::size_t n_elements, int n_passes) {
  if (n_elements < kMinBenchElements) {
    throw std::invalid_argument(
        fmt::format("layout benchmark needs at least {} elements, got {}", kMinBenchElements,
                    n_elements));
  }
  if (n_passes < 1) throw std::invalid_argument("layout benchmark needs at least one pass");
}

}  // namespace

bool LayoutBenchReport::checksums_match() const {
  return std::bit_cast<std::uint32_t>(checksum_aligned) ==
         std::bit_cast<std::uint32_t>(checksum_packed);
}

std::string LayoutBenchReport::to_record_line() const {
  return fmt::format(
      "n_ops={} aligned_throughput={:.6e} packed_throughput={:.6e} speedup_ratio={:.4f} "
      "checksum_aligned={:.9g} checksum_packed={:.9g}",
      n_ops, aligned_throughput, packed_throughput, speedup_ratio, checksum_aligned,
      checksum_packed);
}

LayoutTiming time_layout(VectorLayout layout, std::size_t n_elements, int n_passes,
                         std::uint64_t seed) {
  check_args(n_elements, n_passes);
  const auto raw = random_floats(12 * n_elements, seed);
  if (layout == VectorLayout::aligned) return time_passes(make_aligned(raw, n_elements), n_passes);
  return time_passes(make_packed(raw, n_elements), n_passes);
}

LayoutBenchReport run_layout_benchmark(std::size_t n_elements, int n_passes, std::uint64_t seed) {
  const auto aligned = time_layout(VectorLayout::aligned, n_elements, n_passes, seed);
  const auto packed = time_layout(VectorLayout::packed, n_elements, n_passes, seed);

  LayoutBenchReport r;
  r.n_ops = aligned.ops_per_pass * static_cast<std::uint64_t>(n_passes);
  r.aligned_throughput = static_cast<double>(aligned.ops_per_pass) / aligned.median_pass_seconds;
  r.packed_throughput = static_cast<double>(packed.ops_per_pass) / packed.median_pass_seconds;
  r.speedup_ratio = r.aligned_throughput / r.packed_throughput;
  r.checksum_aligned = aligned.checksum;
  r.checksum_packed = packed.checksum;
  return r;
}

}  // namespace tc
