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

// Small fixed-size 3D vectors and matrices.
//
// AlignedVec3 keeps four lanes so that a value fills exactly one SIMD
// register (16 bytes at single precision). The fourth lane is padding: it is
// written as +0 by constructors, never read by any reduction (dot, length,
// comparison), and carries only zeros of either sign through lane-wise
// arithmetic on finite inputs. PackedVec3 is the 12-byte layout used as the
// comparison point in the layout benchmark.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <type_traits>

#if defined(TCORE_SIMD_INTRINSICS) && defined(__SSE__)
#include <xmmintrin.h>
#endif

namespace tc {

template <typename T>
struct alignas(4 * sizeof(T)) AlignedVec3 {
  static_assert(std::is_floating_point_v<T>);
  using Scalar = T;
  static constexpr int kLanes = 4;

  std::array<T, kLanes> lanes{};

  constexpr AlignedVec3() = default;
  constexpr AlignedVec3(T x, T y, T z) : lanes{x, y, z, T(0)} {}

  constexpr T x() const { return lanes[0]; }
  constexpr T y() const { return lanes[1]; }
  constexpr T z() const { return lanes[2]; }
  constexpr T operator[](int i) const { return lanes[static_cast<std::size_t>(i)]; }
  constexpr T& operator[](int i) { return lanes[static_cast<std::size_t>(i)]; }

  // Compares x, y, z only.
  friend constexpr bool operator==(const AlignedVec3& a, const AlignedVec3& b) {
    return a.lanes[0] == b.lanes[0] && a.lanes[1] == b.lanes[1] && a.lanes[2] == b.lanes[2];
  }
};

using AlignedVec3f = AlignedVec3<float>;
using AlignedVec3d = AlignedVec3<double>;

static_assert(sizeof(AlignedVec3f) == 16 && alignof(AlignedVec3f) == 16);
static_assert(sizeof(AlignedVec3d) == 32 && alignof(AlignedVec3d) % 16 == 0);

/// Column-major 3x3 matrix. Column k is `cols[k]`; entry (row r, col c) is
/// `cols[c][r]`.
template <typename T>
struct Matrix3 {
  std::array<AlignedVec3<T>, 3> cols{};

  constexpr Matrix3() = default;
  constexpr Matrix3(const AlignedVec3<T>& c0, const AlignedVec3<T>& c1, const AlignedVec3<T>& c2)
      : cols{c0, c1, c2} {}

  static constexpr Matrix3 identity() {
    return Matrix3({T(1), T(0), T(0)}, {T(0), T(1), T(0)}, {T(0), T(0), T(1)});
  }

  static constexpr Matrix3 from_rows(T a00, T a01, T a02, T a10, T a11, T a12, T a20, T a21,
                                     T a22) {
    return Matrix3({a00, a10, a20}, {a01, a11, a21}, {a02, a12, a22});
  }

  constexpr T operator()(int row, int col) const { return cols[static_cast<std::size_t>(col)][row]; }
};

using Matrix3f = Matrix3<float>;
using Matrix3d = Matrix3<double>;

static_assert(sizeof(Matrix3f) == 48);

/// 12-byte vector, stride 12 in arrays.
struct PackedVec3 {
  float x = 0.0f;
  float y = 0.0f;
  float z = 0.0f;
};

struct PackedMatrix3 {
  std::array<PackedVec3, 3> cols{};
};

static_assert(sizeof(PackedVec3) == 12 && alignof(PackedVec3) == 4);
static_assert(sizeof(PackedMatrix3) == 36);

// ---------------------------------------------------------------------------
// Lane-wise arithmetic. Each loop runs over all four lanes so the compiler
// can keep the value in one register.

template <typename T>
constexpr AlignedVec3<T> operator+(const AlignedVec3<T>& a, const AlignedVec3<T>& b) {
  AlignedVec3<T> r;
  for (int k = 0; k < 4; ++k) r[k] = a[k] + b[k];
  return r;
}

template <typename T>
constexpr AlignedVec3<T> operator-(const AlignedVec3<T>& a, const AlignedVec3<T>& b) {
  AlignedVec3<T> r;
  for (int k = 0; k < 4; ++k) r[k] = a[k] - b[k];
  return r;
}

template <typename T>
constexpr AlignedVec3<T> operator*(const AlignedVec3<T>& a, T s) {
  AlignedVec3<T> r;
  for (int k = 0; k < 4; ++k) r[k] = a[k] * s;
  return r;
}

template <typename T>
constexpr AlignedVec3<T> operator*(T s, const AlignedVec3<T>& a) {
  return a * s;
}

template <typename T>
constexpr AlignedVec3<T> add(const AlignedVec3<T>& a, const AlignedVec3<T>& b) {
  return a + b;
}

template <typename T>
constexpr AlignedVec3<T> sub(const AlignedVec3<T>& a, const AlignedVec3<T>& b) {
  return a - b;
}

template <typename T>
constexpr AlignedVec3<T> scale(const AlignedVec3<T>& a, T s) {
  return a * s;
}

template <typename T>
constexpr T dot(const AlignedVec3<T>& a, const AlignedVec3<T>& b) {
  return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

template <typename T>
constexpr AlignedVec3<T> cross(const AlignedVec3<T>& a, const AlignedVec3<T>& b) {
  return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
          a.x() * b.y() - a.y() * b.x()};
}

template <typename T>
T length(const AlignedVec3<T>& a) {
  return std::sqrt(dot(a, a));
}

/// Unit vector along `a`; empty when `a` has zero (or non-finite) length.
template <typename T>
std::optional<AlignedVec3<T>> normalized(const AlignedVec3<T>& a) {
  const T len = length(a);
  if (!(len > T(0)) || !std::isfinite(len)) return std::nullopt;
  return AlignedVec3<T>(a.x() / len, a.y() / len, a.z() / len);
}

/// m * v evaluated as x*col0 + y*col1 + z*col2, lane by lane.
template <typename T>
inline AlignedVec3<T> matvec(const Matrix3<T>& m, const AlignedVec3<T>& v) {
  AlignedVec3<T> r;
  const T x = v.x(), y = v.y(), z = v.z();
  for (int k = 0; k < 4; ++k) r[k] = m.cols[0][k] * x + m.cols[1][k] * y + m.cols[2][k] * z;
  return r;
}

#if defined(TCORE_SIMD_INTRINSICS) && defined(__SSE__)
template <>
inline AlignedVec3<float> matvec(const Matrix3<float>& m, const AlignedVec3<float>& v) {
  const __m128 x = _mm_set1_ps(v.x());
  const __m128 y = _mm_set1_ps(v.y());
  const __m128 z = _mm_set1_ps(v.z());
  __m128 acc = _mm_mul_ps(_mm_load_ps(m.cols[0].lanes.data()), x);
  acc = _mm_add_ps(acc, _mm_mul_ps(_mm_load_ps(m.cols[1].lanes.data()), y));
  acc = _mm_add_ps(acc, _mm_mul_ps(_mm_load_ps(m.cols[2].lanes.data()), z));
  AlignedVec3<float> r;
  _mm_store_ps(r.lanes.data(), acc);
  return r;
}
#endif

inline PackedVec3 matvec(const PackedMatrix3& m, const PackedVec3& v) {
  const auto& c = m.cols;
  return {c[0].x * v.x + c[1].x * v.y + c[2].x * v.z,
          c[0].y * v.x + c[1].y * v.y + c[2].y * v.z,
          c[0].z * v.x + c[1].z * v.y + c[2].z * v.z};
}

// ---------------------------------------------------------------------------
// 2D double-precision helpers used by the fluid solver.

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

/// Row-major 2x2 matrix: [[xx, xy], [yx, yy]].
struct Mat2 {
  double xx = 0.0, xy = 0.0;
  double yx = 0.0, yy = 0.0;

  friend constexpr Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.xx * v.x + m.xy * v.y, m.yx * v.x + m.yy * v.y};
  }
  friend constexpr bool operator==(const Mat2& a, const Mat2& b) = default;
};

}  // namespace tc
