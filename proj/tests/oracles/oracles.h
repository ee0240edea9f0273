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

// Reference implementations used only by tests. Written independently of the
// library: plain scalar loops, no shared helpers.

#pragma once

#include <zlib.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

// Row r of m*v with m given as a row-major 3x3 array: the sum is formed in
// the order m[r][0]*x + m[r][1]*y + m[r][2]*z.
inline void matvec3(const float m[3][3], const float v[3], float out[3]) {
  for (int r = 0; r < 3; ++r) {
    float acc = m[r][0] * v[0];
    acc = acc + m[r][1] * v[1];
    acc = acc + m[r][2] * v[2];
    out[r] = acc;
  }
}

inline std::uint32_t crc32(const std::vector<std::uint8_t>& bytes) {
  uLong c = ::crc32(0L, Z_NULL, 0);
  c = ::crc32(c, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(c);
}

// Dense row-major n x n solve with partial pivoting.
inline std::vector<double> gauss_solve(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    }
    if (a[piv * n + k] == 0.0) throw std::runtime_error("singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return x;
}

// 5-point Laplacian (4 on the diagonal, -1 per neighbor) on an nx x ny grid
// with zero Dirichlet values outside, applied matrix-free.
inline std::vector<double> laplacian_apply(int nx, int ny, const std::vector<double>& x) {
  std::vector<double> y(x.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const auto at = [&](int ii, int jj) {
        return (ii < 0 || jj < 0 || ii >= nx || jj >= ny) ? 0.0
                                                          : x[static_cast<std::size_t>(jj * nx + ii)];
      };
      y[static_cast<std::size_t>(j * nx + i)] =
          4.0 * at(i, j) - at(i - 1, j) - at(i + 1, j) - at(i, j - 1) - at(i, j + 1);
    }
  }
  return y;
}

inline std::vector<double> laplacian_dense(int nx, int ny) {
  const std::size_t n = static_cast<std::size_t>(nx * ny);
  std::vector<double> a(n * n, 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t r = static_cast<std::size_t>(j * nx + i);
      a[r * n + r] = 4.0;
      if (i > 0) a[r * n + r - 1] = -1.0;
      if (i + 1 < nx) a[r * n + r + 1] = -1.0;
      if (j > 0) a[r * n + r - static_cast<std::size_t>(nx)] = -1.0;
      if (j + 1 < ny) a[r * n + r + static_cast<std::size_t>(nx)] = -1.0;
    }
  }
  return a;
}

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
};

// Textbook unpreconditioned CG from x = 0, stopping on ||r||_inf <= tol*||b||_inf.
inline CgResult plain_cg(int nx, int ny, const std::vector<double>& b, double tol, int max_iters) {
  const std::size_t n = b.size();
  auto inf = [](const std::vector<double>& v) {
    double m = 0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
  };
  auto dotp = [](const std::vector<double>& a, const std::vector<double>& c) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * c[i];
    return s;
  };
  CgResult res{std::vector<double>(n, 0.0), 0};
  std::vector<double> r = b, p = b;
  const double target = tol * inf(b);
  double rr = dotp(r, r);
  while (inf(r) > target && res.iterations < max_iters) {
    const auto ap = laplacian_apply(nx, ny, p);
    const double alpha = rr / dotp(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      res.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_new = dotp(r, r);
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + (rr_new / rr) * p[i];
    rr = rr_new;
    ++res.iterations;
  }
  return res;
}

struct PpmImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;
};

// Minimal binary P6 reader (maxval 255, no comments).
inline PpmImage read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string magic;
  int maxval = 0;
  PpmImage img;
  in >> magic >> img.width >> img.height >> maxval;
  if (magic != "P6" || maxval != 255) throw std::runtime_error("not a P6/255 file");
  in.get();
  img.rgb.resize(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) * 3);
  in.read(reinterpret_cast<char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (!in) throw std::runtime_error("truncated pixel data");
  return img;
}

}  // namespace oracle
