/* Copyright (c) 2026 The Dam Burst Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include <cmath>

#include "damburst/simd/kernels.hpp"

namespace damburst::simd::scalar {

namespace {

inline double rect_sum(const double* top, const double* bottom, std::size_t x0, std::size_t x1) {
  return ((bottom[x1 + 1] - top[x1 + 1]) - bottom[x0]) + top[x0];
}

}  // namespace

void haar_row(const HaarRow& a) {
  const double* row_top = a.sums + a.row_lo * a.stride;
  const double* row_bottom = a.sums + (a.row_hi + 1) * a.stride;
  const double* above_top = a.sums + a.above_lo * a.stride;
  const double* above_bottom = a.sums + (a.above_hi + 1) * a.stride;
  const double* below_top = a.sums + a.below_lo * a.stride;
  const double* below_bottom = a.sums + (a.below_hi + 1) * a.stride;

  const double side_area = static_cast<double>(a.box * (a.row_hi - a.row_lo + 1));
  const double span = static_cast<double>(2 * a.half + 1);
  const double above_area = span * static_cast<double>(a.above_hi - a.above_lo + 1);
  const double below_area = span * static_cast<double>(a.below_hi - a.below_lo + 1);

  for (std::size_t x = a.x_begin; x < a.x_end; ++x) {
    const double right = rect_sum(row_top, row_bottom, x + 1, x + a.box) / side_area;
    const double left = rect_sum(row_top, row_bottom, x - a.box, x - 1) / side_area;
    const double below = rect_sum(below_top, below_bottom, x - a.half, x + a.half) / below_area;
    const double above = rect_sum(above_top, above_bottom, x - a.half, x + a.half) / above_area;
    a.gx[x] = right - left;
    a.gy[x] = below - above;
  }
}

void sobel_row(const SobelRow& a) {
  for (std::size_t x = a.x_begin; x < a.x_end; ++x) {
    const double dx = ((a.above[x + 1] - a.above[x - 1]) + 2.0 * (a.mid[x + 1] - a.mid[x - 1])) +
                      (a.below[x + 1] - a.below[x - 1]);
    const double dy = ((a.below[x - 1] - a.above[x - 1]) + 2.0 * (a.below[x] - a.above[x])) +
                      (a.below[x + 1] - a.above[x + 1]);
    a.gx[x] = dx / 4.0;
    a.gy[x] = dy / 4.0;
  }
}

void magnitude(const double* gx, const double* gy, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
}

}  // namespace damburst::simd::scalar
