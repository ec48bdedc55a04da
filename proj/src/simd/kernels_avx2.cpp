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

// Compiled with -mavx2 only (no -mfma): every lane reproduces the scalar
// reference exactly. Entered only after a runtime CPU check.

#include <immintrin.h>

#include "damburst/simd/kernels.hpp"

namespace damburst::simd::avx2 {

namespace {

inline __m256d rect_sum4(const double* top, const double* bottom, std::size_t x0, std::size_t x1) {
  const __m256d br = _mm256_loadu_pd(bottom + x1 + 1);
  const __m256d tr = _mm256_loadu_pd(top + x1 + 1);
  const __m256d bl = _mm256_loadu_pd(bottom + x0);
  const __m256d tl = _mm256_loadu_pd(top + x0);
  return _mm256_add_pd(_mm256_sub_pd(_mm256_sub_pd(br, tr), bl), tl);
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
  const __m256d v_side = _mm256_set1_pd(side_area);
  const __m256d v_above = _mm256_set1_pd(above_area);
  const __m256d v_below = _mm256_set1_pd(below_area);

  std::size_t x = a.x_begin;
  for (; x + 4 <= a.x_end; x += 4) {
    const __m256d right =
        _mm256_div_pd(rect_sum4(row_top, row_bottom, x + 1, x + a.box), v_side);
    const __m256d left = _mm256_div_pd(rect_sum4(row_top, row_bottom, x - a.box, x - 1), v_side);
    const __m256d below =
        _mm256_div_pd(rect_sum4(below_top, below_bottom, x - a.half, x + a.half), v_below);
    const __m256d above =
        _mm256_div_pd(rect_sum4(above_top, above_bottom, x - a.half, x + a.half), v_above);
    _mm256_storeu_pd(a.gx + x, _mm256_sub_pd(right, left));
    _mm256_storeu_pd(a.gy + x, _mm256_sub_pd(below, above));
  }
  if (x < a.x_end) {
    HaarRow tail = a;
    tail.x_begin = x;
    scalar::haar_row(tail);
  }
}

void sobel_row(const SobelRow& a) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t x = a.x_begin;
  for (; x + 4 <= a.x_end; x += 4) {
    const __m256d al = _mm256_loadu_pd(a.above + x - 1);
    const __m256d ac = _mm256_loadu_pd(a.above + x);
    const __m256d ar = _mm256_loadu_pd(a.above + x + 1);
    const __m256d ml = _mm256_loadu_pd(a.mid + x - 1);
    const __m256d mr = _mm256_loadu_pd(a.mid + x + 1);
    const __m256d bl = _mm256_loadu_pd(a.below + x - 1);
    const __m256d bc = _mm256_loadu_pd(a.below + x);
    const __m256d br = _mm256_loadu_pd(a.below + x + 1);

    const __m256d dx = _mm256_add_pd(
        _mm256_add_pd(_mm256_sub_pd(ar, al), _mm256_mul_pd(two, _mm256_sub_pd(mr, ml))),
        _mm256_sub_pd(br, bl));
    const __m256d dy = _mm256_add_pd(
        _mm256_add_pd(_mm256_sub_pd(bl, al), _mm256_mul_pd(two, _mm256_sub_pd(bc, ac))),
        _mm256_sub_pd(br, ar));
    _mm256_storeu_pd(a.gx + x, _mm256_div_pd(dx, four));
    _mm256_storeu_pd(a.gy + x, _mm256_div_pd(dy, four));
  }
  if (x < a.x_end) {
    SobelRow tail = a;
    tail.x_begin = x;
    scalar::sobel_row(tail);
  }
}

void magnitude(const double* gx, const double* gy, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(gx + i);
    const __m256d y = _mm256_loadu_pd(gy + i);
    _mm256_storeu_pd(out + i,
                     _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y))));
  }
  if (i < n) scalar::magnitude(gx + i, gy + i, out + i, n - i);
}

}  // namespace damburst::simd::avx2
