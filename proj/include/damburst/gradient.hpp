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

#pragma once

#include <array>

#include "damburst/simd/kernels.hpp"
#include "damburst/types.hpp"

namespace damburst {

/// Per-pixel gradient. orientation = atan2(gy, gx) in radians, with the
/// image y axis pointing down.
struct GradientField {
  ScalarField gx;
  ScalarField gy;
  ScalarField magnitude;
  ScalarField orientation;

  std::size_t width() const { return magnitude.width(); }
  std::size_t height() const { return magnitude.height(); }
  Extent extent() const { return magnitude.extent(); }

  /// Builds magnitude and orientation from gx/gy.
  static GradientField from_components(ScalarField gx, ScalarField gy,
                                       const simd::KernelTable& kernels = simd::best_kernels());
};

/// Side length of the Haar boxes: odd, one of 5, 7, ..., 15.
class BoxWidth {
 public:
  static constexpr std::array<int, 6> kRecommended = {5, 7, 9, 11, 13, 15};

  explicit BoxWidth(int w);
  int value() const { return w_; }
  int half() const { return (w_ - 1) / 2; }

  bool operator==(const BoxWidth&) const = default;

 private:
  int w_;
};

/// Haar-box gradient. For pixel (x, y) with r = (w-1)/2:
///   gx = mean(cols x+1..x+w, rows y-r..y+r) - mean(cols x-w..x-1, rows y-r..y+r)
///   gy = mean(rows y+1..y+w, cols x-r..x+r) - mean(rows y-w..y-1, cols x-r..x+r)
/// Boxes are clipped to the image; a box with nothing left after clipping
/// (first/last row or column) collapses onto the pixel's own column or row.
GradientField haar_gradient(const ScalarField& field, BoxWidth w,
                            const simd::KernelTable& kernels = simd::best_kernels());

/// 3x3 Sobel with kernels divided by 4 (a unit step gives |g| = 1), border
/// replicated. Requires at least 3x3 pixels.
GradientField sobel_gradient(const ScalarField& field,
                             const simd::KernelTable& kernels = simd::best_kernels());

}  // namespace damburst
