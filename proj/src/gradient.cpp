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

#include "damburst/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "damburst/raster_io.hpp"

namespace damburst {

namespace {

struct Span {
  std::size_t lo;
  std::size_t hi;
  std::size_t size() const { return hi - lo + 1; }
};

// Pixels [p-w, p-1] clipped to the image, or [p, p] when nothing survives.
Span before(std::size_t p, std::size_t w) {
  if (p == 0) return {0, 0};
  return {p >= w ? p - w : 0, p - 1};
}

// Pixels [p+1, p+w] clipped to [0, n-1], or [p, p] when nothing survives.
Span after(std::size_t p, std::size_t w, std::size_t n) {
  if (p + 1 >= n) return {p, p};
  return {p + 1, std::min(p + w, n - 1)};
}

Span centered(std::size_t p, std::size_t half, std::size_t n) {
  return {p >= half ? p - half : 0, std::min(p + half, n - 1)};
}

// Same operation order as the row kernels: sum, then divide by the area.
double box_average(const IntegralField& sums, Span cols, Span rows) {
  return sums.box_sum(cols.lo, rows.lo, cols.hi, rows.hi) / static_cast<double>(cols.size() * rows.size());
}

}  // namespace

BoxWidth::BoxWidth(int w) : w_(w) {
  if (std::find(kRecommended.begin(), kRecommended.end(), w) == kRecommended.end())
    throw InvalidArgument("box width must be one of 5, 7, 9, 11, 13, 15 (got " + std::to_string(w) + ")");
}

GradientField GradientField::from_components(ScalarField gx, ScalarField gy, const simd::KernelTable& kernels) {
  if (gx.extent() != gy.extent()) throw InvalidArgument("gradient: component size mismatch");
  const std::size_t n = gx.values().size();
  std::vector<double> mag(n);
  std::vector<double> ori(n);
  kernels.magnitude(gx.values().data(), gy.values().data(), mag.data(), n);
  for (std::size_t i = 0; i < n; ++i) ori[i] = std::atan2(gy.values()[i], gx.values()[i]);
  const std::size_t w = gx.width();
  const std::size_t h = gx.height();
  return GradientField{std::move(gx), std::move(gy), ScalarField(w, h, std::move(mag)),
                       ScalarField(w, h, std::move(ori))};
}

GradientField haar_gradient(const ScalarField& field, BoxWidth box, const simd::KernelTable& kernels) {
  const std::size_t width = field.width();
  const std::size_t height = field.height();
  if (width == 0 || height == 0) throw InvalidArgument("haar_gradient: empty field");
  const std::size_t w = static_cast<std::size_t>(box.value());
  const std::size_t half = static_cast<std::size_t>(box.half());

  const IntegralField sums(field);
  ScalarField gx(width, height);
  ScalarField gy(width, height);

  // Columns whose four boxes are fully inside the image go to the row kernel.
  const std::size_t x_begin = w;
  const std::size_t x_end = width > w ? width - w : 0;

  for (std::size_t y = 0; y < height; ++y) {
    const Span rows = centered(y, half, height);
    const Span above = before(y, w);
    const Span below = after(y, w, height);
    double* gx_row = gx.values().data() + y * width;
    double* gy_row = gy.values().data() + y * width;

    auto border_pixel = [&](std::size_t x) {
      const Span cols = centered(x, half, width);
      gx_row[x] = box_average(sums, after(x, w, width), rows) - box_average(sums, before(x, w), rows);
      gy_row[x] = box_average(sums, cols, below) - box_average(sums, cols, above);
    };

    if (x_begin < x_end) {
      for (std::size_t x = 0; x < x_begin; ++x) border_pixel(x);
      simd::HaarRow args;
      args.sums = sums.data();
      args.stride = sums.stride();
      args.box = w;
      args.half = half;
      args.row_lo = rows.lo;
      args.row_hi = rows.hi;
      args.above_lo = above.lo;
      args.above_hi = above.hi;
      args.below_lo = below.lo;
      args.below_hi = below.hi;
      args.x_begin = x_begin;
      args.x_end = x_end;
      args.gx = gx_row;
      args.gy = gy_row;
      kernels.haar_row(args);
      for (std::size_t x = x_end; x < width; ++x) border_pixel(x);
    } else {
      for (std::size_t x = 0; x < width; ++x) border_pixel(x);
    }
  }
  return GradientField::from_components(std::move(gx), std::move(gy), kernels);
}

GradientField sobel_gradient(const ScalarField& field, const simd::KernelTable& kernels) {
  const std::size_t width = field.width();
  const std::size_t height = field.height();
  if (width < 3 || height < 3) throw InvalidArgument("sobel_gradient: image must be at least 3x3");

  ScalarField gx(width, height);
  ScalarField gy(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    const double* above = field.row(y == 0 ? 0 : y - 1);
    const double* mid = field.row(y);
    const double* below = field.row(std::min(y + 1, height - 1));
    double* gx_row = gx.values().data() + y * width;
    double* gy_row = gy.values().data() + y * width;

    auto border_pixel = [&](std::size_t x) {
      const std::size_t l = x == 0 ? 0 : x - 1;
      const std::size_t r = std::min(x + 1, width - 1);
      const double dx = ((above[r] - above[l]) + 2.0 * (mid[r] - mid[l])) + (below[r] - below[l]);
      const double dy = ((below[l] - above[l]) + 2.0 * (below[x] - above[x])) + (below[r] - above[r]);
      gx_row[x] = dx / 4.0;
      gy_row[x] = dy / 4.0;
    };

    border_pixel(0);
    kernels.sobel_row(simd::SobelRow{above, mid, below, 1, width - 1, gx_row, gy_row});
    border_pixel(width - 1);
  }
  return GradientField::from_components(std::move(gx), std::move(gy), kernels);
}

}  // namespace damburst
