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

#include "damburst/canny.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

namespace damburst {

void CannyParams::validate() const {
  if (!(t_high > 0.0 && t_high <= t_low && t_low <= 1.0))
    throw InvalidArgument("canny: require 0 < t_high <= t_low <= 1");
}

namespace {

// Neighbour offset along the quantised gradient direction (y down).
struct Step {
  int dx;
  int dy;
};

Step direction_step(double angle) {
  double deg = angle * 180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  if (deg < 22.5 || deg >= 157.5) return {1, 0};
  if (deg < 67.5) return {1, 1};
  if (deg < 112.5) return {0, 1};
  return {-1, 1};
}

}  // namespace

CandidateSet nms(const GradientField& gradient) {
  const long width = static_cast<long>(gradient.width());
  const long height = static_cast<long>(gradient.height());
  const auto mag = gradient.magnitude.values();
  const auto ori = gradient.orientation.values();

  auto sample = [&](long x, long y) {
    if (x < 0 || y < 0 || x >= width || y >= height) return 0.0;
    return mag[static_cast<std::size_t>(y * width + x)];
  };

  CandidateSet out{gradient.extent(), {}};
  for (long y = 0; y < height; ++y) {
    for (long x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y * width + x);
      const double m = mag[i];
      if (!(m > 0.0)) continue;
      const Step s = direction_step(ori[i]);
      if (m >= sample(x + s.dx, y + s.dy) && m >= sample(x - s.dx, y - s.dy)) out.pixels.push_back({i, m});
    }
  }
  return out;
}

std::optional<Thresholds> percentile_thresholds(const CandidateSet& candidates, const CannyParams& params) {
  params.validate();
  if (candidates.empty()) return std::nullopt;

  std::vector<double> sorted;
  sorted.reserve(candidates.size());
  for (const auto& c : candidates.pixels) sorted.push_back(c.magnitude);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  const std::size_t n = sorted.size();
  auto kth = [&](double fraction) {
    // 1e-9 absorbs representation error (0.21 * 1000 = 210.00000000000003).
    const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
    const std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, n);
    return sorted[k - 1];
  };
  return Thresholds{kth(params.t_low), kth(params.t_high)};
}

EdgeMap hysteresis(const CandidateSet& candidates, Thresholds thresholds) {
  if (thresholds.low > thresholds.high) throw InvalidArgument("hysteresis: low threshold above high threshold");
  const std::size_t width = candidates.extent.width;
  const std::size_t height = candidates.extent.height;
  EdgeMap edges(width, height);

  // 0: not eligible, 1: weak (>= low), 2: accepted
  std::vector<std::uint8_t> state(width * height, 0);
  std::deque<std::size_t> queue;
  for (const auto& c : candidates.pixels) {
    if (c.magnitude < thresholds.low) continue;
    state[c.index] = 1;
  }
  for (const auto& c : candidates.pixels) {
    if (c.magnitude >= thresholds.high) {
      state[c.index] = 2;
      queue.push_back(c.index);
    }
  }
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    edges.set(i);
    const long x = static_cast<long>(i % width);
    const long y = static_cast<long>(i / width);
    for (long dy = -1; dy <= 1; ++dy) {
      for (long dx = -1; dx <= 1; ++dx) {
        const long nx = x + dx;
        const long ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= static_cast<long>(width) || ny >= static_cast<long>(height)) continue;
        const std::size_t j = static_cast<std::size_t>(ny) * width + static_cast<std::size_t>(nx);
        if (state[j] == 1) {
          state[j] = 2;
          queue.push_back(j);
        }
      }
    }
  }
  return edges;
}

CannyResult canny_detail(const GradientField& gradient, const CannyParams& params) {
  params.validate();
  CannyResult result;
  result.candidates = nms(gradient);
  result.thresholds = percentile_thresholds(result.candidates, params);
  result.edges = result.thresholds ? hysteresis(result.candidates, *result.thresholds)
                                   : EdgeMap(gradient.width(), gradient.height());
  return result;
}

EdgeMap canny(const ScalarField& field, BoxWidth w, const CannyParams& params) {
  return canny_detail(haar_gradient(field, w), params).edges;
}

}  // namespace damburst
