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

#include "damburst/watershed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

namespace damburst {

namespace {

constexpr int kLevels = 256;

// Working labels during flooding.
constexpr std::int64_t kInit = -1;
constexpr std::int64_t kMask = -2;
constexpr std::int64_t kWshed = 0;
constexpr std::size_t kFictitious = static_cast<std::size_t>(-1);

class Neighbours4 {
 public:
  Neighbours4(std::size_t width, std::size_t height) : width_(width), height_(height) {}

  // Fills `out` with the in-bounds 4-neighbours of i; returns how many.
  int of(std::size_t i, std::array<std::size_t, 4>& out) const {
    const std::size_t x = i % width_;
    const std::size_t y = i / width_;
    int n = 0;
    if (y > 0) out[n++] = i - width_;
    if (x > 0) out[n++] = i - 1;
    if (x + 1 < width_) out[n++] = i + 1;
    if (y + 1 < height_) out[n++] = i + width_;
    return n;
  }

 private:
  std::size_t width_;
  std::size_t height_;
};

// Hands dam pixels whose 8-neighbourhood holds a single basin to that basin,
// provided a 4-neighbour belongs to it (keeps basins 4-connected). Repeats
// until stable.
void absorb_one_sided_dams(std::vector<std::int64_t>& lab, std::size_t width, std::size_t height) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        const std::size_t i = y * width + x;
        if (lab[i] != kWshed) continue;
        std::int64_t only = kWshed;
        bool multiple = false;
        bool four_touch = false;
        for (int dy = -1; dy <= 1 && !multiple; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const long nx = static_cast<long>(x) + dx;
            const long ny = static_cast<long>(y) + dy;
            if (nx < 0 || ny < 0 || nx >= static_cast<long>(width) || ny >= static_cast<long>(height)) continue;
            const std::int64_t l = lab[static_cast<std::size_t>(ny) * width + static_cast<std::size_t>(nx)];
            if (l <= 0) continue;
            if (only == kWshed) {
              only = l;
            } else if (only != l) {
              multiple = true;
              break;
            }
            if (dx == 0 || dy == 0) four_touch = true;
          }
        }
        if (!multiple && only > 0 && four_touch) {
          lab[i] = only;
          changed = true;
        }
      }
    }
  }
}

}  // namespace

LevelField quantize(const ScalarField& magnitude) {
  LevelField out{magnitude.extent(), std::vector<std::uint8_t>(magnitude.values().size(), 0)};
  const auto values = magnitude.values();
  const double max = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  if (!(max > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double scaled = std::floor(values[i] / max * (kLevels - 1));
    out.levels[i] = static_cast<std::uint8_t>(std::clamp(scaled, 0.0, static_cast<double>(kLevels - 1)));
  }
  return out;
}

LevelField quantize(const GradientField& gradient) { return quantize(gradient.magnitude); }

LabelField watershed(const GradientField& gradient) { return watershed(quantize(gradient)); }

LabelField watershed(const LevelField& field) {
  const std::size_t width = field.extent.width;
  const std::size_t height = field.extent.height;
  const std::size_t n = width * height;
  if (n == 0) throw InvalidArgument("watershed: empty field");
  const Neighbours4 neighbours(width, height);

  // Pixels sorted by level, row-major within a level (counting sort).
  std::array<std::size_t, kLevels + 1> start{};
  for (std::uint8_t v : field.levels) ++start[v + 1];
  for (int h = 0; h < kLevels; ++h) start[h + 1] += start[h];
  std::vector<std::size_t> order(n);
  {
    auto fill = start;
    for (std::size_t i = 0; i < n; ++i) order[fill[field.levels[i]]++] = i;
  }

  std::vector<std::int64_t> lab(n, kInit);
  std::vector<std::uint32_t> dist(n, 0);
  std::deque<std::size_t> fifo;
  std::array<std::size_t, 4> nb{};
  std::int64_t current_label = 0;

  for (int h = 0; h < kLevels; ++h) {
    const std::size_t begin = start[h];
    const std::size_t end = start[h + 1];
    if (begin == end) continue;

    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t p = order[k];
      lab[p] = kMask;
      const int count = neighbours.of(p, nb);
      for (int j = 0; j < count; ++j) {
        if (lab[nb[j]] > 0 || lab[nb[j]] == kWshed) {
          dist[p] = 1;
          fifo.push_back(p);
          break;
        }
      }
    }

    std::uint32_t current_dist = 1;
    fifo.push_back(kFictitious);
    while (true) {
      std::size_t p = fifo.front();
      fifo.pop_front();
      if (p == kFictitious) {
        if (fifo.empty()) break;
        fifo.push_back(kFictitious);
        ++current_dist;
        p = fifo.front();
        fifo.pop_front();
      }

      // Label from the previous wavefront; a same-wavefront neighbour that
      // already carries a different label is a conflict too.
      std::int64_t label = kWshed;
      bool conflict = false;
      const int count = neighbours.of(p, nb);
      for (int j = 0; j < count; ++j) {
        const std::size_t q = nb[j];
        const std::int64_t lq = lab[q];
        if (lq > 0 && dist[q] < current_dist) {
          if (label == kWshed) {
            label = lq;
          } else if (label != lq) {
            conflict = true;
          }
        } else if (lq == kMask && dist[q] == 0) {
          dist[q] = current_dist + 1;
          fifo.push_back(q);
        }
      }
      if (!conflict && label > 0) {
        for (int j = 0; j < count; ++j) {
          const std::int64_t lq = lab[nb[j]];
          if (lq > 0 && lq != label) conflict = true;
        }
      }
      lab[p] = conflict ? kWshed : label;
    }

    // Pixels of this level not reached from existing basins are new minima.
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t p = order[k];
      dist[p] = 0;
      if (lab[p] != kMask) continue;
      ++current_label;
      lab[p] = current_label;
      fifo.push_back(p);
      while (!fifo.empty()) {
        const std::size_t q = fifo.front();
        fifo.pop_front();
        const int count = neighbours.of(q, nb);
        for (int j = 0; j < count; ++j) {
          if (lab[nb[j]] == kMask) {
            lab[nb[j]] = current_label;
            fifo.push_back(nb[j]);
          }
        }
      }
    }
  }

  absorb_one_sided_dams(lab, width, height);

  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(lab[i]);
  return LabelField(width, height, std::move(labels));
}

}  // namespace damburst
