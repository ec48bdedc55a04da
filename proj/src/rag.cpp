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

#include "damburst/rag.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <tuple>

namespace damburst {

double mo(const Region& region) { return region.gradient_sum / static_cast<double>(region.pixel_count); }

double dam_strength(const Dam& dam) {
  return static_cast<double>(dam.strengthened) / static_cast<double>(dam.length());
}

double ind(const Region& a, const Region& b) {
  double sum = 0.0;
  for (std::size_t c = 0; c < a.channel_sums.size(); ++c) {
    const double d = a.mean(c) - b.mean(c);
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::uint64_t RegionGraph::key(RegionId x, RegionId y) {
  if (x > y) std::swap(x, y);
  return (static_cast<std::uint64_t>(x) << 32) | y;
}

RegionGraph RegionGraph::build(const LabelField& labels, const GradientField& gradient, const Raster& raster,
                               const EdgeMap& edges) {
  const Extent extent = labels.extent();
  if (gradient.extent() != extent || raster.extent() != extent || edges.extent() != extent)
    throw InvalidArgument("rag: labels, gradient, raster and edges must share dimensions");

  const std::size_t width = extent.width;
  const std::size_t height = extent.height;
  const std::size_t channels = raster.channels();
  const Label max_label = labels.max_label();

  RegionGraph g;
  g.extent_ = extent;
  g.channels_ = channels;
  g.regions_.resize(static_cast<std::size_t>(max_label) + 1);
  g.parent_.resize(static_cast<std::size_t>(max_label) + 1);
  g.adjacency_.resize(static_cast<std::size_t>(max_label) + 1);
  for (RegionId id = 0; id <= max_label; ++id) {
    g.regions_[id].id = id;
    g.regions_[id].channel_sums.assign(channels, 0.0);
    g.parent_[id] = id;
  }

  const auto ids = labels.labels();
  const auto mag = gradient.magnitude.values();
  const auto samples = raster.samples();

  // Interior statistics.
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == kDamLabel) continue;
    Region& r = g.regions_[ids[i]];
    ++r.pixel_count;
    r.gradient_sum += mag[i];
    for (std::size_t c = 0; c < channels; ++c) r.channel_sums[c] += samples[i * channels + c];
  }
  for (RegionId id = 1; id <= max_label; ++id) {
    if (g.regions_[id].pixel_count > 0) {
      g.regions_[id].alive = true;
      ++g.alive_count_;
    }
  }

  // Strengthened flag: edge pixel at or 8-adjacent to the pixel.
  g.strengthened_.assign(ids.size(), 0);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      if (!edges.at(x, y)) continue;
      const std::size_t y0 = y == 0 ? 0 : y - 1;
      const std::size_t x0 = x == 0 ? 0 : x - 1;
      for (std::size_t ny = y0; ny <= std::min(y + 1, height - 1); ++ny)
        for (std::size_t nx = x0; nx <= std::min(x + 1, width - 1); ++nx) g.strengthened_[ny * width + nx] = 1;
    }
  }

  // Dams: every pair of distinct labels in a dam pixel's 8-neighbourhood.
  std::vector<RegionId> present;
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t i = y * width + x;
      if (ids[i] != kDamLabel) continue;
      ++g.dam_pixel_total_;
      present.clear();
      const std::size_t y0 = y == 0 ? 0 : y - 1;
      const std::size_t x0 = x == 0 ? 0 : x - 1;
      for (std::size_t ny = y0; ny <= std::min(y + 1, height - 1); ++ny)
        for (std::size_t nx = x0; nx <= std::min(x + 1, width - 1); ++nx)
          if (ids[ny * width + nx] != kDamLabel) present.push_back(ids[ny * width + nx]);
      std::sort(present.begin(), present.end());
      present.erase(std::unique(present.begin(), present.end()), present.end());
      for (std::size_t a = 0; a < present.size(); ++a) {
        for (std::size_t b = a + 1; b < present.size(); ++b) {
          Dam& dam = g.dams_[key(present[a], present[b])];
          if (dam.pixels.empty()) {
            dam.a = present[a];
            dam.b = present[b];
            g.link(present[a], present[b]);
          }
          dam.pixels.push_back(static_cast<std::uint32_t>(i));
          dam.strengthened += g.strengthened_[i];
        }
      }
    }
  }
  return g;
}

const Region& RegionGraph::region(RegionId id) const {
  if (id >= regions_.size()) throw InvalidArgument("rag: unknown region " + std::to_string(id));
  return regions_[id];
}

std::vector<RegionId> RegionGraph::alive_regions() const {
  std::vector<RegionId> out;
  out.reserve(alive_count_);
  for (RegionId id = 1; id < regions_.size(); ++id)
    if (regions_[id].alive) out.push_back(id);
  return out;
}

std::span<const RegionId> RegionGraph::neighbours(RegionId id) const {
  if (!contains(id)) throw InvalidArgument("rag: region " + std::to_string(id) + " is not alive");
  return adjacency_[id];
}

const Dam* RegionGraph::dam(RegionId x, RegionId y) const {
  const auto it = dams_.find(key(x, y));
  return it == dams_.end() ? nullptr : &it->second;
}

Dam* RegionGraph::find_dam(RegionId x, RegionId y) {
  const auto it = dams_.find(key(x, y));
  return it == dams_.end() ? nullptr : &it->second;
}

std::vector<const Dam*> RegionGraph::dams() const {
  std::vector<const Dam*> out;
  out.reserve(dams_.size());
  for (const auto& [k, d] : dams_) out.push_back(&d);
  std::sort(out.begin(), out.end(), [](const Dam* l, const Dam* r) { return std::tie(l->a, l->b) < std::tie(r->a, r->b); });
  return out;
}

double RegionGraph::rsi(RegionId id, double t_c) const {
  double sum = 0.0;
  std::size_t count = 0;
  for (RegionId n : neighbours(id)) {
    const double c = dam_strength(*dam(id, n));
    if (c > t_c) {
      sum += c;
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

void RegionGraph::link(RegionId x, RegionId y) {
  auto insert = [](std::vector<RegionId>& v, RegionId id) {
    const auto it = std::lower_bound(v.begin(), v.end(), id);
    if (it == v.end() || *it != id) v.insert(it, id);
  };
  insert(adjacency_[x], y);
  insert(adjacency_[y], x);
}

void RegionGraph::unlink(RegionId x, RegionId y) {
  auto erase = [](std::vector<RegionId>& v, RegionId id) {
    const auto it = std::lower_bound(v.begin(), v.end(), id);
    if (it != v.end() && *it == id) v.erase(it);
  };
  erase(adjacency_[x], y);
  erase(adjacency_[y], x);
}

RegionId RegionGraph::merge(RegionId survivor, RegionId absorbed) {
  if (survivor == absorbed) throw InvalidArgument("rag: cannot merge a region with itself");
  if (!contains(survivor) || !contains(absorbed)) throw InvalidArgument("rag: merge of a dead region");
  if (find_dam(survivor, absorbed) == nullptr) throw InvalidArgument("rag: merge of non-adjacent regions");

  Region& s = regions_[survivor];
  Region& a = regions_[absorbed];
  s.pixel_count += a.pixel_count;
  s.gradient_sum += a.gradient_sum;
  for (std::size_t c = 0; c < channels_; ++c) s.channel_sums[c] += a.channel_sums[c];

  dams_.erase(key(survivor, absorbed));
  unlink(survivor, absorbed);

  const std::vector<RegionId> moved = adjacency_[absorbed];
  for (RegionId n : moved) {
    auto node = dams_.extract(key(absorbed, n));
    Dam& from = node.mapped();
    unlink(absorbed, n);
    if (Dam* into = find_dam(survivor, n)) {
      std::vector<std::uint32_t> united;
      united.reserve(into->pixels.size() + from.pixels.size());
      std::set_union(into->pixels.begin(), into->pixels.end(), from.pixels.begin(), from.pixels.end(),
                     std::back_inserter(united));
      std::size_t strengthened = 0;
      for (std::uint32_t p : united) strengthened += strengthened_[p];
      into->pixels = std::move(united);
      into->strengthened = strengthened;
    } else {
      from.a = std::min(survivor, n);
      from.b = std::max(survivor, n);
      dams_.emplace(key(survivor, n), std::move(from));
      link(survivor, n);
    }
  }

  a.alive = false;
  a.pixel_count = 0;
  a.gradient_sum = 0.0;
  std::fill(a.channel_sums.begin(), a.channel_sums.end(), 0.0);
  parent_[absorbed] = survivor;
  --alive_count_;
  return survivor;
}

RegionId RegionGraph::root(RegionId id) const {
  if (id >= parent_.size()) throw InvalidArgument("rag: unknown region " + std::to_string(id));
  while (parent_[id] != id) id = parent_[id];
  return id;
}

}  // namespace damburst
