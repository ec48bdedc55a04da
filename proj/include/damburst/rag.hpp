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

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "damburst/gradient.hpp"
#include "damburst/types.hpp"

namespace damburst {

using RegionId = Label;

/// A water-pool: statistics accumulated over its interior (non-dam) pixels.
struct Region {
  RegionId id = 0;
  std::size_t pixel_count = 0;
  double gradient_sum = 0.0;
  std::vector<double> channel_sums;
  bool alive = false;

  double mean(std::size_t channel) const { return channel_sums[channel] / static_cast<double>(pixel_count); }
};

/// Boundary between two regions: the dam pixels whose 8-neighbourhood holds
/// both labels. `pixels` is sorted and duplicate-free; `strengthened` counts
/// those with an edge pixel at or next to them.
struct Dam {
  RegionId a = 0;  // a < b
  RegionId b = 0;
  std::size_t strengthened = 0;
  std::vector<std::uint32_t> pixels;

  std::size_t length() const { return pixels.size(); }
};

/// Merging order: mean gradient magnitude inside the region.
double mo(const Region& region);

/// strengthened / length, in [0, 1].
double dam_strength(const Dam& dam);

/// Euclidean distance between per-channel mean intensities.
double ind(const Region& a, const Region& b);

/// Region adjacency graph over a watershed partition. Adjacency exists only
/// through dam pixels.
class RegionGraph {
 public:
  RegionGraph() = default;

  /// Throws InvalidArgument when the inputs differ in size.
  static RegionGraph build(const LabelField& labels, const GradientField& gradient, const Raster& raster,
                           const EdgeMap& edges);

  Extent extent() const { return extent_; }
  std::size_t channels() const { return channels_; }

  /// Largest region id ever present (ids run 1..max_id; gaps are dead).
  RegionId max_id() const { return static_cast<RegionId>(regions_.size() - 1); }
  bool contains(RegionId id) const { return id >= 1 && id < regions_.size() && regions_[id].alive; }
  const Region& region(RegionId id) const;

  std::size_t alive_count() const { return alive_count_; }
  /// Alive region ids, ascending.
  std::vector<RegionId> alive_regions() const;

  /// Neighbours of an alive region, ascending.
  std::span<const RegionId> neighbours(RegionId id) const;
  const Dam* dam(RegionId x, RegionId y) const;
  /// All dams ordered by (a, b).
  std::vector<const Dam*> dams() const;

  /// Mean strength of the region's dams whose strength exceeds t_c; 0 when
  /// none does.
  double rsi(RegionId id, double t_c) const;

  /// Absorbs `absorbed` into `survivor`: sums add, their shared dam is
  /// removed, dams towards common neighbours are united. Returns survivor.
  /// Throws InvalidArgument for dead or non-adjacent regions.
  RegionId merge(RegionId survivor, RegionId absorbed);

  /// Region that `id` was eventually absorbed into (itself when alive).
  RegionId root(RegionId id) const;

  std::size_t dam_pixel_total() const { return dam_pixel_total_; }
  bool pixel_strengthened(std::size_t index) const { return strengthened_[index] != 0; }

 private:
  static std::uint64_t key(RegionId x, RegionId y);
  Dam* find_dam(RegionId x, RegionId y);
  void link(RegionId x, RegionId y);
  void unlink(RegionId x, RegionId y);

  Extent extent_;
  std::size_t channels_ = 1;
  std::size_t alive_count_ = 0;
  std::size_t dam_pixel_total_ = 0;
  std::vector<Region> regions_;  // index = id, slot 0 unused
  std::vector<RegionId> parent_;
  std::vector<std::vector<RegionId>> adjacency_;
  std::unordered_map<std::uint64_t, Dam> dams_;
  std::vector<std::uint8_t> strengthened_;
};

/// Free-function spellings of the graph queries.
inline double rsi(const RegionGraph& graph, RegionId id, double t_c) { return graph.rsi(id, t_c); }
inline double ind(const RegionGraph& graph, RegionId x, RegionId y) {
  return ind(graph.region(x), graph.region(y));
}

}  // namespace damburst
