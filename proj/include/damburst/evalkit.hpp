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
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "damburst/canny.hpp"
#include "damburst/gradient.hpp"
#include "damburst/rag.hpp"
#include "damburst/types.hpp"

namespace damburst::evalkit {

struct SyntheticScene {
  Raster raster;
  LabelField ground_truth;  // dense 1..K, no dam pixels
  std::vector<std::string> warnings;
};

/// Counter-based N(0,1) sample: a pure function of (seed, counter).
double gaussian_noise(std::uint64_t seed, std::uint64_t counter);

/// Vertical bands of the given intensities (equal widths, the last band
/// takes the remainder) plus rounded Gaussian noise of sd `noise_sigma`.
/// Warns when a band is narrower than 2 * box_width.
SyntheticScene gen_step_scene(std::size_t width, std::size_t height, const std::vector<int>& intensities,
                              double noise_sigma, std::uint64_t seed = 0, int box_width = 5);

/// Flat patch (left half) beside a checkerboard of `period` x `period`
/// pixel cells (right half). Checker cells alternate between 40 and
/// 40 + amplitude (amplitude in [0, 215]); the flat patch sits 100 above
/// the checker mean. Ground truth: 1 = flat, 2 = texture.
SyntheticScene gen_texture_scene(std::size_t width, std::size_t height, std::size_t period, int amplitude);

/// Column where the texture patch of gen_texture_scene starts.
inline std::size_t texture_patch_begin(std::size_t width) { return width / 2; }

void write_scene(const SyntheticScene& scene, const std::filesystem::path& dir, const std::string& stem);

// ---------------------------------------------------------------------------
// Quality metrics
// ---------------------------------------------------------------------------

struct BoundaryDistanceStats {
  std::size_t count = 0;  // ground-truth boundary pixels
  double mean = 0.0;
  double max = 0.0;  // +inf when the prediction has no boundary at all
};

struct GroundTruthComparison {
  /// Sum over gt segments of max(0, predicted regions whose majority lies in it - 1).
  std::size_t over_seg_count = 0;
  /// Predicted regions with >= 10% of their area in each of >= 2 gt segments.
  std::vector<Label> under_seg_regions;
  BoundaryDistanceStats boundary;
};

/// Dam pixels in `pred` belong to no predicted region; they count as
/// predicted boundary.
GroundTruthComparison compare_to_ground_truth(const LabelField& pred, const LabelField& gt);

// ---------------------------------------------------------------------------
// Independent region-graph oracle
// ---------------------------------------------------------------------------

struct OracleRegion {
  std::size_t pixel_count = 0;
  double gradient_sum = 0.0;
  std::vector<double> channel_sums;
};

struct OracleDam {
  std::size_t length = 0;
  std::size_t strengthened = 0;
};

struct OracleGraph {
  std::map<Label, OracleRegion> regions;
  std::map<std::pair<Label, Label>, OracleDam> dams;
};

/// Naive full-image rebuild of the region graph: per-pixel scans with no
/// incremental structure. Label ids need not be dense.
OracleGraph rebuild_oracle(const LabelField& labels, const GradientField& gradient, const Raster& raster,
                           const EdgeMap& edges);

/// Labels rewritten to the graph's surviving roots (dams stay 0).
LabelField substitute_labels(const LabelField& labels, const RegionGraph& graph);

/// Field-by-field comparison. Integer counts must match exactly, real sums
/// within `rel_tol` relative. Returns one message per mismatch.
std::vector<std::string> compare_with_oracle(const RegionGraph& graph, const OracleGraph& oracle,
                                             double rel_tol = 1e-9);

// ---------------------------------------------------------------------------
// Hand-built fixtures
// ---------------------------------------------------------------------------

/// Two flat bands (50 | 200) split into four basins: a vertical dam column
/// on the true boundary (fully covered by edges) and one horizontal dam row
/// per band (no edges). Ground truth puts the boundary column in the right
/// band, matching its colour.
struct FourBasinFixture {
  Raster raster;
  LabelField labels;
  GradientField gradient;
  EdgeMap edges;
  LabelField ground_truth;
};

FourBasinFixture make_four_basin_fixture(std::size_t size = 16);

/// Two partitions are equal up to renaming of labels.
bool same_partition(const LabelField& a, const LabelField& b);

/// Connected components of the set pixels of `mask`.
std::size_t count_components(const EdgeMap& mask, bool eight_connected = true);

}  // namespace damburst::evalkit
