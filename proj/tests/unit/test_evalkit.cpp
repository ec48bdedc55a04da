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


#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "damburst/evalkit.hpp"
#include "damburst/raster_io.hpp"
#include "damburst/watershed.hpp"
#include "test_util.hpp"

namespace damburst {
namespace {

using namespace evalkit;

// Nearest predicted-boundary distance by exhaustive search.
double brute_distance(const LabelField& pred, std::size_t px, std::size_t py) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t w = pred.width(), h = pred.height();
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      const Label v = pred.at(x, y);
      const bool b = v == kDamLabel || (x > 0 && pred.at(x - 1, y) != v) || (x + 1 < w && pred.at(x + 1, y) != v) ||
                     (y > 0 && pred.at(x, y - 1) != v) || (y + 1 < h && pred.at(x, y + 1) != v);
      if (b) best = std::min(best, std::hypot(double(x) - double(px), double(y) - double(py)));
    }
  return best;
}

TEST(StepScene, ExactTwoLevels) {
  const SyntheticScene s = gen_step_scene(40, 10, {50, 200}, 0.0);
  for (std::size_t y = 0; y < 10; ++y)
    for (std::size_t x = 0; x < 40; ++x) {
      EXPECT_EQ(s.raster.at(x, y), x < 20 ? 50 : 200);
      EXPECT_EQ(s.ground_truth.at(x, y), x < 20 ? 1u : 2u);
    }
  EXPECT_TRUE(s.warnings.empty());
}

TEST(StepScene, DeterministicAndLastBandTakesRemainder) {
  const SyntheticScene a = gen_step_scene(50, 20, {10, 90, 170}, 3.0, 5);
  const SyntheticScene b = gen_step_scene(50, 20, {10, 90, 170}, 3.0, 5);
  EXPECT_EQ(a.raster, b.raster);
  EXPECT_NE(a.raster, gen_step_scene(50, 20, {10, 90, 170}, 3.0, 6).raster);
  EXPECT_EQ(a.ground_truth.at(47, 0), 3u);
  EXPECT_EQ(a.ground_truth.at(31, 0), 2u);
  EXPECT_EQ(a.ground_truth.at(32, 0), 3u);
}

TEST(StepScene, NoiseStatistics) {
  const SyntheticScene s = gen_step_scene(128, 64, {60, 180}, 2.0, 11);
  for (std::size_t band = 0; band < 2; ++band) {
    double sum = 0.0;
    for (std::size_t y = 0; y < 64; ++y)
      for (std::size_t x = 64 * band; x < 64 * (band + 1); ++x) sum += s.raster.at(x, y);
    EXPECT_NEAR(sum / (64.0 * 64.0), band == 0 ? 60.0 : 180.0, 1.0);
  }
  double m = 0.0, v = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) m += gaussian_noise(3, k);
  m /= n;
  for (int k = 0; k < n; ++k) v += (gaussian_noise(3, k) - m) * (gaussian_noise(3, k) - m);
  EXPECT_NEAR(m, 0.0, 0.05);
  EXPECT_NEAR(v / n, 1.0, 0.05);
}

TEST(StepScene, WarningsAndErrors) {
  EXPECT_FALSE(gen_step_scene(27, 10, {1, 2, 3}, 0.0, 0, 5).warnings.empty());
  EXPECT_TRUE(gen_step_scene(30, 10, {1, 2, 3}, 0.0, 0, 5).warnings.empty());
  EXPECT_THROW(gen_step_scene(30, 10, {1}, 0.0), InvalidArgument);
  EXPECT_THROW(gen_step_scene(30, 10, {1, 2}, -1.0), InvalidArgument);
}

TEST(TextureScene, Construction) {
  const SyntheticScene s = gen_texture_scene(40, 12, 3, 100);
  EXPECT_EQ(s.raster.width(), 40u);
  EXPECT_EQ(s.raster.height(), 12u);
  EXPECT_EQ(s.ground_truth.extent(), s.raster.extent());
  EXPECT_EQ(s.raster, gen_texture_scene(40, 12, 3, 100).raster);
  for (std::size_t y = 0; y < 12; ++y)
    for (std::size_t x = 0; x < 40; ++x) {
      if (x < 20) {
        EXPECT_EQ(s.raster.at(x, y), 190);
        EXPECT_EQ(s.ground_truth.at(x, y), 1u);
      } else {
        const bool high = ((x - 20) / 3 + y / 3) % 2 == 1;
        EXPECT_EQ(s.raster.at(x, y), high ? 140 : 40);
        EXPECT_EQ(s.ground_truth.at(x, y), 2u);
      }
    }
  EXPECT_EQ(gen_texture_scene(8, 8, 2, 215).raster.at(0, 0), 248);
  EXPECT_THROW(gen_texture_scene(40, 12, 1, 100), InvalidArgument);
}

TEST(Compare, IdenticalPartition) {
  const SyntheticScene s = gen_step_scene(48, 16, {50, 120, 200}, 0.0);
  const GroundTruthComparison c = compare_to_ground_truth(s.ground_truth, s.ground_truth);
  EXPECT_EQ(c.over_seg_count, 0u);
  EXPECT_TRUE(c.under_seg_regions.empty());
  EXPECT_GT(c.boundary.count, 0u);
  EXPECT_EQ(c.boundary.mean, 0.0);
  EXPECT_EQ(c.boundary.max, 0.0);
  EXPECT_THROW(compare_to_ground_truth(s.ground_truth, LabelField(3, 3, 1)), InvalidArgument);
}

TEST(Compare, RawWatershedOverSegments) {
  const SyntheticScene s = gen_step_scene(64, 48, {50, 200}, 4.0, 1);
  const LabelField ws = watershed(haar_gradient(to_luminance(s.raster), BoxWidth(5)));
  const GroundTruthComparison c = compare_to_ground_truth(ws, s.ground_truth);
  EXPECT_GT(c.over_seg_count, 0u);
  EXPECT_TRUE(c.under_seg_regions.empty());
}

TEST(Compare, SingleRegionUnderSegments) {
  const SyntheticScene s = gen_step_scene(64, 48, {50, 200}, 0.0);
  const GroundTruthComparison c = compare_to_ground_truth(LabelField(64, 48, 1), s.ground_truth);
  EXPECT_EQ(c.under_seg_regions, std::vector<Label>{1});
  EXPECT_EQ(c.over_seg_count, 0u);
  EXPECT_TRUE(std::isinf(c.boundary.max));
}

TEST(Compare, BoundaryDistanceMatchesBruteForce) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const Raster r = testing::random_raster(rng, 24, 18, 1);
    const LabelField pred = watershed(haar_gradient(to_luminance(r), BoxWidth(7)));
    const SyntheticScene gt = gen_step_scene(24, 18, {10, 100, 200}, 0.0, 0, 1);
    const GroundTruthComparison c = compare_to_ground_truth(pred, gt.ground_truth);
    double sum = 0.0, max = 0.0;
    std::size_t count = 0;
    for (std::size_t y = 0; y < 18; ++y)
      for (std::size_t x = 0; x < 24; ++x) {
        const Label v = gt.ground_truth.at(x, y);
        const bool b = (x > 0 && gt.ground_truth.at(x - 1, y) != v) || (x + 1 < 24 && gt.ground_truth.at(x + 1, y) != v);
        if (!b) continue;
        const double d = brute_distance(pred, x, y);
        sum += d;
        max = std::max(max, d);
        ++count;
      }
    EXPECT_EQ(c.boundary.count, count);
    EXPECT_NEAR(c.boundary.mean, sum / count, 1e-12);
    EXPECT_NEAR(c.boundary.max, max, 1e-12);
  }
}

TEST(Oracle, EmptyMergeEqualsBuild) {
  const auto f = make_four_basin_fixture();
  const RegionGraph g = RegionGraph::build(f.labels, f.gradient, f.raster, f.edges);
  EXPECT_TRUE(compare_with_oracle(g, rebuild_oracle(f.labels, f.gradient, f.raster, f.edges)).empty());
  EXPECT_EQ(substitute_labels(f.labels, g), f.labels);
  EXPECT_THROW(rebuild_oracle(f.labels, f.gradient, Raster(3, 3, 1), f.edges), InvalidArgument);
}

TEST(Oracle, DetectsDivergence) {
  const auto f = make_four_basin_fixture();
  RegionGraph g = RegionGraph::build(f.labels, f.gradient, f.raster, f.edges);
  const auto before = rebuild_oracle(f.labels, f.gradient, f.raster, f.edges);
  g.merge(1, 2);
  EXPECT_FALSE(compare_with_oracle(g, before).empty());
}

TEST(FourBasin, Layout) {
  const auto f = make_four_basin_fixture(16);
  EXPECT_EQ(f.labels.max_label(), 4u);
  EXPECT_EQ(f.labels.at(8, 3), kDamLabel);
  EXPECT_EQ(f.labels.at(3, 8), kDamLabel);
  EXPECT_EQ(f.edges.count(), 16u);
  EXPECT_EQ(f.ground_truth.at(8, 0), 2u);
  EXPECT_EQ(f.ground_truth.at(7, 0), 1u);
}

TEST(Partition, SamePartitionAndComponents) {
  EXPECT_TRUE(same_partition(LabelField(3, 1, {1, 1, 2}), LabelField(3, 1, {7, 7, 4})));
  EXPECT_FALSE(same_partition(LabelField(3, 1, {1, 1, 2}), LabelField(3, 1, {7, 4, 4})));
  EXPECT_FALSE(same_partition(LabelField(3, 1, {1, 2, 2}), LabelField(3, 1, {7, 7, 7})));
  EXPECT_FALSE(same_partition(LabelField(3, 1, {1, 1, 1}), LabelField(1, 3, {1, 1, 1})));

  EdgeMap e(4, 4);
  e.set(0, 0);
  e.set(1, 1);
  e.set(3, 3);
  EXPECT_EQ(count_components(e, true), 2u);
  EXPECT_EQ(count_components(e, false), 3u);
}

TEST(Scene, WritesPngAndGroundTruth) {
  const auto dir = testing::scratch_dir("scene");
  const SyntheticScene s = gen_step_scene(20, 8, {30, 220}, 1.0, 2);
  write_scene(s, dir, "step");
  EXPECT_EQ(load_image(dir / "step.png"), s.raster);
  EXPECT_EQ(read_label_map(dir / "step_gt.dblm"), s.ground_truth);
}

}  // namespace
}  // namespace damburst
