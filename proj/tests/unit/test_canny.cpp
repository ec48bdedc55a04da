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

#include <algorithm>
#include <deque>

#include "damburst/canny.hpp"
#include "damburst/evalkit.hpp"
#include "damburst/raster_io.hpp"
#include "test_util.hpp"

namespace damburst {
namespace {

CandidateSet candidates_from(std::size_t w, std::size_t h, const std::vector<std::pair<std::size_t, double>>& list) {
  CandidateSet c{{w, h}, {}};
  for (auto [i, m] : list) c.pixels.push_back({i, m});
  return c;
}

// Edges reachable from strong pixels through weak ones, by plain flood fill.
EdgeMap bfs_oracle(const CandidateSet& c, Thresholds t) {
  const std::size_t w = c.extent.width;
  const std::size_t h = c.extent.height;
  std::vector<double> mag(w * h, -1.0);
  for (const auto& p : c.pixels) mag[p.index] = p.magnitude;
  EdgeMap out(w, h);
  std::deque<std::size_t> q;
  for (std::size_t i = 0; i < w * h; ++i)
    if (mag[i] >= t.high) {
      out.set(i);
      q.push_back(i);
    }
  while (!q.empty()) {
    const std::size_t i = q.front();
    q.pop_front();
    for (std::size_t j = 0; j < w * h; ++j) {
      const long dx = static_cast<long>(j % w) - static_cast<long>(i % w);
      const long dy = static_cast<long>(j / w) - static_cast<long>(i / w);
      if (std::abs(dx) <= 1 && std::abs(dy) <= 1 && !out.test(j) && mag[j] >= t.low) {
        out.set(j);
        q.push_back(j);
      }
    }
  }
  return out;
}

TEST(CannyParams, Validation) {
  EXPECT_NO_THROW((CannyParams{0.3, 0.21}.validate()));
  EXPECT_NO_THROW((CannyParams{0.3, 0.3}.validate()));
  EXPECT_THROW((CannyParams{0.2, 0.3}.validate()), InvalidArgument);
  EXPECT_THROW((CannyParams{1.2, 0.3}.validate()), InvalidArgument);
  EXPECT_THROW((CannyParams{0.3, 0.0}.validate()), InvalidArgument);
}

TEST(Nms, ConstantFieldHasNoCandidates) {
  EXPECT_TRUE(nms(haar_gradient(ScalarField(20, 20, 3.0), BoxWidth(5))).empty());
}

TEST(Nms, SingleColumnStepGivesOnePixelLine) {
  // 0 ... 0 | 50 | 100 ... 100: the gradient peaks strictly at the middle column.
  ScalarField f(30, 12);
  for (std::size_t y = 0; y < 12; ++y)
    for (std::size_t x = 15; x < 30; ++x) f.at(x, y) = x == 15 ? 50.0 : 100.0;
  for (int w : BoxWidth::kRecommended) {
    const CandidateSet c = nms(haar_gradient(f, BoxWidth(w)));
    ASSERT_EQ(c.size(), 12u) << "w=" << w;
    for (const auto& p : c.pixels) EXPECT_EQ(p.index % 30, 15u);
  }
  const CandidateSet s = nms(sobel_gradient(f));
  ASSERT_EQ(s.size(), 12u);
  for (const auto& p : s.pixels) EXPECT_EQ(p.index % 30, 15u);
}

TEST(Nms, IsolatedBrightPixel) {
  ScalarField f(11, 11);
  f.at(5, 5) = 255.0;
  const CandidateSet c = nms(sobel_gradient(f));
  EXPECT_EQ(c.size(), 8u);
  for (const auto& p : c.pixels) {
    const long dx = static_cast<long>(p.index % 11) - 5;
    const long dy = static_cast<long>(p.index / 11) - 5;
    EXPECT_LE(std::max(std::abs(dx), std::abs(dy)), 1);
  }
}

TEST(Nms, TiesRetainedAndBordersCountAsZero) {
  // Plain step: the Haar gradient forms a two-pixel plateau; both survive.
  ScalarField f(20, 6);
  for (std::size_t y = 0; y < 6; ++y)
    for (std::size_t x = 10; x < 20; ++x) f.at(x, y) = 100.0;
  const CandidateSet c = nms(haar_gradient(f, BoxWidth(5)));
  EXPECT_EQ(c.size(), 12u);
  for (const auto& p : c.pixels) EXPECT_TRUE(p.index % 20 == 9 || p.index % 20 == 10);
}

TEST(Percentile, TopKOfTen) {
  std::vector<std::pair<std::size_t, double>> list;
  for (std::size_t i = 0; i < 10; ++i) list.emplace_back(i, static_cast<double>(i + 1));
  const auto c = candidates_from(10, 1, list);
  auto t = percentile_thresholds(c, {0.2, 0.2});
  ASSERT_TRUE(t);
  EXPECT_EQ(t->high, 9.0);
  EXPECT_EQ(t->low, t->high);
  t = percentile_thresholds(c, {0.55, 0.05});
  EXPECT_EQ(t->high, 10.0);  // ceil(0.5) = 1
  EXPECT_EQ(t->low, 5.0);    // ceil(5.5) = 6
  t = percentile_thresholds(c, {1.0, 0.01});
  EXPECT_EQ(t->low, 1.0);
  EXPECT_FALSE(percentile_thresholds(CandidateSet{{3, 3}, {}}, {0.3, 0.2}));
}

TEST(Percentile, MatchesSortOracle) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> val(0.1, 500.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<std::size_t, double>> list;
    for (std::size_t i = 0; i < 1000; ++i) list.emplace_back(i, val(rng));
    const auto c = candidates_from(1000, 1, list);
    const auto t = percentile_thresholds(c, {0.30, 0.21});
    ASSERT_TRUE(t);
    const auto at_least = [&](double g) {
      return std::count_if(list.begin(), list.end(), [&](auto& p) { return p.second >= g; });
    };
    EXPECT_EQ(at_least(t->low), 300);
    EXPECT_EQ(at_least(t->high), 210);
    EXPECT_LE(t->low, t->high);
  }
}

TEST(Hysteresis, AllStrongAndNoneStrong) {
  const auto c = candidates_from(4, 4, {{0, 5.0}, {5, 6.0}, {15, 7.0}});
  EdgeMap e = hysteresis(c, {1.0, 2.0});
  EXPECT_EQ(e.count(), 3u);
  e = hysteresis(c, {1.0, 100.0});
  EXPECT_EQ(e.count(), 0u);
  EXPECT_THROW(hysteresis(c, {3.0, 2.0}), InvalidArgument);
}

TEST(Hysteresis, ChainStopsAtGap) {
  // Row 2 of a 5x5: strong, weak, weak, (gap), weak. Plus a stray weak at (4,4).
  const auto c = candidates_from(5, 5, {{10, 9.0}, {11, 4.0}, {12, 4.0}, {14, 4.0}, {24, 4.0}});
  const EdgeMap e = hysteresis(c, {3.0, 8.0});
  EXPECT_TRUE(e.test(10));
  EXPECT_TRUE(e.test(11));
  EXPECT_TRUE(e.test(12));
  EXPECT_FALSE(e.test(14));
  EXPECT_FALSE(e.test(24));
  EXPECT_EQ(e, bfs_oracle(c, {3.0, 8.0}));
}

TEST(Canny, ConstantAndTwoRegionStep) {
  EXPECT_EQ(canny(ScalarField(32, 32, 10.0), BoxWidth(5), {}).count(), 0u);
  const auto scene = evalkit::gen_step_scene(64, 48, {50, 200}, 0.0);
  const EdgeMap e = canny(to_luminance(scene.raster), BoxWidth(5), {});
  EXPECT_GT(e.count(), 0u);
  EXPECT_EQ(evalkit::count_components(e), 1u);
}

TEST(Canny, ContractOnRandomAndNaturalInputs) {
  std::mt19937_64 rng(42);
  std::vector<ScalarField> inputs;
  for (int k = 0; k < 8; ++k) inputs.push_back(testing::random_integer_field(rng, 40, 30, 0, 255));
  inputs.push_back(to_luminance(load_image(std::filesystem::path(DAMBURST_TEST_DATA) / "astronaut_481x321.png")));
  for (const ScalarField& f : inputs) {
    const CannyResult r = canny_detail(haar_gradient(f, BoxWidth(5)), {0.30, 0.21});
    ASSERT_TRUE(r.thresholds);
    EdgeMap weak(f.width(), f.height());
    EdgeMap strong(f.width(), f.height());
    for (const auto& p : r.candidates.pixels) {
      if (p.magnitude >= r.thresholds->low) weak.set(p.index);
      if (p.magnitude >= r.thresholds->high) strong.set(p.index);
    }
    for (std::size_t i = 0; i < weak.bits().size(); ++i) {
      if (strong.test(i)) {
        EXPECT_TRUE(r.edges.test(i));
      }
      if (r.edges.test(i)) {
        EXPECT_TRUE(weak.test(i));
      }
    }
    EXPECT_EQ(r.edges, bfs_oracle(r.candidates, *r.thresholds));
  }
}

TEST(Canny, MonotoneInHighFraction) {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 5; ++k) {
    const GradientField g = haar_gradient(testing::random_integer_field(rng, 48, 48, 0, 255), BoxWidth(5));
    std::size_t previous = 0;
    for (double th : {0.05, 0.1, 0.2, 0.3, 0.45}) {
      const EdgeMap e = canny_detail(g, {0.45, th}).edges;
      EXPECT_GE(e.count(), previous);
      previous = e.count();
    }
  }
}

TEST(Canny, DeterministicForTableRow) {
  const ScalarField f = to_luminance(load_image(std::filesystem::path(DAMBURST_TEST_DATA) / "astronaut_481x321.png"));
  const EdgeMap a = canny(f, BoxWidth(9), {0.450, 0.290});
  const EdgeMap b = canny(f, BoxWidth(9), {0.450, 0.290});
  EXPECT_EQ(a, b);
  EXPECT_GT(a.count(), 0u);
}

}  // namespace
}  // namespace damburst
