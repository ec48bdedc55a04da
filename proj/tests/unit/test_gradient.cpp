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
#include <cmath>

#include "damburst/evalkit.hpp"
#include "damburst/gradient.hpp"
#include "damburst/raster_io.hpp"
#include "test_util.hpp"

namespace damburst {
namespace {

ScalarField vertical_step(std::size_t w, std::size_t h, std::size_t split, double height) {
  ScalarField f(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = split; x < w; ++x) f.at(x, y) = height;
  return f;
}

ScalarField flip_x(const ScalarField& f) {
  ScalarField out(f.width(), f.height());
  for (std::size_t y = 0; y < f.height(); ++y)
    for (std::size_t x = 0; x < f.width(); ++x) out.at(f.width() - 1 - x, y) = f.at(x, y);
  return out;
}

ScalarField transpose(const ScalarField& f) {
  ScalarField out(f.height(), f.width());
  for (std::size_t y = 0; y < f.height(); ++y)
    for (std::size_t x = 0; x < f.width(); ++x) out.at(y, x) = f.at(x, y);
  return out;
}

double mean_over(const ScalarField& f, std::size_t x0, std::size_t x1, std::size_t y0, std::size_t y1) {
  double s = 0.0;
  for (std::size_t y = y0; y < y1; ++y)
    for (std::size_t x = x0; x < x1; ++x) s += f.at(x, y);
  return s / static_cast<double>((x1 - x0) * (y1 - y0));
}

TEST(BoxWidth, OnlyRecommendedWidths) {
  for (int w : BoxWidth::kRecommended) EXPECT_EQ(BoxWidth(w).value(), w);
  for (int w : {-5, 0, 1, 3, 4, 6, 17}) EXPECT_THROW(BoxWidth{w}, InvalidArgument);
  EXPECT_EQ(BoxWidth(9).half(), 4);
}

TEST(Haar, ConstantFieldIsZero) {
  for (int w : BoxWidth::kRecommended) {
    const GradientField g = haar_gradient(ScalarField(23, 17, 91.0), BoxWidth(w));
    for (double v : g.magnitude.values()) EXPECT_EQ(v, 0.0);
    for (double v : g.gx.values()) EXPECT_EQ(v, 0.0);
    for (double v : g.gy.values()) EXPECT_EQ(v, 0.0);
  }
  const GradientField one = haar_gradient(ScalarField(1, 1, 5.0), BoxWidth(5));
  EXPECT_EQ(one.magnitude.at(0, 0), 0.0);
}

TEST(Haar, StepHeightAtStraddlingPixels) {
  const double h = 137.0;
  for (int w : BoxWidth::kRecommended) {
    const std::size_t split = 40;
    const GradientField g = haar_gradient(vertical_step(80, 50, split, h), BoxWidth(w));
    for (std::size_t y = 0; y < 50; ++y) {
      EXPECT_EQ(g.gx.at(split - 1, y), h) << "w=" << w;
      EXPECT_EQ(g.gx.at(split, y), h) << "w=" << w;
      EXPECT_EQ(g.gy.at(split, y), 0.0);
      EXPECT_EQ(g.magnitude.at(split, y), h);
      // Boxes entirely on one side see nothing.
      EXPECT_EQ(g.gx.at(split - 1 - static_cast<std::size_t>(w), y), 0.0);
      EXPECT_EQ(g.gx.at(split + static_cast<std::size_t>(w), y), 0.0);
    }
    const double peak = *std::max_element(g.magnitude.values().begin(), g.magnitude.values().end());
    EXPECT_EQ(peak, h);
  }
}

TEST(Haar, PartialStraddleIsFractional) {
  // Pixel two columns left of the step: right box holds w-1 high columns.
  const GradientField g = haar_gradient(vertical_step(60, 30, 30, 100.0), BoxWidth(5));
  EXPECT_DOUBLE_EQ(g.gx.at(28, 15), 80.0);
}

TEST(Haar, FlipNegatesGxAndTransposeSwaps) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const ScalarField f = testing::random_integer_field(rng, 29 + trial, 19 + 2 * trial, 0, 255);
    for (int w : BoxWidth::kRecommended) {
      const GradientField g = haar_gradient(f, BoxWidth(w));
      const GradientField gf = haar_gradient(flip_x(f), BoxWidth(w));
      const GradientField gt = haar_gradient(transpose(f), BoxWidth(w));
      for (std::size_t y = 0; y < f.height(); ++y) {
        for (std::size_t x = 0; x < f.width(); ++x) {
          const std::size_t fx = f.width() - 1 - x;
          ASSERT_EQ(gf.gx.at(fx, y), -g.gx.at(x, y));
          ASSERT_EQ(gf.gy.at(fx, y), g.gy.at(x, y));
          ASSERT_EQ(gf.magnitude.at(fx, y), g.magnitude.at(x, y));
          ASSERT_EQ(gt.gx.at(y, x), g.gy.at(x, y));
          ASSERT_EQ(gt.gy.at(y, x), g.gx.at(x, y));
        }
      }
    }
  }
}

TEST(Haar, MagnitudeAndOrientationPointwise) {
  std::mt19937_64 rng(32);
  const ScalarField f = testing::random_integer_field(rng, 40, 30, 0, 255);
  const GradientField g = haar_gradient(f, BoxWidth(7));
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    const double gx = g.gx.values()[i];
    const double gy = g.gy.values()[i];
    EXPECT_EQ(g.magnitude.values()[i], std::sqrt(gx * gx + gy * gy));
    EXPECT_EQ(g.orientation.values()[i], std::atan2(gy, gx));
    if (g.magnitude.values()[i] == 0.0) {
      EXPECT_TRUE(gx == 0.0 && gy == 0.0);
    }
  }
}

TEST(Sobel, ConstantAndSteps) {
  const GradientField flat = sobel_gradient(ScalarField(9, 9, 12.0));
  for (double v : flat.magnitude.values()) EXPECT_EQ(v, 0.0);
  const GradientField g = sobel_gradient(vertical_step(20, 10, 10, 80.0));
  for (std::size_t y = 0; y < 10; ++y) {
    EXPECT_EQ(g.gx.at(9, y), 80.0);
    EXPECT_EQ(g.gx.at(10, y), 80.0);
    EXPECT_EQ(g.gx.at(8, y), 0.0);
    EXPECT_EQ(g.gy.at(9, y), 0.0);
  }
  const GradientField t = sobel_gradient(transpose(vertical_step(20, 10, 10, 80.0)));
  for (std::size_t x = 0; x < 10; ++x) {
    EXPECT_EQ(t.gx.at(x, 9), 0.0);
    EXPECT_EQ(t.gy.at(x, 9), 80.0);
  }
  EXPECT_THROW(sobel_gradient(ScalarField(2, 5)), InvalidArgument);
}

// Pinned by tests/oracles/gradient_oracle.py (brute-force loops, no integral image).
TEST(Suppression, TextureMeansMatchOracle) {
  const auto scene = evalkit::gen_texture_scene(128, 64, 2, 100);
  const ScalarField f = to_luminance(scene.raster);
  const std::size_t x0 = evalkit::texture_patch_begin(128) + 5;
  const double haar = mean_over(haar_gradient(f, BoxWidth(5)).magnitude, x0, 123, 5, 59);
  const double sobel = mean_over(sobel_gradient(f).magnitude, x0, 123, 5, 59);
  EXPECT_NEAR(haar, 5.656854249492, 1e-9);
  EXPECT_NEAR(sobel, 70.710678118655, 1e-9);
  EXPECT_LT(haar, sobel);

  for (auto [w, expected] : {std::pair{9, 3.704572656192}, std::pair{13, 5.878705664360}}) {
    EXPECT_NEAR(mean_over(haar_gradient(f, BoxWidth(w)).magnitude, x0, 123, 5, 59), expected, 1e-9);
  }
}

TEST(Suppression, StepPeakRatio) {
  const auto scene = evalkit::gen_step_scene(64, 32, {50, 200}, 0.0);
  const ScalarField f = to_luminance(scene.raster);
  const GradientField haar = haar_gradient(f, BoxWidth(5));
  const GradientField sobel = sobel_gradient(f);
  const auto hm = haar.magnitude.values();
  const auto sm = sobel.magnitude.values();
  const double ratio = *std::max_element(hm.begin(), hm.end()) / *std::max_element(sm.begin(), sm.end());
  EXPECT_EQ(ratio, 1.0);
}

}  // namespace
}  // namespace damburst
