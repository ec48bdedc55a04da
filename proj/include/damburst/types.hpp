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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace damburst {

/// Raised for malformed arguments: dimension mismatches, out-of-range
/// parameters, empty rectangles.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by file decoding/encoding.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Extent {
  std::size_t width = 0;
  std::size_t height = 0;

  std::size_t area() const { return width * height; }
  bool operator==(const Extent&) const = default;
};

/// 8-bit raster, 1 (gray) or 3 (RGB) interleaved channels, row-major.
class Raster {
 public:
  Raster() = default;
  Raster(std::size_t width, std::size_t height, std::size_t channels);
  Raster(std::size_t width, std::size_t height, std::size_t channels,
         std::vector<std::uint8_t> samples);

  std::size_t width() const { return extent_.width; }
  std::size_t height() const { return extent_.height; }
  std::size_t channels() const { return channels_; }
  Extent extent() const { return extent_; }

  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c = 0) const {
    return samples_[(y * extent_.width + x) * channels_ + c];
  }
  std::uint8_t& at(std::size_t x, std::size_t y, std::size_t c = 0) {
    return samples_[(y * extent_.width + x) * channels_ + c];
  }

  std::span<const std::uint8_t> samples() const { return samples_; }
  std::span<std::uint8_t> samples() { return samples_; }

  bool operator==(const Raster&) const = default;

 private:
  Extent extent_;
  std::size_t channels_ = 1;
  std::vector<std::uint8_t> samples_;
};

/// Real-valued single-plane image.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(std::size_t width, std::size_t height, double fill = 0.0)
      : extent_{width, height}, values_(width * height, fill) {}
  ScalarField(std::size_t width, std::size_t height, std::vector<double> values);

  std::size_t width() const { return extent_.width; }
  std::size_t height() const { return extent_.height; }
  Extent extent() const { return extent_; }

  double at(std::size_t x, std::size_t y) const { return values_[y * extent_.width + x]; }
  double& at(std::size_t x, std::size_t y) { return values_[y * extent_.width + x]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  const double* row(std::size_t y) const { return values_.data() + y * extent_.width; }

  bool operator==(const ScalarField&) const = default;

 private:
  Extent extent_;
  std::vector<double> values_;
};

using Label = std::uint32_t;
inline constexpr Label kDamLabel = 0;

/// Per-pixel partition. 0 marks a dam pixel, 1..K are region ids.
class LabelField {
 public:
  LabelField() = default;
  LabelField(std::size_t width, std::size_t height, Label fill = kDamLabel)
      : extent_{width, height}, labels_(width * height, fill) {}
  LabelField(std::size_t width, std::size_t height, std::vector<Label> labels);

  std::size_t width() const { return extent_.width; }
  std::size_t height() const { return extent_.height; }
  Extent extent() const { return extent_; }

  Label at(std::size_t x, std::size_t y) const { return labels_[y * extent_.width + x]; }
  Label& at(std::size_t x, std::size_t y) { return labels_[y * extent_.width + x]; }

  std::span<const Label> labels() const { return labels_; }
  std::span<Label> labels() { return labels_; }

  /// Largest label present (0 when all pixels are dams).
  Label max_label() const;
  std::size_t dam_pixel_count() const;

  bool operator==(const LabelField&) const = default;

 private:
  Extent extent_;
  std::vector<Label> labels_;
};

/// Binary edge mask.
class EdgeMap {
 public:
  EdgeMap() = default;
  EdgeMap(std::size_t width, std::size_t height)
      : extent_{width, height}, bits_(width * height, 0) {}

  std::size_t width() const { return extent_.width; }
  std::size_t height() const { return extent_.height; }
  Extent extent() const { return extent_; }

  bool at(std::size_t x, std::size_t y) const { return bits_[y * extent_.width + x] != 0; }
  bool test(std::size_t index) const { return bits_[index] != 0; }
  void set(std::size_t index) { bits_[index] = 1; }
  void set(std::size_t x, std::size_t y) { bits_[y * extent_.width + x] = 1; }
  void clear(std::size_t index) { bits_[index] = 0; }

  std::size_t count() const;
  std::span<const std::uint8_t> bits() const { return bits_; }

  bool operator==(const EdgeMap&) const = default;

 private:
  Extent extent_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace damburst
