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

#include <algorithm>
#include <cmath>

#include "damburst/types.hpp"

namespace damburst {

Raster::Raster(std::size_t width, std::size_t height, std::size_t channels)
    : Raster(width, height, channels, std::vector<std::uint8_t>(width * height * channels, 0)) {}

Raster::Raster(std::size_t width, std::size_t height, std::size_t channels,
               std::vector<std::uint8_t> samples)
    : extent_{width, height}, channels_(channels), samples_(std::move(samples)) {
  if (width == 0 || height == 0) throw InvalidArgument("raster: zero dimension");
  if (channels != 1 && channels != 3) throw InvalidArgument("raster: channels must be 1 or 3");
  if (samples_.size() != width * height * channels)
    throw InvalidArgument("raster: sample count does not match dimensions");
}

ScalarField::ScalarField(std::size_t width, std::size_t height, std::vector<double> values)
    : extent_{width, height}, values_(std::move(values)) {
  if (values_.size() != width * height)
    throw InvalidArgument("scalar field: value count does not match dimensions");
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); }))
    throw InvalidArgument("scalar field: non-finite value");
}

LabelField::LabelField(std::size_t width, std::size_t height, std::vector<Label> labels)
    : extent_{width, height}, labels_(std::move(labels)) {
  if (labels_.size() != width * height)
    throw InvalidArgument("label field: label count does not match dimensions");
}

Label LabelField::max_label() const {
  return labels_.empty() ? kDamLabel : *std::max_element(labels_.begin(), labels_.end());
}

std::size_t LabelField::dam_pixel_count() const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), kDamLabel));
}

std::size_t EdgeMap::count() const {
  return static_cast<std::size_t>(std::count_if(bits_.begin(), bits_.end(), [](auto b) { return b != 0; }));
}

}  // namespace damburst
