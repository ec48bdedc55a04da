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
#include <vector>

#include "damburst/gradient.hpp"
#include "damburst/types.hpp"

namespace damburst {

/// Discrete altitudes 0..levels-1, row-major.
struct LevelField {
  Extent extent;
  std::vector<std::uint8_t> levels;

  std::uint8_t at(std::size_t x, std::size_t y) const { return levels[y * extent.width + x]; }
};

/// level = floor(magnitude / max * 255); a field whose maximum is zero maps
/// to level 0 everywhere.
LevelField quantize(const GradientField& gradient);
LevelField quantize(const ScalarField& magnitude);

/// Immersion watershed (Vincent & Soille) over the quantised magnitude.
/// Basins grow through 4-neighbours in FIFO order; a pixel reached by two
/// basins becomes a dam (label 0). Basins never touch directly: any pixel
/// whose already-flooded 4-neighbours disagree is a dam. Dam pixels bordering
/// a single basin only are handed to that basin afterwards. Labels are dense
/// 1..K in order of minimum discovery (ascending level, row-major).
LabelField watershed(const GradientField& gradient);
LabelField watershed(const LevelField& levels);

}  // namespace damburst
