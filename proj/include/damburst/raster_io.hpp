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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "damburst/types.hpp"

namespace damburst {

// ---------------------------------------------------------------------------
// Decoding / encoding
// ---------------------------------------------------------------------------

/// Loads a PNG or binary/ASCII PGM/PPM (P2, P3, P5, P6). Gray+alpha and RGBA
/// inputs drop alpha; 16-bit samples are rescaled to 8 bits.
/// Throws IoError("unreadable: ...") on missing or truncated files and
/// IoError("unsupported format: ...") on anything else.
Raster load_image(const std::filesystem::path& path);

/// Same as load_image but decodes an in-memory buffer.
Raster decode_image(std::span<const std::uint8_t> bytes);

void write_png(const Raster& raster, const std::filesystem::path& path);
void write_pnm(const Raster& raster, const std::filesystem::path& path);

/// Edge map as a 1-bit grayscale PNG (edge = white).
void write_edge_png(const EdgeMap& edges, const std::filesystem::path& path);

/// Little-endian float32 plane, row-major, no header.
void write_float_plane(const ScalarField& field, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Scalar planes
// ---------------------------------------------------------------------------

/// Gray rasters pass through; RGB uses 0.299 R + 0.587 G + 0.114 B.
ScalarField to_luminance(const Raster& raster);

/// Channel `c` as a real plane.
ScalarField channel_plane(const Raster& raster, std::size_t c);

// ---------------------------------------------------------------------------
// Summed-area table
// ---------------------------------------------------------------------------

/// Inclusive pixel rectangle [x0, x1] x [y0, y1]; may extend past the image
/// (signed coordinates) and is clamped on use.
struct Rect {
  long x0 = 0;
  long y0 = 0;
  long x1 = 0;
  long y1 = 0;
};

/// (width+1) x (height+1) cumulative sums; row 0 and column 0 are zero.
class IntegralField {
 public:
  IntegralField() = default;
  explicit IntegralField(const ScalarField& field);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t stride() const { return width_ + 1; }
  const double* data() const { return sums_.data(); }

  /// Sum over the in-bounds rectangle [x0, x1] x [y0, y1].
  double box_sum(std::size_t x0, std::size_t y0, std::size_t x1, std::size_t y1) const {
    const double* top = sums_.data() + y0 * stride();
    const double* bottom = sums_.data() + (y1 + 1) * stride();
    return ((bottom[x1 + 1] - top[x1 + 1]) - bottom[x0]) + top[x0];
  }

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> sums_;
};

IntegralField integral(const ScalarField& field);

/// Mean over `rect` after intersecting it with the image bounds.
/// Throws InvalidArgument when the intersection is empty.
double box_mean(const IntegralField& sums, Rect rect);

// ---------------------------------------------------------------------------
// Label maps
// ---------------------------------------------------------------------------

enum class LabelMapMode { kRawU32, kColorizedPng };

/// Raw (DBLM) layout, all little-endian:
///   bytes 0..3   magic "DBLM"
///   bytes 4..7   u32 width
///   bytes 8..11  u32 height
///   bytes 12..15 u32 reserved (0)
///   then width*height u32 labels, row-major.
/// Colorized mode writes an RGB PNG: dams black, labels through a fixed
/// hash palette.
void write_label_map(const LabelField& labels, const std::filesystem::path& path,
                     LabelMapMode mode);

std::vector<std::uint8_t> encode_dblm(const LabelField& labels);
LabelField decode_dblm(std::span<const std::uint8_t> bytes);
LabelField read_label_map(const std::filesystem::path& path);

/// RGB colour for a label (black for dams). Deterministic across runs.
std::array<std::uint8_t, 3> label_color(Label label);

/// Colorized rendering used by the PNG label output.
Raster colorize(const LabelField& labels);

}  // namespace damburst
