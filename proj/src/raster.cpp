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
#include <cstring>
#include <fstream>
#include <iterator>

#include "damburst/raster_io.hpp"

namespace damburst {

ScalarField to_luminance(const Raster& raster) {
  if (raster.channels() == 1) return channel_plane(raster, 0);
  std::vector<double> values(raster.width() * raster.height());
  const auto samples = raster.samples();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double r = samples[3 * i];
    const double g = samples[3 * i + 1];
    const double b = samples[3 * i + 2];
    values[i] = (0.299 * r + 0.587 * g) + 0.114 * b;
  }
  return ScalarField(raster.width(), raster.height(), std::move(values));
}

ScalarField channel_plane(const Raster& raster, std::size_t c) {
  if (c >= raster.channels()) throw InvalidArgument("channel_plane: channel out of range");
  std::vector<double> values(raster.width() * raster.height());
  const auto samples = raster.samples();
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = samples[i * raster.channels() + c];
  return ScalarField(raster.width(), raster.height(), std::move(values));
}

IntegralField::IntegralField(const ScalarField& field)
    : width_(field.width()), height_(field.height()), sums_((field.width() + 1) * (field.height() + 1), 0.0) {
  const std::size_t s = stride();
  for (std::size_t y = 0; y < height_; ++y) {
    const double* src = field.row(y);
    double* prev = sums_.data() + y * s;
    double* cur = sums_.data() + (y + 1) * s;
    double running = 0.0;
    for (std::size_t x = 0; x < width_; ++x) {
      running += src[x];
      cur[x + 1] = prev[x + 1] + running;
    }
  }
}

IntegralField integral(const ScalarField& field) { return IntegralField(field); }

double box_mean(const IntegralField& sums, Rect rect) {
  const long w = static_cast<long>(sums.width());
  const long h = static_cast<long>(sums.height());
  const long x0 = std::max(rect.x0, 0L);
  const long y0 = std::max(rect.y0, 0L);
  const long x1 = std::min(rect.x1, w - 1);
  const long y1 = std::min(rect.y1, h - 1);
  if (x0 > x1 || y0 > y1) throw InvalidArgument("box_mean: rectangle lies outside the image");
  const double area = static_cast<double>((x1 - x0 + 1) * (y1 - y0 + 1));
  return sums.box_sum(static_cast<std::size_t>(x0), static_cast<std::size_t>(y0), static_cast<std::size_t>(x1),
                      static_cast<std::size_t>(y1)) /
         area;
}

// ---------------------------------------------------------------------------
// DBLM
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'D', 'B', 'L', 'M'};
constexpr std::size_t kHeaderBytes = 16;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(bytes[at + b]) << (8 * b);
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_dblm(const LabelField& labels) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + labels.labels().size() * 4);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(out, static_cast<std::uint32_t>(labels.width()));
  put_u32(out, static_cast<std::uint32_t>(labels.height()));
  put_u32(out, 0);
  for (Label l : labels.labels()) put_u32(out, l);
  return out;
}

LabelField decode_dblm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw IoError("unreadable: not a DBLM label map");
  const std::size_t width = get_u32(bytes, 4);
  const std::size_t height = get_u32(bytes, 8);
  if (width == 0 || height == 0) throw IoError("unreadable: zero-dimension label map");
  if (bytes.size() != kHeaderBytes + width * height * 4) throw IoError("unreadable: truncated DBLM payload");
  std::vector<Label> labels(width * height);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = get_u32(bytes, kHeaderBytes + 4 * i);
  return LabelField(width, height, std::move(labels));
}

LabelField read_label_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("unreadable: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_dblm(bytes);
}

std::array<std::uint8_t, 3> label_color(Label label) {
  if (label == kDamLabel) return {0, 0, 0};
  // splitmix-style finaliser; components kept away from pure black.
  std::uint64_t z = static_cast<std::uint64_t>(label) + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return {static_cast<std::uint8_t>(32 + (z & 0xFF) % 224), static_cast<std::uint8_t>(32 + ((z >> 8) & 0xFF) % 224),
          static_cast<std::uint8_t>(32 + ((z >> 16) & 0xFF) % 224)};
}

Raster colorize(const LabelField& labels) {
  Raster out(labels.width(), labels.height(), 3);
  auto samples = out.samples();
  const auto ids = labels.labels();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto rgb = label_color(ids[i]);
    std::copy(rgb.begin(), rgb.end(), samples.begin() + static_cast<std::ptrdiff_t>(3 * i));
  }
  return out;
}

void write_label_map(const LabelField& labels, const std::filesystem::path& path, LabelMapMode mode) {
  if (mode == LabelMapMode::kColorizedPng) {
    write_png(colorize(labels), path);
    return;
  }
  const auto bytes = encode_dblm(labels);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failure: " + path.string());
}

}  // namespace damburst
