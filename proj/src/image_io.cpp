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

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "damburst/raster_io.hpp"

namespace damburst {

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("unreadable: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("unreadable: read failure on " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failure: " + path.string());
}

// ---------------------------------------------------------------------------
// PNG
// ---------------------------------------------------------------------------

struct MemoryReader {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t offset;
};

void png_read_memory(png_structp png, png_bytep out, png_size_t count) {
  auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (reader->offset + count > reader->size) png_error(png, "truncated");
  std::memcpy(out, reader->data + reader->offset, count);
  reader->offset += count;
}

void png_silent_warning(png_structp, png_const_charp) {}

struct PngDecoded {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 0;
  std::vector<std::uint8_t> samples;
};

// Returns false on a libpng error; `message` receives the reason.
bool decode_png_raw(std::span<const std::uint8_t> bytes, PngDecoded& out, std::string& message) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_silent_warning);
  if (png == nullptr) {
    message = "libpng init failed";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    message = "libpng init failed";
    return false;
  }
  MemoryReader reader{bytes.data(), bytes.size(), 0};
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    message = "corrupt or truncated PNG";
    return false;
  }

  png_set_read_fn(png, &reader, png_read_memory);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);

  if (bit_depth == 16) png_set_scale_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  out.width = width;
  out.height = height;
  out.channels = png_get_channels(png, info);
  out.samples.assign(static_cast<std::size_t>(width) * height * out.channels, 0);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y)
    rows[y] = out.samples.data() + static_cast<std::size_t>(y) * width * out.channels;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

Raster decode_png(std::span<const std::uint8_t> bytes) {
  PngDecoded decoded;
  std::string message;
  if (!decode_png_raw(bytes, decoded, message)) throw IoError("unreadable: " + message);
  if (decoded.width == 0 || decoded.height == 0) throw IoError("unreadable: zero-dimension image");
  if (decoded.channels != 1 && decoded.channels != 3)
    throw IoError("unsupported format: PNG with " + std::to_string(decoded.channels) + " channels");
  return Raster(decoded.width, decoded.height, decoded.channels, std::move(decoded.samples));
}

bool encode_png_raw(std::size_t width, std::size_t height, int color_type, int bit_depth,
                    const std::vector<png_bytep>& rows, std::vector<std::uint8_t>& out) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_silent_warning);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t n) {
        auto* sink = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
        sink->insert(sink->end(), data, data + n);
      },
      nullptr);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), bit_depth,
               color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

void write_png_rows(std::size_t width, std::size_t height, int color_type, int bit_depth,
                    std::vector<std::uint8_t>& pixels, std::size_t row_bytes,
                    const std::filesystem::path& path) {
  std::vector<png_bytep> rows(height);
  for (std::size_t y = 0; y < height; ++y) rows[y] = pixels.data() + y * row_bytes;
  std::vector<std::uint8_t> encoded;
  if (!encode_png_raw(width, height, color_type, bit_depth, rows, encoded))
    throw IoError("PNG encode failed: " + path.string());
  write_file(path, encoded);
}

// ---------------------------------------------------------------------------
// PNM (P2/P3 ASCII, P5/P6 binary)
// ---------------------------------------------------------------------------

class PnmParser {
 public:
  explicit PnmParser(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  unsigned long next_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !is_digit(bytes_[pos_])) throw IoError("unreadable: malformed PNM header");
    unsigned long v = 0;
    while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFul) throw IoError("unreadable: PNM value overflow");
      ++pos_;
    }
    return v;
  }

  // Exactly one whitespace byte separates the header from binary data.
  void skip_single_whitespace() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) throw IoError("unreadable: malformed PNM header");
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  static bool is_digit(std::uint8_t c) { return c >= '0' && c <= '9'; }
  static bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

std::uint8_t rescale(unsigned long v, unsigned long maxval) {
  if (v > maxval) throw IoError("unreadable: PNM sample exceeds maxval");
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

Raster decode_pnm(std::span<const std::uint8_t> bytes) {
  const char kind = static_cast<char>(bytes[1]);
  const bool ascii = kind == '2' || kind == '3';
  const std::size_t channels = (kind == '3' || kind == '6') ? 3 : 1;

  PnmParser parser(bytes);
  const unsigned long width = parser.next_number();
  const unsigned long height = parser.next_number();
  const unsigned long maxval = parser.next_number();
  if (width == 0 || height == 0) throw IoError("unreadable: zero-dimension image");
  if (maxval == 0 || maxval > 65535) throw IoError("unsupported format: PNM maxval " + std::to_string(maxval));

  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  std::vector<std::uint8_t> samples(count);
  if (ascii) {
    for (std::size_t i = 0; i < count; ++i) samples[i] = rescale(parser.next_number(), maxval);
  } else {
    parser.skip_single_whitespace();
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t begin = parser.position();
    if (bytes.size() < begin + count * bytes_per_sample) throw IoError("unreadable: truncated PNM payload");
    for (std::size_t i = 0; i < count; ++i) {
      unsigned long v = bytes[begin + i * bytes_per_sample];
      if (bytes_per_sample == 2) v = (v << 8) | bytes[begin + i * 2 + 1];
      samples[i] = rescale(v, maxval);
    }
  }
  return Raster(width, height, channels, std::move(samples));
}

bool is_png(std::span<const std::uint8_t> bytes) {
  static constexpr std::uint8_t kSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kSig, 8) == 0;
}

bool is_pnm(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 2 && bytes[0] == 'P' &&
         (bytes[1] == '2' || bytes[1] == '3' || bytes[1] == '5' || bytes[1] == '6');
}

}  // namespace

Raster decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw IoError("unreadable: empty file");
  if (is_png(bytes)) return decode_png(bytes);
  if (is_pnm(bytes)) return decode_pnm(bytes);
  if (bytes.size() < 8 && bytes[0] == 0x89) throw IoError("unreadable: truncated PNG signature");
  throw IoError("unsupported format: unrecognised signature");
}

Raster load_image(const std::filesystem::path& path) { return decode_image(read_file(path)); }

void write_png(const Raster& raster, const std::filesystem::path& path) {
  std::vector<std::uint8_t> pixels(raster.samples().begin(), raster.samples().end());
  write_png_rows(raster.width(), raster.height(),
                 raster.channels() == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, 8, pixels,
                 raster.width() * raster.channels(), path);
}

void write_pnm(const Raster& raster, const std::filesystem::path& path) {
  std::string header = (raster.channels() == 3 ? "P6\n" : "P5\n") + std::to_string(raster.width()) + " " +
                       std::to_string(raster.height()) + "\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), raster.samples().begin(), raster.samples().end());
  write_file(path, bytes);
}

void write_edge_png(const EdgeMap& edges, const std::filesystem::path& path) {
  const std::size_t row_bytes = (edges.width() + 7) / 8;
  std::vector<std::uint8_t> packed(row_bytes * edges.height(), 0);
  for (std::size_t y = 0; y < edges.height(); ++y)
    for (std::size_t x = 0; x < edges.width(); ++x)
      if (edges.at(x, y)) packed[y * row_bytes + x / 8] |= static_cast<std::uint8_t>(0x80u >> (x % 8));
  write_png_rows(edges.width(), edges.height(), PNG_COLOR_TYPE_GRAY, 1, packed, row_bytes, path);
}

void write_float_plane(const ScalarField& field, const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(field.values().size() * 4);
  for (double v : field.values()) {
    const float f = static_cast<float>(v);
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    for (int b = 0; b < 4; ++b) bytes.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
  }
  write_file(path, bytes);
}

}  // namespace damburst
