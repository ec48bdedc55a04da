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

// Row kernels behind the gradient stage. Every variant evaluates the same
// arithmetic in the same order (no FMA, no reciprocal tricks), so the vector
// paths are bit-identical to the scalar reference.

#include <cstddef>
#include <string_view>
#include <vector>

namespace damburst::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

/// Interior row of the Haar-box gradient. For every x in [x_begin, x_end) the
/// four boxes lie fully inside the image:
///   gx[x] = mean(cols x+1..x+w, rows row_lo..row_hi)
///         - mean(cols x-w..x-1, rows row_lo..row_hi)
///   gy[x] = mean(rows below_lo..below_hi, cols x-half..x+half)
///         - mean(rows above_lo..above_hi, cols x-half..x+half)
/// `sums` is the (width+1)-stride summed-area table.
struct HaarRow {
  const double* sums = nullptr;
  std::size_t stride = 0;
  std::size_t box = 0;   // w
  std::size_t half = 0;  // (w-1)/2
  std::size_t row_lo = 0, row_hi = 0;
  std::size_t above_lo = 0, above_hi = 0;
  std::size_t below_lo = 0, below_hi = 0;
  std::size_t x_begin = 0, x_end = 0;
  double* gx = nullptr;
  double* gy = nullptr;
};

/// Interior row of the Sobel operator (kernels divided by 4). `above`, `mid`,
/// `below` are the (border-replicated) source rows; x in [x_begin, x_end)
/// must satisfy 1 <= x <= width-2.
struct SobelRow {
  const double* above = nullptr;
  const double* mid = nullptr;
  const double* below = nullptr;
  std::size_t x_begin = 0, x_end = 0;
  double* gx = nullptr;
  double* gy = nullptr;
};

struct KernelTable {
  Isa isa;
  void (*haar_row)(const HaarRow&);
  void (*sobel_row)(const SobelRow&);
  /// out[i] = sqrt(gx[i]*gx[i] + gy[i]*gy[i])
  void (*magnitude)(const double* gx, const double* gy, double* out, std::size_t n);
};

/// True when the CPU and the build both provide the variant.
bool isa_available(Isa isa);

/// Table for a specific ISA; falls back to scalar when unavailable.
const KernelTable& kernels(Isa isa);

/// Best available table, resolved once per process.
const KernelTable& best_kernels();

/// All ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

namespace scalar {
void haar_row(const HaarRow& args);
void sobel_row(const SobelRow& args);
void magnitude(const double* gx, const double* gy, double* out, std::size_t n);
}  // namespace scalar

#if defined(DAMBURST_HAVE_AVX2)
namespace avx2 {
void haar_row(const HaarRow& args);
void sobel_row(const SobelRow& args);
void magnitude(const double* gx, const double* gy, double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace damburst::simd
