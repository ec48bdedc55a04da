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

#include <cstdlib>
#include <cstring>

#include "damburst/simd/kernels.hpp"

namespace damburst::simd {

namespace {

constexpr KernelTable kScalarTable{Isa::kScalar, &scalar::haar_row, &scalar::sobel_row,
                                   &scalar::magnitude};

#if defined(DAMBURST_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::kAvx2, &avx2::haar_row, &avx2::sobel_row, &avx2::magnitude};
#endif

bool cpu_has_avx2() {
#if defined(DAMBURST_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

// DAMBURST_ISA=scalar pins the reference path (debugging, benchmarking).
bool forced_scalar() {
  const char* env = std::getenv("DAMBURST_ISA");
  return env != nullptr && std::strcmp(env, "scalar") == 0;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  if (isa == Isa::kScalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

const KernelTable& kernels(Isa isa) {
#if defined(DAMBURST_HAVE_AVX2)
  if (isa == Isa::kAvx2 && isa_available(Isa::kAvx2)) return kAvx2Table;
#else
  (void)isa;
#endif
  return kScalarTable;
}

const KernelTable& best_kernels() {
  static const KernelTable& table =
      forced_scalar() ? kScalarTable : kernels(isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar);
  return table;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::kScalar};
  if (isa_available(Isa::kAvx2)) out.push_back(Isa::kAvx2);
  return out;
}

}  // namespace damburst::simd
