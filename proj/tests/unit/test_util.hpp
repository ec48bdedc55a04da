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
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "damburst/types.hpp"

namespace damburst::testing {

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("damburst_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline ScalarField random_integer_field(std::mt19937_64& rng, std::size_t w, std::size_t h, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  ScalarField f(w, h);
  for (double& v : f.values()) v = d(rng);
  return f;
}

inline Raster random_raster(std::mt19937_64& rng, std::size_t w, std::size_t h, std::size_t channels) {
  std::uniform_int_distribution<int> d(0, 255);
  Raster r(w, h, channels);
  for (auto& s : r.samples()) s = static_cast<std::uint8_t>(d(rng));
  return r;
}

inline std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace damburst::testing
