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

#include <optional>
#include <vector>

#include "damburst/gradient.hpp"
#include "damburst/types.hpp"

namespace damburst {

/// Dual-threshold parameters expressed as the fraction of NMS candidates to
/// keep: t_high keeps the strongest t_high share, t_low the strongest t_low
/// share, so 0 < t_high <= t_low <= 1.
struct CannyParams {
  double t_low = 0.30;
  double t_high = 0.21;

  void validate() const;
};

struct Candidate {
  std::size_t index;  // y * width + x
  double magnitude;
};

/// Ridge pixels surviving non-maximum suppression, in row-major order.
struct CandidateSet {
  Extent extent;
  std::vector<Candidate> pixels;

  std::size_t size() const { return pixels.size(); }
  bool empty() const { return pixels.empty(); }
};

struct Thresholds {
  double low;
  double high;
};

/// Keeps a pixel iff magnitude > 0 and it is >= both neighbours along the
/// gradient direction quantised to 0/45/90/135 degrees. Neighbours outside
/// the image count as zero.
CandidateSet nms(const GradientField& gradient);

/// Magnitude of the k-th strongest candidate, k = ceil(t * n) clamped to
/// [1, n]; the result has at least k candidates at or above it (exactly k
/// when magnitudes are distinct). nullopt when there are no candidates.
std::optional<Thresholds> percentile_thresholds(const CandidateSet& candidates, const CannyParams& params);

/// Candidates with magnitude >= low that are 8-connected, through such
/// candidates, to one with magnitude >= high.
EdgeMap hysteresis(const CandidateSet& candidates, Thresholds thresholds);

struct CannyResult {
  CandidateSet candidates;
  std::optional<Thresholds> thresholds;
  EdgeMap edges;
};

/// haar_gradient -> nms -> percentile_thresholds -> hysteresis.
CannyResult canny_detail(const GradientField& gradient, const CannyParams& params);
EdgeMap canny(const ScalarField& field, BoxWidth w, const CannyParams& params);

}  // namespace damburst
