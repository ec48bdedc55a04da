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

#include <string>
#include <vector>

#include "damburst/rag.hpp"
#include "damburst/types.hpp"

namespace damburst {

struct DamBurstParams {
  /// Dams stronger than this are never burst.
  double t_c = 0.3;
  /// Regions whose strength index exceeds this need InD <= T_ind to merge.
  double t_rsi = 0.2;

  void validate() const;
};

/// One burst dam, with the evidence that allowed it.
struct MergeRecord {
  std::size_t pass = 0;
  RegionId scanner = 0;    // region being processed in sorted order
  RegionId candidate = 0;  // chosen neighbour
  RegionId survivor = 0;
  RegionId absorbed = 0;
  double mo_scanner = 0.0;
  double mo_candidate = 0.0;
  double rsi_scanner = 0.0;
  bool strong = false;
  double ind = 0.0;
  double strength = 0.0;  // C of the burst dam
  double t_ind_before = 0.0;
  double t_ind_after = 0.0;
};

struct RunStats {
  std::size_t outer_iterations = 0;  // passes run, including the final one without merges
  std::size_t total_merges = 0;
  double t_ind_final = 0.0;
  std::size_t region_count_initial = 0;
  std::size_t region_count_final = 0;
  std::vector<double> t_ind_trace;               // T_ind after every merge
  std::vector<std::size_t> merges_per_pass;      // one entry per pass
  std::vector<std::size_t> regions_after_pass;  // alive count at the end of each pass
};

struct DamBurstOutcome {
  RegionGraph graph;
  RunStats stats;
  std::vector<MergeRecord> log;
};

/// Iterated edge-constrained merging. Each pass sorts alive regions by
/// ascending MO (ties: lower id), then for every region still alive picks,
/// among neighbours with MO <= its own and dam strength <= t_c, the one with
/// the smallest InD; a strong region (RSI > t_rsi) additionally requires
/// InD <= T_ind. The lower id survives. T_ind = max(T_ind, mean InD of the
/// merges so far in this pass). Passes repeat until one makes no merge.
DamBurstOutcome dam_burst(RegionGraph graph, const DamBurstParams& params);

/// Replays `log` on a copy of `initial`, checking at each step that the dam
/// was eligible, the candidate was the minimum-InD qualifying neighbour, and
/// the recorded numbers match. Returns one message per violation.
std::vector<std::string> replay_merge_log(const RegionGraph& initial, const std::vector<MergeRecord>& log,
                                          const DamBurstParams& params);

/// Replaces each label by its surviving root, assigns every dam pixel to the
/// 8-neighbour region whose mean colour is nearest (ties: lower id; applied
/// in waves until no dam is left), and renumbers regions densely 1..K in
/// ascending root order.
LabelField finalize_labels(const RegionGraph& graph, const LabelField& labels, const Raster& raster);

}  // namespace damburst
