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

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "damburst/canny.hpp"
#include "damburst/dam_burst.hpp"
#include "damburst/gradient.hpp"
#include "damburst/rag.hpp"
#include "damburst/types.hpp"
#include "json.hpp"

namespace damburst {

using Json = nlohmann::ordered_json;

/// Recommended thresholds for one box width.
struct ThresholdDefaults {
  int box_width;
  double t_high;
  double t_low;
};

/// Throws InvalidArgument for widths outside BoxWidth::kRecommended.
ThresholdDefaults recommended_thresholds(int box_width);

enum class DumpStage { kGradient, kEdges, kWatershed, kRag, kMergeLog };

/// Accepts "gradient", "edges", "watershed", "rag", "merge-log".
DumpStage parse_dump_stage(const std::string& name);
std::string dump_stage_name(DumpStage stage);

struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path out_dir;
  int box_width = 5;
  std::optional<double> t_low;   // default: recommended row for box_width
  std::optional<double> t_high;  // idem
  double t_c = 0.3;
  double t_rsi = 0.2;
  std::set<DumpStage> dumps;
};

/// Fully resolved stage parameters.
struct SegmentParams {
  int box_width = 5;
  CannyParams canny;
  DamBurstParams burst;
  std::vector<std::string> defaulted;  // names of parameters filled from the table

  void validate() const;
};

/// Fills omitted thresholds and validates. Throws InvalidArgument.
SegmentParams resolve_params(const PipelineConfig& cfg);

/// Failure inside a named pipeline stage.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Every intermediate of one run, kept in memory.
struct Segmentation {
  GradientField gradient;
  CannyResult canny;
  LabelField watershed;
  RegionGraph initial_graph;
  DamBurstOutcome burst;
  LabelField labels;  // final, dam-free, dense 1..K
};

/// gradient -> canny -> watershed -> rag -> dam burst -> finalize. Throws
/// StageError naming the failing stage.
Segmentation segment(const Raster& raster, const SegmentParams& params);

/// Stats record (stable key order).
Json stats_json(const Segmentation& seg, const SegmentParams& params, const Raster& raster,
                const std::string& input_name);

/// Region graph debug dump: regions with MO and means, dams with length and
/// strengthened count.
Json rag_json(const RegionGraph& graph);
Json merge_record_json(const MergeRecord& record);

/// {"error": {"stage": ..., "message": ...}}
Json error_json(const std::string& stage, const std::string& message);

struct PipelineOutcome {
  int exit_code = 0;
  Json record;  // stats on success, error record otherwise
};

/// Runs one configuration end to end and writes labels.dblm, labels.png,
/// stats.json and the requested dumps into cfg.out_dir. On failure writes
/// error.json instead (when the directory is writable) and returns a
/// nonzero exit code. Never throws.
PipelineOutcome run_pipeline(const PipelineConfig& cfg);

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

/// Axes of a sweep. An absent axis keeps the base configuration's value;
/// t_low / t_high fall back to the recommended row of each cell's width.
struct SweepGrid {
  std::optional<std::vector<int>> box_width;
  std::optional<std::vector<double>> t_c;
  std::optional<std::vector<double>> t_low;
  std::optional<std::vector<double>> t_high;

  /// A grid with no axis, or with any empty axis, has no cells.
  bool empty() const;
};

/// Parses {"box_width": [...], "t_c": [...], "t_low": [...], "t_high": [...]}.
/// Unknown keys are rejected. Throws InvalidArgument.
SweepGrid parse_sweep_grid(const Json& j);
SweepGrid load_sweep_grid(const std::filesystem::path& path);

/// Cells in row order: box_width outermost, then t_c, t_low, t_high.
std::vector<PipelineConfig> expand_grid(const SweepGrid& grid, const PipelineConfig& base);

struct SweepRow {
  std::size_t cell = 0;
  PipelineConfig config;
  bool ok = false;
  Json record;  // stats, or error record
};

/// Runs every cell on the already-loaded raster (cells in parallel, at most
/// `threads` at once; 0 = hardware concurrency). Rows come back in cell
/// order; a failing cell is recorded and the others continue.
std::vector<SweepRow> run_sweep(const Raster& raster, const std::string& input_name,
                                const std::vector<PipelineConfig>& cells, unsigned threads = 0);

/// Column header of the CSV report.
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

/// Loads cfg.input, runs the grid and writes sweep.csv and sweep.jsonl into
/// cfg.out_dir. Returns 0 unless the sweep itself (input, grid, output) fails.
PipelineOutcome run_sweep_to_dir(const PipelineConfig& base, const std::filesystem::path& grid_file,
                                 unsigned threads = 0);

}  // namespace damburst
