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

#include "damburst/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "damburst/raster_io.hpp"
#include "damburst/watershed.hpp"

namespace damburst {

namespace fs = std::filesystem;

ThresholdDefaults recommended_thresholds(int box_width) {
  static constexpr ThresholdDefaults kTable[] = {
      {5, 0.210, 0.300}, {7, 0.250, 0.370}, {9, 0.290, 0.450},
      {11, 0.300, 0.470}, {13, 0.307, 0.490}, {15, 0.315, 0.500},
  };
  for (const auto& row : kTable)
    if (row.box_width == box_width) return row;
  throw InvalidArgument("no recommended thresholds for box width " + std::to_string(box_width));
}

DumpStage parse_dump_stage(const std::string& name) {
  if (name == "gradient") return DumpStage::kGradient;
  if (name == "edges") return DumpStage::kEdges;
  if (name == "watershed") return DumpStage::kWatershed;
  if (name == "rag") return DumpStage::kRag;
  if (name == "merge-log") return DumpStage::kMergeLog;
  throw InvalidArgument("unknown dump stage '" + name + "' (expected gradient, edges, watershed, rag, merge-log)");
}

std::string dump_stage_name(DumpStage stage) {
  switch (stage) {
    case DumpStage::kGradient: return "gradient";
    case DumpStage::kEdges: return "edges";
    case DumpStage::kWatershed: return "watershed";
    case DumpStage::kRag: return "rag";
    case DumpStage::kMergeLog: return "merge-log";
  }
  return "?";
}

void SegmentParams::validate() const {
  (void)BoxWidth(box_width);
  canny.validate();
  burst.validate();
}

SegmentParams resolve_params(const PipelineConfig& cfg) {
  SegmentParams p;
  p.box_width = BoxWidth(cfg.box_width).value();
  const ThresholdDefaults row = recommended_thresholds(p.box_width);
  p.canny.t_low = cfg.t_low.value_or(row.t_low);
  p.canny.t_high = cfg.t_high.value_or(row.t_high);
  if (!cfg.t_low) p.defaulted.push_back("t_low");
  if (!cfg.t_high) p.defaulted.push_back("t_high");
  p.burst.t_c = cfg.t_c;
  p.burst.t_rsi = cfg.t_rsi;
  p.validate();
  return p;
}

namespace {

template <typename F>
auto in_stage(const char* stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

Segmentation segment(const Raster& raster, const SegmentParams& params) {
  in_stage("config", [&] { params.validate(); });
  Segmentation s;
  s.gradient = in_stage("gradient", [&] { return haar_gradient(to_luminance(raster), BoxWidth(params.box_width)); });
  s.canny = in_stage("canny", [&] { return canny_detail(s.gradient, params.canny); });
  s.watershed = in_stage("watershed", [&] { return watershed(s.gradient); });
  s.initial_graph = in_stage("rag", [&] { return RegionGraph::build(s.watershed, s.gradient, raster, s.canny.edges); });
  s.burst = in_stage("damburst", [&] { return dam_burst(s.initial_graph, params.burst); });
  s.labels = in_stage("finalize", [&] { return finalize_labels(s.burst.graph, s.watershed, raster); });
  return s;
}

Json stats_json(const Segmentation& seg, const SegmentParams& params, const Raster& raster,
                const std::string& input_name) {
  const RunStats& st = seg.burst.stats;
  Json j;
  j["input"] = input_name;
  j["width"] = raster.width();
  j["height"] = raster.height();
  j["channels"] = raster.channels();
  Json p;
  p["box_width"] = params.box_width;
  p["t_low"] = params.canny.t_low;
  p["t_high"] = params.canny.t_high;
  p["t_c"] = params.burst.t_c;
  p["t_rsi"] = params.burst.t_rsi;
  p["defaulted"] = params.defaulted;
  j["parameters"] = p;
  j["initial_regions"] = st.region_count_initial;
  j["final_regions"] = st.region_count_final;
  j["reduction_ratio"] = st.region_count_initial == 0
                             ? 1.0
                             : static_cast<double>(st.region_count_final) / static_cast<double>(st.region_count_initial);
  j["outer_iterations"] = st.outer_iterations;
  j["total_merges"] = st.total_merges;
  j["t_ind_final"] = st.t_ind_final;
  j["nms_candidates"] = seg.canny.candidates.size();
  j["edge_pixels"] = seg.canny.edges.count();
  j["dam_pixels"] = seg.initial_graph.dam_pixel_total();
  j["merges_per_pass"] = st.merges_per_pass;
  return j;
}

Json rag_json(const RegionGraph& graph) {
  Json regions = Json::array();
  for (RegionId id : graph.alive_regions()) {
    const Region& r = graph.region(id);
    Json means = Json::array();
    for (std::size_t c = 0; c < graph.channels(); ++c) means.push_back(r.mean(c));
    Json n = Json::array();
    for (RegionId m : graph.neighbours(id)) n.push_back(m);
    regions.push_back({{"id", id}, {"pixels", r.pixel_count}, {"mo", mo(r)}, {"mean", means}, {"neighbours", n}});
  }
  Json dams = Json::array();
  for (const Dam* d : graph.dams()) {
    dams.push_back({{"a", d->a},
                    {"b", d->b},
                    {"length", d->length()},
                    {"strengthened", d->strengthened},
                    {"strength", dam_strength(*d)}});
  }
  Json j;
  j["width"] = graph.extent().width;
  j["height"] = graph.extent().height;
  j["regions"] = std::move(regions);
  j["dams"] = std::move(dams);
  return j;
}

Json merge_record_json(const MergeRecord& r) {
  Json j;
  j["pass"] = r.pass;
  j["scanner"] = r.scanner;
  j["candidate"] = r.candidate;
  j["survivor"] = r.survivor;
  j["absorbed"] = r.absorbed;
  j["mo_scanner"] = r.mo_scanner;
  j["mo_candidate"] = r.mo_candidate;
  j["rsi_scanner"] = r.rsi_scanner;
  j["strong"] = r.strong;
  j["ind"] = r.ind;
  j["strength"] = r.strength;
  j["t_ind_before"] = r.t_ind_before;
  j["t_ind_after"] = r.t_ind_after;
  return j;
}

Json error_json(const std::string& stage, const std::string& message) {
  Json j;
  j["error"] = Json{{"stage", stage}, {"message", message}};
  return j;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("unwritable: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void write_artifacts(const Segmentation& seg, const PipelineConfig& cfg, const Json& stats) {
  const fs::path& dir = cfg.out_dir;
  write_label_map(seg.labels, dir / "labels.dblm", LabelMapMode::kRawU32);
  write_label_map(seg.labels, dir / "labels.png", LabelMapMode::kColorizedPng);

  for (DumpStage stage : cfg.dumps) {
    switch (stage) {
      case DumpStage::kGradient:
        write_float_plane(seg.gradient.magnitude, dir / "gradient_magnitude.f32");
        write_float_plane(seg.gradient.gx, dir / "gradient_gx.f32");
        write_float_plane(seg.gradient.gy, dir / "gradient_gy.f32");
        break;
      case DumpStage::kEdges:
        write_edge_png(seg.canny.edges, dir / "edges.png");
        break;
      case DumpStage::kWatershed:
        write_label_map(seg.watershed, dir / "watershed.dblm", LabelMapMode::kRawU32);
        write_label_map(seg.watershed, dir / "watershed.png", LabelMapMode::kColorizedPng);
        break;
      case DumpStage::kRag:
        write_text(dir / "rag.json", rag_json(seg.initial_graph).dump(2) + "\n");
        break;
      case DumpStage::kMergeLog: {
        std::string lines;
        for (const MergeRecord& r : seg.burst.log) lines += merge_record_json(r).dump() + "\n";
        write_text(dir / "merge_log.jsonl", lines);
        break;
      }
    }
  }
  write_text(dir / "stats.json", stats.dump(2) + "\n");
}

PipelineOutcome fail(const fs::path& dir, const std::string& stage, const std::string& message, int code) {
  PipelineOutcome out{code, error_json(stage, message)};
  std::error_code ec;
  if (!dir.empty() && fs::is_directory(dir, ec)) {
    try {
      write_text(dir / "error.json", out.record.dump(2) + "\n");
    } catch (const std::exception&) {
    }
  }
  return out;
}

}  // namespace

PipelineOutcome run_pipeline(const PipelineConfig& cfg) {
  SegmentParams params;
  try {
    params = resolve_params(cfg);
  } catch (const std::exception& e) {
    return fail(cfg.out_dir, "config", e.what(), 2);
  }
  try {
    fs::create_directories(cfg.out_dir);
  } catch (const std::exception& e) {
    return fail({}, "output", e.what(), 3);
  }

  Raster raster;
  try {
    raster = load_image(cfg.input);
  } catch (const std::exception& e) {
    return fail(cfg.out_dir, "input", e.what(), 3);
  }

  try {
    const Segmentation seg = segment(raster, params);
    Json stats = stats_json(seg, params, raster, cfg.input.filename().string());
    try {
      write_artifacts(seg, cfg, stats);
    } catch (const std::exception& e) {
      return fail(cfg.out_dir, "output", e.what(), 3);
    }
    return {0, std::move(stats)};
  } catch (const StageError& e) {
    return fail(cfg.out_dir, e.stage(), e.what(), 1);
  } catch (const std::exception& e) {
    return fail(cfg.out_dir, "internal", e.what(), 1);
  }
}

// ---------------------------------------------------------------------------

bool SweepGrid::empty() const {
  if (!box_width && !t_c && !t_low && !t_high) return true;
  return (box_width && box_width->empty()) || (t_c && t_c->empty()) || (t_low && t_low->empty()) ||
         (t_high && t_high->empty());
}

SweepGrid parse_sweep_grid(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("sweep grid must be a JSON object");
  SweepGrid g;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_array()) throw InvalidArgument("sweep axis '" + key + "' must be an array");
    try {
      if (key == "box_width") {
        g.box_width = value.get<std::vector<int>>();
      } else if (key == "t_c") {
        g.t_c = value.get<std::vector<double>>();
      } else if (key == "t_low") {
        g.t_low = value.get<std::vector<double>>();
      } else if (key == "t_high") {
        g.t_high = value.get<std::vector<double>>();
      } else {
        throw InvalidArgument("unknown sweep axis '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("sweep axis '" + key + "': " + e.what());
    }
  }
  return g;
}

SweepGrid load_sweep_grid(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("unreadable: " + path.string());
  try {
    return parse_sweep_grid(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("sweep grid " + path.string() + ": " + e.what());
  }
}

std::vector<PipelineConfig> expand_grid(const SweepGrid& grid, const PipelineConfig& base) {
  std::vector<PipelineConfig> cells;
  if (grid.empty()) return cells;
  const std::vector<int> widths = grid.box_width.value_or(std::vector<int>{base.box_width});
  const std::vector<double> tcs = grid.t_c.value_or(std::vector<double>{base.t_c});
  std::vector<std::optional<double>> lows;
  std::vector<std::optional<double>> highs;
  if (grid.t_low) {
    for (double v : *grid.t_low) lows.emplace_back(v);
  } else {
    lows.push_back(base.t_low);
  }
  if (grid.t_high) {
    for (double v : *grid.t_high) highs.emplace_back(v);
  } else {
    highs.push_back(base.t_high);
  }
  for (int w : widths)
    for (double tc : tcs)
      for (const auto& lo : lows)
        for (const auto& hi : highs) {
          PipelineConfig c = base;
          c.box_width = w;
          c.t_c = tc;
          c.t_low = lo;
          c.t_high = hi;
          c.dumps.clear();
          cells.push_back(std::move(c));
        }
  return cells;
}

std::vector<SweepRow> run_sweep(const Raster& raster, const std::string& input_name,
                                const std::vector<PipelineConfig>& cells, unsigned threads) {
  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      SweepRow& row = rows[k];
      row.cell = k;
      row.config = cells[k];
      try {
        const SegmentParams params = in_stage("config", [&] { return resolve_params(cells[k]); });
        const Segmentation seg = segment(raster, params);
        row.record = stats_json(seg, params, raster, input_name);
        row.ok = true;
      } catch (const StageError& e) {
        row.record = error_json(e.stage(), e.what());
      } catch (const std::exception& e) {
        row.record = error_json("internal", e.what());
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string sweep_csv_header() {
  return "cell,box_width,t_low,t_high,t_c,t_rsi,status,initial_regions,final_regions,reduction_ratio,"
         "nms_candidates,edge_pixels,outer_iterations,total_merges,t_ind_final,error";
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string num(const Json& v) { return v.is_null() ? std::string() : v.dump(); }

}  // namespace

std::string sweep_csv_row(const SweepRow& row) {
  std::ostringstream s;
  const PipelineConfig& c = row.config;
  s << row.cell << ',' << c.box_width << ',';
  if (row.ok) {
    const Json& p = row.record["parameters"];
    s << num(p["t_low"]) << ',' << num(p["t_high"]) << ',' << num(p["t_c"]) << ',' << num(p["t_rsi"]) << ",ok";
    for (const char* key : {"initial_regions", "final_regions", "reduction_ratio", "nms_candidates", "edge_pixels",
                            "outer_iterations", "total_merges", "t_ind_final"})
      s << ',' << num(row.record[key]);
    s << ',';
  } else {
    s << (c.t_low ? num(Json(*c.t_low)) : "") << ',' << (c.t_high ? num(Json(*c.t_high)) : "") << ','
      << num(Json(c.t_c)) << ',' << num(Json(c.t_rsi)) << ",error,,,,,,,,,";
    const Json& e = row.record["error"];
    s << csv_quote(e["stage"].get<std::string>() + ": " + e["message"].get<std::string>());
  }
  return s.str();
}

PipelineOutcome run_sweep_to_dir(const PipelineConfig& base, const fs::path& grid_file, unsigned threads) {
  SweepGrid grid;
  try {
    grid = load_sweep_grid(grid_file);
  } catch (const std::exception& e) {
    return fail(base.out_dir, "sweep-grid", e.what(), 2);
  }
  try {
    fs::create_directories(base.out_dir);
  } catch (const std::exception& e) {
    return fail({}, "output", e.what(), 3);
  }
  const std::vector<PipelineConfig> cells = expand_grid(grid, base);

  Raster raster;
  if (!cells.empty()) {
    try {
      raster = load_image(base.input);
    } catch (const std::exception& e) {
      return fail(base.out_dir, "input", e.what(), 3);
    }
  }
  const std::vector<SweepRow> rows = run_sweep(raster, base.input.filename().string(), cells, threads);

  std::string csv = sweep_csv_header() + "\n";
  std::string jsonl;
  std::size_t failed = 0;
  for (const SweepRow& r : rows) {
    csv += sweep_csv_row(r) + "\n";
    Json line;
    line["cell"] = r.cell;
    line["ok"] = r.ok;
    line["record"] = r.record;
    jsonl += line.dump() + "\n";
    if (!r.ok) ++failed;
  }
  try {
    write_text(base.out_dir / "sweep.csv", csv);
    write_text(base.out_dir / "sweep.jsonl", jsonl);
  } catch (const std::exception& e) {
    return fail(base.out_dir, "output", e.what(), 3);
  }
  Json summary;
  summary["cells"] = rows.size();
  summary["failed"] = failed;
  return {0, std::move(summary)};
}

}  // namespace damburst
