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


// damburst: segment one image, or sweep a parameter grid over it.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "damburst/pipeline.hpp"

int main(int argc, char** argv) {
  using namespace damburst;
  CLI::App app{"Edge-constrained region merging segmentation"};

  PipelineConfig cfg;
  std::string input;
  std::string out_dir;
  std::optional<double> t_low;
  std::optional<double> t_high;
  std::vector<std::string> dumps;
  std::string sweep;
  unsigned threads = 0;

  app.add_option("--input", input, "Input image (PNG or PNM)")->required();
  app.add_option("--out-dir", out_dir, "Output directory")->required();
  app.add_option("--box-width", cfg.box_width, "Haar box width (5, 7, 9, 11, 13 or 15)")->capture_default_str();
  app.add_option("--t-low", t_low, "Retained fraction of NMS candidates for the low threshold");
  app.add_option("--t-high", t_high, "Retained fraction for the high threshold (<= t-low)");
  app.add_option("--t-c", cfg.t_c, "Dam strength limit for bursting")->capture_default_str();
  app.add_option("--t-rsi", cfg.t_rsi, "Strength index above which a region is strong")->capture_default_str();
  app.add_option("--dump", dumps, "Intermediates: gradient,edges,watershed,rag,merge-log")->delimiter(',');
  app.add_option("--sweep", sweep, "JSON grid over box_width, t_c, t_low, t_high");
  app.add_option("--threads", threads, "Sweep worker threads (0 = all cores)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  cfg.input = input;
  cfg.out_dir = out_dir;
  cfg.t_low = t_low;
  cfg.t_high = t_high;
  try {
    for (const std::string& d : dumps) cfg.dumps.insert(parse_dump_stage(d));
  } catch (const std::exception& e) {
    std::cerr << error_json("config", e.what()).dump() << "\n";
    return 2;
  }

  const PipelineOutcome out = sweep.empty() ? run_pipeline(cfg) : run_sweep_to_dir(cfg, sweep, threads);
  if (out.exit_code != 0) {
    std::cerr << out.record.dump() << "\n";
    return out.exit_code;
  }
  std::cout << out.record.dump(2) << "\n";
  return 0;
}
