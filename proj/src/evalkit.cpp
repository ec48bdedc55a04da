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

#include "damburst/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "damburst/raster_io.hpp"

namespace damburst::evalkit {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform in (0, 1).
double unit(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53; }

std::uint8_t to_u8(double v) { return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0)); }

}  // namespace

double gaussian_noise(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t base = mix64(seed * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull);
  const double u1 = unit(mix64(base ^ (2 * counter)));
  const double u2 = unit(mix64(base ^ (2 * counter + 1)));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SyntheticScene gen_step_scene(std::size_t width, std::size_t height, const std::vector<int>& intensities,
                              double noise_sigma, std::uint64_t seed, int box_width) {
  if (intensities.size() < 2) throw InvalidArgument("gen_step_scene: need at least 2 bands");
  if (width < intensities.size() || height == 0) throw InvalidArgument("gen_step_scene: image too small");
  if (noise_sigma < 0.0) throw InvalidArgument("gen_step_scene: negative noise");

  const std::size_t bands = intensities.size();
  const std::size_t band_width = width / bands;
  SyntheticScene scene{Raster(width, height, 1), LabelField(width, height), {}};
  if (band_width < 2 * static_cast<std::size_t>(box_width)) {
    scene.warnings.push_back("band width " + std::to_string(band_width) + " is below 2 * box_width (" +
                             std::to_string(2 * box_width) + ")");
  }
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t band = std::min(x / band_width, bands - 1);
      const double noise = noise_sigma > 0.0 ? noise_sigma * gaussian_noise(seed, y * width + x) : 0.0;
      scene.raster.at(x, y) = to_u8(intensities[band] + noise);
      scene.ground_truth.at(x, y) = static_cast<Label>(band + 1);
    }
  }
  return scene;
}

SyntheticScene gen_texture_scene(std::size_t width, std::size_t height, std::size_t period, int amplitude) {
  if (period < 2) throw InvalidArgument("gen_texture_scene: period must be >= 2");
  if (width < 2 || height == 0) throw InvalidArgument("gen_texture_scene: image too small");
  if (amplitude < 0 || amplitude > 215) throw InvalidArgument("gen_texture_scene: amplitude must lie in [0, 215]");

  constexpr int kLow = 40;
  const double flat = kLow + amplitude / 2.0 + 100.0;
  const std::size_t split = texture_patch_begin(width);
  SyntheticScene scene{Raster(width, height, 1), LabelField(width, height), {}};
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      if (x < split) {
        scene.raster.at(x, y) = to_u8(flat);
        scene.ground_truth.at(x, y) = 1;
      } else {
        const bool high = ((x - split) / period + y / period) % 2 == 1;
        scene.raster.at(x, y) = static_cast<std::uint8_t>(high ? kLow + amplitude : kLow);
        scene.ground_truth.at(x, y) = 2;
      }
    }
  }
  return scene;
}

void write_scene(const SyntheticScene& scene, const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  write_png(scene.raster, dir / (stem + ".png"));
  write_label_map(scene.ground_truth, dir / (stem + "_gt.dblm"), LabelMapMode::kRawU32);
}

// ---------------------------------------------------------------------------

namespace {

// Pixels with a 4-neighbour of a different label; dam pixels always count.
std::vector<std::uint8_t> boundary_mask(const LabelField& l) {
  const std::size_t w = l.width();
  const std::size_t h = l.height();
  std::vector<std::uint8_t> mask(w * h, 0);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const Label v = l.at(x, y);
      bool b = v == kDamLabel;
      if (x > 0 && l.at(x - 1, y) != v) b = true;
      if (x + 1 < w && l.at(x + 1, y) != v) b = true;
      if (y > 0 && l.at(x, y - 1) != v) b = true;
      if (y + 1 < h && l.at(x, y + 1) != v) b = true;
      mask[y * w + x] = b ? 1 : 0;
    }
  }
  return mask;
}

// 1-D squared distance transform (lower envelope of parabolas).
void edt_1d(const std::vector<double>& f, std::vector<double>& d) {
  const std::size_t n = f.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> v(n);
  std::vector<double> z(n + 1);
  std::size_t k = 0;
  std::size_t first = n;
  for (std::size_t q = 0; q < n; ++q)
    if (f[q] < kInf) {
      first = q;
      break;
    }
  if (first == n) {
    std::fill(d.begin(), d.end(), kInf);
    return;
  }
  v[0] = first;
  z[0] = -kInf;
  z[1] = kInf;
  for (std::size_t q = first + 1; q < n; ++q) {
    if (!(f[q] < kInf)) continue;
    double s;
    while (true) {
      const double qd = static_cast<double>(q);
      const double vd = static_cast<double>(v[k]);
      s = ((f[q] + qd * qd) - (f[v[k]] + vd * vd)) / (2.0 * qd - 2.0 * vd);
      if (s <= z[k] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<double>(q)) ++k;
    const double diff = static_cast<double>(q) - static_cast<double>(v[k]);
    d[q] = diff * diff + f[v[k]];
  }
}

std::vector<double> squared_distance_to(const std::vector<std::uint8_t>& mask, std::size_t w, std::size_t h) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> grid(w * h);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = mask[i] ? 0.0 : kInf;
  std::vector<double> f;
  std::vector<double> d;
  f.resize(h);
  d.resize(h);
  for (std::size_t x = 0; x < w; ++x) {
    for (std::size_t y = 0; y < h; ++y) f[y] = grid[y * w + x];
    edt_1d(f, d);
    for (std::size_t y = 0; y < h; ++y) grid[y * w + x] = d[y];
  }
  f.resize(w);
  d.resize(w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) f[x] = grid[y * w + x];
    edt_1d(f, d);
    for (std::size_t x = 0; x < w; ++x) grid[y * w + x] = d[x];
  }
  return grid;
}

}  // namespace

GroundTruthComparison compare_to_ground_truth(const LabelField& pred, const LabelField& gt) {
  if (pred.extent() != gt.extent()) throw InvalidArgument("compare_to_ground_truth: dimension mismatch");
  GroundTruthComparison out;

  // overlap[pred][gt] pixel counts.
  std::map<Label, std::map<Label, std::size_t>> overlap;
  std::map<Label, std::size_t> area;
  const auto p = pred.labels();
  const auto g = gt.labels();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == kDamLabel) continue;
    ++overlap[p[i]][g[i]];
    ++area[p[i]];
  }

  std::map<Label, std::size_t> majority_count;
  for (const auto& [region, by_gt] : overlap) {
    const auto best = std::max_element(by_gt.begin(), by_gt.end(),
                                       [](const auto& l, const auto& r) { return l.second < r.second; });
    ++majority_count[best->first];

    std::size_t heavy = 0;
    for (const auto& [gt_label, count] : by_gt)
      if (static_cast<double>(count) >= 0.1 * static_cast<double>(area[region])) ++heavy;
    if (heavy >= 2) out.under_seg_regions.push_back(region);
  }
  for (const auto& [gt_label, count] : majority_count) out.over_seg_count += count > 0 ? count - 1 : 0;

  const std::size_t w = gt.width();
  const std::size_t h = gt.height();
  const auto gt_boundary = boundary_mask(gt);
  const auto pred_boundary = boundary_mask(pred);
  const auto dist2 = squared_distance_to(pred_boundary, w, h);
  double sum = 0.0;
  for (std::size_t i = 0; i < gt_boundary.size(); ++i) {
    if (!gt_boundary[i]) continue;
    const double d = std::sqrt(dist2[i]);
    ++out.boundary.count;
    sum += d;
    out.boundary.max = std::max(out.boundary.max, d);
  }
  out.boundary.mean = out.boundary.count == 0 ? 0.0 : sum / static_cast<double>(out.boundary.count);
  return out;
}

// ---------------------------------------------------------------------------

OracleGraph rebuild_oracle(const LabelField& labels, const GradientField& gradient, const Raster& raster,
                           const EdgeMap& edges) {
  if (gradient.extent() != labels.extent() || raster.extent() != labels.extent() ||
      edges.extent() != labels.extent())
    throw InvalidArgument("rebuild_oracle: dimension mismatch");
  const long w = static_cast<long>(labels.width());
  const long h = static_cast<long>(labels.height());
  OracleGraph out;

  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      const Label l = labels.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
      if (l == kDamLabel) continue;
      OracleRegion& r = out.regions[l];
      if (r.channel_sums.empty()) r.channel_sums.assign(raster.channels(), 0.0);
      r.pixel_count += 1;
      r.gradient_sum += gradient.magnitude.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
      for (std::size_t c = 0; c < raster.channels(); ++c)
        r.channel_sums[c] += raster.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y), c);
    }
  }

  auto inside = [&](long x, long y) { return x >= 0 && y >= 0 && x < w && y < h; };
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      if (labels.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) != kDamLabel) continue;
      std::set<Label> around;
      bool near_edge = false;
      for (long dy = -1; dy <= 1; ++dy) {
        for (long dx = -1; dx <= 1; ++dx) {
          if (!inside(x + dx, y + dy)) continue;
          const auto nx = static_cast<std::size_t>(x + dx);
          const auto ny = static_cast<std::size_t>(y + dy);
          if (edges.at(nx, ny)) near_edge = true;
          if (dx == 0 && dy == 0) continue;
          const Label l = labels.at(nx, ny);
          if (l != kDamLabel) around.insert(l);
        }
      }
      for (auto i = around.begin(); i != around.end(); ++i) {
        for (auto j = std::next(i); j != around.end(); ++j) {
          OracleDam& d = out.dams[{*i, *j}];
          d.length += 1;
          if (near_edge) d.strengthened += 1;
        }
      }
    }
  }
  return out;
}

LabelField substitute_labels(const LabelField& labels, const RegionGraph& graph) {
  LabelField out = labels;
  for (Label& l : out.labels())
    if (l != kDamLabel) l = graph.root(l);
  return out;
}

std::vector<std::string> compare_with_oracle(const RegionGraph& graph, const OracleGraph& oracle, double rel_tol) {
  std::vector<std::string> problems;
  auto report = [&](const std::string& s) { problems.push_back(s); };
  auto close = [&](double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) <= rel_tol * scale;
  };

  const auto alive = graph.alive_regions();
  if (alive.size() != oracle.regions.size())
    report("region count " + std::to_string(alive.size()) + " vs oracle " + std::to_string(oracle.regions.size()));
  for (RegionId id : alive) {
    const auto it = oracle.regions.find(id);
    if (it == oracle.regions.end()) {
      report("region " + std::to_string(id) + " missing from oracle");
      continue;
    }
    const Region& r = graph.region(id);
    const OracleRegion& o = it->second;
    if (r.pixel_count != o.pixel_count) report("region " + std::to_string(id) + " pixel_count differs");
    if (!close(r.gradient_sum, o.gradient_sum)) report("region " + std::to_string(id) + " gradient_sum differs");
    for (std::size_t c = 0; c < r.channel_sums.size(); ++c)
      if (!close(r.channel_sums[c], o.channel_sums[c]))
        report("region " + std::to_string(id) + " channel " + std::to_string(c) + " sum differs");
  }

  const auto dams = graph.dams();
  if (dams.size() != oracle.dams.size())
    report("dam count " + std::to_string(dams.size()) + " vs oracle " + std::to_string(oracle.dams.size()));
  for (const Dam* d : dams) {
    const auto it = oracle.dams.find({d->a, d->b});
    const std::string name = "dam (" + std::to_string(d->a) + "," + std::to_string(d->b) + ")";
    if (it == oracle.dams.end()) {
      report(name + " missing from oracle");
      continue;
    }
    if (d->length() != it->second.length) report(name + " length differs");
    if (d->strengthened != it->second.strengthened) report(name + " strengthened differs");
  }
  return problems;
}

// ---------------------------------------------------------------------------

FourBasinFixture make_four_basin_fixture(std::size_t size) {
  if (size < 8) throw InvalidArgument("four-basin fixture needs size >= 8");
  const std::size_t mid = size / 2;
  FourBasinFixture f;
  f.raster = Raster(size, size, 1);
  f.labels = LabelField(size, size);
  f.ground_truth = LabelField(size, size);
  f.edges = EdgeMap(size, size);

  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const bool right = x >= mid;
      f.raster.at(x, y) = right ? 200 : 50;
      f.ground_truth.at(x, y) = right ? 2 : 1;
      Label l = kDamLabel;
      if (x != mid && y != mid) l = (x < mid ? 1 : 3) + (y < mid ? 0 : 1);
      f.labels.at(x, y) = l;
      if (x == mid) f.edges.set(x, y);
    }
  }
  f.gradient = haar_gradient(to_luminance(f.raster), BoxWidth(5));
  return f;
}

bool same_partition(const LabelField& a, const LabelField& b) {
  if (a.extent() != b.extent()) return false;
  std::map<Label, Label> forward;
  std::map<Label, Label> backward;
  const auto la = a.labels();
  const auto lb = b.labels();
  for (std::size_t i = 0; i < la.size(); ++i) {
    const auto [f, fi] = forward.emplace(la[i], lb[i]);
    if (!fi && f->second != lb[i]) return false;
    const auto [r, ri] = backward.emplace(lb[i], la[i]);
    if (!ri && r->second != la[i]) return false;
  }
  return true;
}

std::size_t count_components(const EdgeMap& mask, bool eight_connected) {
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  std::vector<std::uint8_t> seen(w * h, 0);
  std::size_t components = 0;
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < w * h; ++start) {
    if (!mask.test(start) || seen[start]) continue;
    ++components;
    seen[start] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      const long x = static_cast<long>(i % w);
      const long y = static_cast<long>(i / w);
      for (long dy = -1; dy <= 1; ++dy) {
        for (long dx = -1; dx <= 1; ++dx) {
          if ((dx == 0 && dy == 0) || (!eight_connected && dx != 0 && dy != 0)) continue;
          const long nx = x + dx;
          const long ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= static_cast<long>(w) || ny >= static_cast<long>(h)) continue;
          const std::size_t j = static_cast<std::size_t>(ny) * w + static_cast<std::size_t>(nx);
          if (mask.test(j) && !seen[j]) {
            seen[j] = 1;
            queue.push_back(j);
          }
        }
      }
    }
  }
  return components;
}

}  // namespace damburst::evalkit
