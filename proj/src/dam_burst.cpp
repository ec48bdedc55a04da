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

#include "damburst/dam_burst.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>
#include <utility>

namespace damburst {

void DamBurstParams::validate() const {
  if (!(t_c > 0.0 && t_c < 0.5)) throw InvalidArgument("dam burst: t_c must lie in (0, 0.5)");
  if (!(t_rsi >= 0.0)) throw InvalidArgument("dam burst: t_rsi must be >= 0");
}

namespace {

struct Choice {
  RegionId region = 0;
  double ind = DBL_MAX;
};

// Minimum-InD neighbour that may absorb / be absorbed by `a` right now.
Choice choose_neighbour(const RegionGraph& graph, RegionId a, double mo_a, bool strong, double t_ind,
                        const DamBurstParams& params) {
  Choice best;
  for (RegionId b : graph.neighbours(a)) {
    if (mo(graph.region(b)) > mo_a || dam_strength(*graph.dam(a, b)) > params.t_c) continue;
    const double d = ind(graph.region(a), graph.region(b));
    if (strong && !(d <= t_ind)) continue;
    if (d < best.ind) best = {b, d};
  }
  return best;
}

}  // namespace

DamBurstOutcome dam_burst(RegionGraph graph, const DamBurstParams& params) {
  params.validate();
  DamBurstOutcome out;
  out.stats.region_count_initial = graph.alive_count();

  double t_ind = 0.0;
  bool merged = true;
  while (merged) {
    merged = false;
    const std::size_t pass = out.stats.outer_iterations++;

    std::vector<std::pair<double, RegionId>> order;
    order.reserve(graph.alive_count());
    for (RegionId id : graph.alive_regions()) order.emplace_back(mo(graph.region(id)), id);
    std::sort(order.begin(), order.end());

    std::size_t merges = 0;
    double ind_sum = 0.0;
    for (const auto& [sorted_mo, a] : order) {
      if (!graph.contains(a)) continue;
      const double mo_a = mo(graph.region(a));
      const double rsi_a = graph.rsi(a, params.t_c);
      const bool strong = rsi_a > params.t_rsi;
      const Choice choice = choose_neighbour(graph, a, mo_a, strong, t_ind, params);
      if (choice.region == 0) continue;

      MergeRecord rec;
      rec.pass = pass;
      rec.scanner = a;
      rec.candidate = choice.region;
      rec.mo_scanner = mo_a;
      rec.mo_candidate = mo(graph.region(choice.region));
      rec.rsi_scanner = rsi_a;
      rec.strong = strong;
      rec.ind = choice.ind;
      rec.strength = dam_strength(*graph.dam(a, choice.region));
      rec.t_ind_before = t_ind;
      rec.survivor = std::min(a, choice.region);
      rec.absorbed = std::max(a, choice.region);

      graph.merge(rec.survivor, rec.absorbed);
      merged = true;
      ++merges;
      ind_sum += choice.ind;
      t_ind = std::max(t_ind, ind_sum / static_cast<double>(merges));
      rec.t_ind_after = t_ind;

      out.stats.t_ind_trace.push_back(t_ind);
      out.log.push_back(rec);
    }
    out.stats.total_merges += merges;
    out.stats.merges_per_pass.push_back(merges);
    out.stats.regions_after_pass.push_back(graph.alive_count());
  }

  out.stats.t_ind_final = t_ind;
  out.stats.region_count_final = graph.alive_count();
  out.graph = std::move(graph);
  return out;
}

std::vector<std::string> replay_merge_log(const RegionGraph& initial, const std::vector<MergeRecord>& log,
                                          const DamBurstParams& params) {
  std::vector<std::string> problems;
  RegionGraph graph = initial;
  double t_ind = 0.0;
  std::size_t pass = 0;
  std::size_t merges_in_pass = 0;
  double ind_sum = 0.0;

  for (std::size_t k = 0; k < log.size(); ++k) {
    const MergeRecord& rec = log[k];
    auto fail = [&](const std::string& what) {
      std::ostringstream s;
      s << "merge #" << k << " (" << rec.scanner << " <- " << rec.candidate << ", pass " << rec.pass << "): " << what;
      problems.push_back(s.str());
    };

    if (rec.pass < pass) {
      fail("pass index went backwards");
      break;
    }
    if (rec.pass != pass) {
      pass = rec.pass;
      merges_in_pass = 0;
      ind_sum = 0.0;
    }
    if (!graph.contains(rec.scanner) || !graph.contains(rec.candidate)) {
      fail("region not alive");
      break;
    }
    const Dam* d = graph.dam(rec.scanner, rec.candidate);
    if (d == nullptr) {
      fail("regions not adjacent");
      break;
    }

    const double mo_a = mo(graph.region(rec.scanner));
    const double mo_b = mo(graph.region(rec.candidate));
    const double c = dam_strength(*d);
    const double rsi_a = graph.rsi(rec.scanner, params.t_c);
    const bool strong = rsi_a > params.t_rsi;
    const double d_ind = ind(graph.region(rec.scanner), graph.region(rec.candidate));

    if (mo_b > mo_a) fail("candidate MO exceeds scanner MO");
    if (c > params.t_c) fail("burst dam stronger than t_c");
    if (strong != rec.strong || rsi_a != rec.rsi_scanner) fail("strength index mismatch");
    if (strong && !(d_ind <= t_ind)) fail("strong region merged with InD above T_ind");
    if (rec.t_ind_before != t_ind) fail("T_ind before merge mismatch");
    if (d_ind != rec.ind || c != rec.strength || mo_a != rec.mo_scanner || mo_b != rec.mo_candidate)
      fail("recorded evidence does not match replayed state");
    const Choice best = choose_neighbour(graph, rec.scanner, mo_a, strong, t_ind, params);
    if (best.region != rec.candidate) fail("candidate is not the minimum-InD qualifying neighbour");
    if (rec.survivor != std::min(rec.scanner, rec.candidate) || rec.absorbed != std::max(rec.scanner, rec.candidate))
      fail("survivor is not the lower id");

    graph.merge(rec.survivor, rec.absorbed);
    ++merges_in_pass;
    ind_sum += d_ind;
    t_ind = std::max(t_ind, ind_sum / static_cast<double>(merges_in_pass));
    if (rec.t_ind_after != t_ind) fail("T_ind after merge mismatch");
  }
  return problems;
}

LabelField finalize_labels(const RegionGraph& graph, const LabelField& labels, const Raster& raster) {
  if (labels.extent() != graph.extent() || raster.extent() != graph.extent())
    throw InvalidArgument("finalize_labels: dimension mismatch");
  const std::size_t width = labels.width();
  const std::size_t height = labels.height();
  const std::size_t channels = raster.channels();

  const std::vector<RegionId> alive = graph.alive_regions();
  if (alive.empty()) throw InvalidArgument("finalize_labels: graph has no regions");
  std::vector<Label> dense(static_cast<std::size_t>(graph.max_id()) + 1, kDamLabel);
  for (std::size_t k = 0; k < alive.size(); ++k) dense[alive[k]] = static_cast<Label>(k + 1);

  // Dense id -> root region, for colour means.
  std::vector<RegionId> root_of(alive.size() + 1, 0);
  for (std::size_t k = 0; k < alive.size(); ++k) root_of[k + 1] = alive[k];

  std::vector<Label> out(labels.labels().begin(), labels.labels().end());
  for (Label& l : out)
    if (l != kDamLabel) l = dense[graph.root(l)];

  const auto samples = raster.samples();
  auto colour_distance = [&](std::size_t pixel, Label dense_id) {
    const Region& r = graph.region(root_of[dense_id]);
    double sum = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const double d = static_cast<double>(samples[pixel * channels + c]) - r.mean(c);
      sum += d * d;
    }
    return sum;
  };

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] == kDamLabel) pending.push_back(i);

  std::vector<std::pair<std::size_t, Label>> assigned;
  while (!pending.empty()) {
    assigned.clear();
    std::vector<std::size_t> still;
    for (std::size_t i : pending) {
      const std::size_t x = i % width;
      const std::size_t y = i / width;
      Label best = kDamLabel;
      double best_d = DBL_MAX;
      for (std::size_t ny = y == 0 ? 0 : y - 1; ny <= std::min(y + 1, height - 1); ++ny) {
        for (std::size_t nx = x == 0 ? 0 : x - 1; nx <= std::min(x + 1, width - 1); ++nx) {
          const Label l = out[ny * width + nx];
          if (l == kDamLabel) continue;
          const double d = colour_distance(i, l);
          if (d < best_d || (d == best_d && l < best)) {
            best = l;
            best_d = d;
          }
        }
      }
      if (best == kDamLabel) {
        still.push_back(i);
      } else {
        assigned.emplace_back(i, best);
      }
    }
    if (assigned.empty()) throw InvalidArgument("finalize_labels: dam pixels unreachable from any region");
    for (const auto& [i, l] : assigned) out[i] = l;
    pending = std::move(still);
  }
  return LabelField(width, height, std::move(out));
}

}  // namespace damburst
