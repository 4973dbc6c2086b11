/* Copyright 2026 The herdtrack Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "herdtrack/mot_metrics.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>

#include "herdtrack/assignment.hpp"
#include "herdtrack/errors.hpp"

namespace herdtrack {

namespace {

void validate_frame(std::span<const TrackRecord> records, FrameIndex frame,
                    const char* side) {
  std::vector<IdentityId> ids;
  ids.reserve(records.size());
  for (const auto& r : records) {
    if (r.frame != frame) {
      throw InputError(std::string("accumulate_frame: mixed frame indices in ") +
                       side + " records");
    }
    ids.push_back(r.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InputError(std::string("accumulate_frame: duplicate identity in ") +
                     side + " records");
  }
}

void check_config(const MotConfig& config) {
  if (!(config.iou_gate > 0.0 && config.iou_gate <= 1.0)) {
    throw InputError("iou gate must lie in (0, 1]");
  }
  if (!(config.ml_threshold >= 0.0 && config.ml_threshold < config.mt_threshold &&
        config.mt_threshold <= 1.0)) {
    throw InputError("mostly-lost/mostly-tracked thresholds must satisfy "
                     "0 <= ml < mt <= 1");
  }
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

MotAccumulator::MotAccumulator(MotConfig config) : config_(config) {
  check_config(config_);
}

void MotAccumulator::accumulate_frame(std::span<const TrackRecord> gt,
                                      std::span<const TrackRecord> pred) {
  const FrameIndex frame = !gt.empty() ? gt.front().frame
                           : !pred.empty() ? pred.front().frame
                                           : 0;
  validate_frame(gt, frame, "ground-truth");
  validate_frame(pred, frame, "prediction");
  ++state_.frames;

  std::unordered_map<IdentityId, std::size_t> pred_index;
  for (std::size_t j = 0; j < pred.size(); ++j) pred_index.emplace(pred[j].id, j);

  std::vector<std::optional<std::size_t>> gt_match(gt.size());
  std::vector<char> pred_taken(pred.size(), 0);

  // Carry-over: keep last matches that are still inside the gate.
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const auto carried = state_.carried_matches.find(gt[i].id);
    if (carried == state_.carried_matches.end()) continue;
    const auto it = pred_index.find(carried->second);
    if (it == pred_index.end() || pred_taken[it->second]) continue;
    if (iou(gt[i].box, pred[it->second].box) >= config_.iou_gate) {
      gt_match[i] = it->second;
      pred_taken[it->second] = 1;
    }
  }

  // Remaining pairs by minimum-distance assignment inside the gate.
  std::vector<std::size_t> free_gt, free_pred;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (!gt_match[i]) free_gt.push_back(i);
  }
  for (std::size_t j = 0; j < pred.size(); ++j) {
    if (!pred_taken[j]) free_pred.push_back(j);
  }
  if (!free_gt.empty() && !free_pred.empty()) {
    CostMatrix cost(free_gt.size(), free_pred.size(), kForbidden);
    for (std::size_t a = 0; a < free_gt.size(); ++a) {
      for (std::size_t b = 0; b < free_pred.size(); ++b) {
        const auto& g = gt[free_gt[a]].box;
        const auto& p = pred[free_pred[b]].box;
        if (iou(g, p) >= config_.iou_gate) {
          cost.set(a, b, box_distance(g, p, config_.distance_mode));
        }
      }
    }
    for (const auto& [a, b] : solve_min_cost(cost).pairs) {
      const std::size_t i = free_gt[a];
      const std::size_t j = free_pred[b];
      gt_match[i] = j;
      pred_taken[j] = 1;
      const auto carried = state_.carried_matches.find(gt[i].id);
      if (carried != state_.carried_matches.end() &&
          carried->second != pred[j].id) {
        ++state_.id_switches;
      }
    }
  }

  for (std::size_t i = 0; i < gt.size(); ++i) {
    const IdentityId gid = gt[i].id;
    auto& coverage = state_.per_gt_coverage[gid];
    ++coverage.frames_present;
    ++state_.total_gt;
    if (gt_match[i]) {
      const auto& p = pred[*gt_match[i]];
      ++coverage.frames_tracked;
      ++state_.matched_count;
      state_.matched_distance_sum +=
          box_distance(gt[i].box, p.box, config_.distance_mode);
      state_.carried_matches[gid] = p.id;
      if (state_.lost_after_tracked.erase(gid) > 0) ++state_.fragmentations;
    } else {
      ++state_.misses;
      if (state_.carried_matches.contains(gid)) {
        state_.lost_after_tracked.insert(gid);
      }
    }
  }
  state_.total_pred += pred.size();
  for (std::size_t j = 0; j < pred.size(); ++j) {
    if (!pred_taken[j]) ++state_.false_positives;
  }
}

MotSummary MotAccumulator::summarize() const {
  if (state_.total_gt == 0) {
    throw EmptyDataError("cannot summarize: no ground-truth boxes accumulated");
  }
  MotSummary s;
  const double gt = static_cast<double>(state_.total_gt);
  s.mota = 1.0 - static_cast<double>(state_.misses + state_.false_positives +
                                     state_.id_switches) / gt;
  s.motp = safe_ratio(state_.matched_distance_sum,
                      static_cast<double>(state_.matched_count));
  s.precision = safe_ratio(static_cast<double>(state_.matched_count),
                           static_cast<double>(state_.total_pred));
  s.recall = static_cast<double>(state_.matched_count) / gt;
  for (const auto& [id, coverage] : state_.per_gt_coverage) {
    const double ratio = safe_ratio(static_cast<double>(coverage.frames_tracked),
                                    static_cast<double>(coverage.frames_present));
    if (ratio >= config_.mt_threshold) {
      ++s.mostly_tracked;
    } else if (ratio <= config_.ml_threshold) {
      ++s.mostly_lost;
    } else {
      ++s.partially_tracked;
    }
  }
  s.id_switches = state_.id_switches;
  s.fragmentations = state_.fragmentations;
  s.false_positives = state_.false_positives;
  s.misses = state_.misses;
  s.total_gt = state_.total_gt;
  s.matches = state_.matched_count;
  s.frames = state_.frames;
  return s;
}

IdMetrics id_metrics(const TrackSet& gt, const TrackSet& pred, double iou_gate) {
  if (!(iou_gate > 0.0 && iou_gate <= 1.0)) {
    throw InputError("iou gate must lie in (0, 1]");
  }
  const auto gt_ids = gt.identities();
  const auto pred_ids = pred.identities();
  std::unordered_map<IdentityId, std::size_t> gt_slot, pred_slot;
  for (std::size_t i = 0; i < gt_ids.size(); ++i) gt_slot.emplace(gt_ids[i], i);
  for (std::size_t j = 0; j < pred_ids.size(); ++j) pred_slot.emplace(pred_ids[j], j);

  const std::size_t ng = gt_ids.size();
  const std::size_t np = pred_ids.size();
  std::vector<std::uint64_t> gt_len(ng, 0), pred_len(np, 0);
  std::vector<std::uint64_t> overlap(ng * np, 0);
  for (const auto& r : gt.records()) ++gt_len[gt_slot.at(r.id)];
  for (const auto& r : pred.records()) ++pred_len[pred_slot.at(r.id)];

  // Gated co-occurrence counts, one frame at a time.
  const auto [g_lo, g_hi] = gt.frame_range();
  for (FrameIndex f = g_lo; !gt.empty() && f <= g_hi; ++f) {
    const auto gf = gt.at_frame(f);
    if (gf.empty()) continue;
    const auto pf = pred.at_frame(f);
    for (const auto& g : gf) {
      for (const auto& p : pf) {
        if (iou(g.box, p.box) >= iou_gate) {
          ++overlap[gt_slot.at(g.id) * np + pred_slot.at(p.id)];
        }
      }
    }
    if (f == g_hi) break;
  }

  // Bipartite problem over trajectories with one dummy node per trajectory.
  // Real pair cost = frames not jointly covered; a trajectory matched to its
  // dummy pays its full length.
  const std::size_t n = ng + np;
  CostMatrix cost(n, n, kForbidden);
  for (std::size_t i = 0; i < ng; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      const std::uint64_t o = overlap[i * np + j];
      if (o == 0) continue;
      cost.set(i, j, static_cast<double>(gt_len[i] + pred_len[j] - 2 * o));
    }
    cost.set(i, np + i, static_cast<double>(gt_len[i]));
  }
  for (std::size_t j = 0; j < np; ++j) {
    cost.set(ng + j, j, static_cast<double>(pred_len[j]));
    for (std::size_t i = 0; i < ng; ++i) cost.set(ng + j, np + i, 0.0);
  }

  IdMetrics m;
  for (const auto& [r, c] : solve_min_cost(cost).pairs) {
    if (r < ng && c < np) m.idtp += overlap[r * np + c];
  }
  std::uint64_t total_gt = 0, total_pred = 0;
  for (auto v : gt_len) total_gt += v;
  for (auto v : pred_len) total_pred += v;
  m.idfn = total_gt - m.idtp;
  m.idfp = total_pred - m.idtp;
  const double tp = static_cast<double>(m.idtp);
  m.idp = safe_ratio(tp, static_cast<double>(total_pred));
  m.idr = safe_ratio(tp, static_cast<double>(total_gt));
  m.idf1 = safe_ratio(2.0 * tp, 2.0 * tp + static_cast<double>(m.idfp + m.idfn));
  return m;
}

MotSummary evaluate_sequence(const TrackSet& gt, const TrackSet& pred,
                             const MotConfig& config) {
  if (gt.empty()) throw EmptyDataError("ground truth contains no records");
  MotAccumulator acc(config);
  const auto [g_lo, g_hi] = gt.frame_range();
  FrameIndex lo = g_lo, hi = g_hi;
  if (!pred.empty()) {
    lo = std::min(lo, pred.frame_range().first);
    hi = std::max(hi, pred.frame_range().second);
  }
  for (FrameIndex f = lo;; ++f) {
    acc.accumulate_frame(gt.at_frame(f), pred.at_frame(f));
    if (f == hi) break;
  }
  MotSummary s = acc.summarize();
  const IdMetrics id = id_metrics(gt, pred, config.iou_gate);
  s.idf1 = id.idf1;
  s.idp = id.idp;
  s.idr = id.idr;
  s.idtp = id.idtp;
  s.idfp = id.idfp;
  s.idfn = id.idfn;
  return s;
}

MotSummary average_summaries(std::span<const MotSummary> clips) {
  if (clips.empty()) throw EmptyDataError("no clip summaries to average");
  MotSummary out;
  for (const auto& c : clips) {
    out.mota += c.mota;
    out.motp += c.motp;
    out.idf1 += c.idf1;
    out.idp += c.idp;
    out.idr += c.idr;
    out.precision += c.precision;
    out.recall += c.recall;
    out.mostly_tracked += c.mostly_tracked;
    out.partially_tracked += c.partially_tracked;
    out.mostly_lost += c.mostly_lost;
    out.id_switches += c.id_switches;
    out.fragmentations += c.fragmentations;
    out.false_positives += c.false_positives;
    out.misses += c.misses;
    out.total_gt += c.total_gt;
    out.matches += c.matches;
    out.idtp += c.idtp;
    out.idfp += c.idfp;
    out.idfn += c.idfn;
    out.frames += c.frames;
  }
  const double k = static_cast<double>(clips.size());
  out.mota /= k;
  out.motp /= k;
  out.idf1 /= k;
  out.idp /= k;
  out.idr /= k;
  out.precision /= k;
  out.recall /= k;
  return out;
}

}  // namespace herdtrack
