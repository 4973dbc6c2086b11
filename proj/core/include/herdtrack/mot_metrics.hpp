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

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "herdtrack/geometry.hpp"
#include "herdtrack/tracks.hpp"

namespace herdtrack {

struct MotConfig {
  double iou_gate = 0.5;  // pairs with IoU below this are never matched
  DistanceMode distance_mode = DistanceMode::kCenter;
  double mt_threshold = 0.8;  // mostly tracked: tracked ratio >= this
  double ml_threshold = 0.2;  // mostly lost: tracked ratio <= this
};

struct GtCoverage {
  std::uint64_t frames_present = 0;
  std::uint64_t frames_tracked = 0;
};

struct MotAccumulatorState {
  // Last prediction each ground-truth identity was matched to. Used both for
  // carry-over matching and for switch detection.
  std::map<IdentityId, IdentityId> carried_matches;
  std::uint64_t false_positives = 0;
  std::uint64_t misses = 0;
  std::uint64_t id_switches = 0;
  std::uint64_t fragmentations = 0;
  std::uint64_t total_gt = 0;
  std::uint64_t total_pred = 0;
  double matched_distance_sum = 0.0;
  std::uint64_t matched_count = 0;
  std::map<IdentityId, GtCoverage> per_gt_coverage;
  // Identities that were tracked earlier and are currently unmatched.
  std::set<IdentityId> lost_after_tracked;
  std::uint64_t frames = 0;
};

struct MotSummary {
  double mota = 0.0;
  double motp = 0.0;  // pixels for center mode, unitless for one-minus-iou
  double idf1 = 0.0;
  double idp = 0.0;
  double idr = 0.0;
  double precision = 0.0;  // detection-level TP / (TP + FP)
  double recall = 0.0;     // detection-level TP / GT
  std::uint64_t mostly_tracked = 0;
  std::uint64_t partially_tracked = 0;
  std::uint64_t mostly_lost = 0;
  std::uint64_t id_switches = 0;
  std::uint64_t fragmentations = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t misses = 0;
  std::uint64_t total_gt = 0;
  std::uint64_t matches = 0;
  std::uint64_t idtp = 0;
  std::uint64_t idfp = 0;
  std::uint64_t idfn = 0;
  std::uint64_t frames = 0;

  friend bool operator==(const MotSummary&, const MotSummary&) = default;
};

struct IdMetrics {
  double idf1 = 0.0;
  double idp = 0.0;
  double idr = 0.0;
  std::uint64_t idtp = 0;
  std::uint64_t idfp = 0;
  std::uint64_t idfn = 0;
};

/// CLEAR-MOT accumulator for one sequence. Single writer.
class MotAccumulator {
 public:
  explicit MotAccumulator(MotConfig config = {});

  /// Matches one frame. Every record in `gt` and `pred` must carry the same
  /// frame index and identities must be unique within each side; InputError
  /// otherwise. Either side may be empty.
  void accumulate_frame(std::span<const TrackRecord> gt,
                        std::span<const TrackRecord> pred);

  const MotAccumulatorState& state() const { return state_; }
  const MotConfig& config() const { return config_; }

  /// CLEAR-MOT part of the summary; identity fields stay zero.
  /// Throws EmptyDataError when no ground truth was accumulated.
  MotSummary summarize() const;

 private:
  MotConfig config_;
  MotAccumulatorState state_;
};

/// Global trajectory-level identity metrics (IDF1, IDP, IDR).
IdMetrics id_metrics(const TrackSet& gt, const TrackSet& pred, double iou_gate);

/// Full per-sequence evaluation: every frame in the union of both frame
/// ranges goes through the accumulator, then identity metrics are merged in.
MotSummary evaluate_sequence(const TrackSet& gt, const TrackSet& pred,
                             const MotConfig& config = {});

/// Multi-clip aggregate: rate fields (MOTA, MOTP, IDF1, ...) are the
/// unweighted mean over clips, count fields are summed. Throws
/// EmptyDataError on an empty list.
MotSummary average_summaries(std::span<const MotSummary> clips);

}  // namespace herdtrack
