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
#include <numbers>
#include <vector>

#include "herdtrack/mot_metrics.hpp"
#include "herdtrack/reid_engine.hpp"
#include "herdtrack/tracks.hpp"

namespace herdtrack {

struct MotionModel {
  double speed_px_per_frame = 4.0;
  double direction_change_prob = 0.1;
};

struct EmbeddingModel {
  std::size_t dim = kDefaultEmbeddingDim;
  /// Pairwise angle between cluster centers, radians, in [0, pi/2].
  double cluster_separation = std::numbers::pi / 2.0;
  /// Per-component gaussian noise added before renormalization.
  double noise_sigma = 0.0;
};

/// From `frame` onward the tracks of true identities a and b carry each
/// other's labels.
struct IdentitySwap {
  FrameIndex frame = 2;
  IdentityId identity_a = 1;
  IdentityId identity_b = 2;
};

struct ScenarioConfig {
  std::uint32_t num_identities = 8;
  std::uint32_t num_frames = 300;
  double arena_width = 1280.0;
  double arena_height = 720.0;
  MotionModel motion;
  double box_width = 120.0;
  double box_height = 80.0;
  std::vector<IdentitySwap> switch_plan;
  EmbeddingModel embedding_model;
  double fps = 5.0;
  std::uint64_t seed = 0;
};

/// Throws InputError on an invalid config (swap frame outside
/// [2, num_frames], equal or unknown swap identities, too many identities
/// for the embedding dim, ...).
void validate(const ScenarioConfig& cfg);

/// Generated scenario. Identities are 1..num_identities.
class Scenario {
 public:
  const ScenarioConfig& config() const { return config_; }
  const TrackSet& ground_truth() const { return ground_truth_; }
  const TrackSet& corrupted() const { return corrupted_; }
  /// Observed appearance embedding of a true identity at a frame.
  const EmbeddingVector& true_embedding(FrameIndex frame, IdentityId identity) const;
  /// Label that the corrupted stream gives true `identity` at `frame`.
  IdentityId corrupted_label(FrameIndex frame, IdentityId identity) const;
  /// True identity behind a corrupted label at `frame`.
  IdentityId true_identity(FrameIndex frame, IdentityId label) const;
  /// Identity switches the carry-over matching rule must count on
  /// (ground_truth, corrupted): one per (frame, identity) label change.
  std::uint64_t injected_switch_count() const { return injected_switch_count_; }
  const std::vector<EmbeddingVector>& cluster_centers() const { return centers_; }

 private:
  friend Scenario generate(const ScenarioConfig& cfg);

  std::size_t slot(FrameIndex frame, IdentityId identity) const;

  ScenarioConfig config_;
  TrackSet ground_truth_;
  TrackSet corrupted_;
  std::vector<EmbeddingVector> embeddings_;  // [frame-1][identity-1]
  std::vector<IdentityId> labels_;           // [frame-1][identity-1]
  std::vector<EmbeddingVector> centers_;
  std::uint64_t injected_switch_count_ = 0;
};

/// Deterministic in cfg.seed. Identities random-walk inside the arena with
/// reflecting walls and never overlap one another; embeddings are
/// normalize(center_i + noise). Throws InputError when the arena cannot hold
/// all boxes without overlap.
Scenario generate(const ScenarioConfig& cfg);

struct HarnessReport {
  std::uint64_t idsw_before = 0;
  std::uint64_t idsw_after = 0;
  std::uint64_t false_reinit_count = 0;
  std::uint64_t corrected_switch_count = 0;
  MotSummary mot_before;
  MotSummary mot_after;

  friend bool operator==(const HarnessReport&, const HarnessReport&) = default;
};

struct PipelineRun {
  HarnessReport report;
  TrackSet corrected;
  std::vector<ReidEvent> events;
};

/// Streams the corrupted records after `warmup_frames` through the re-id
/// engine and relabels the stream on every re-init directive.
///
/// Banks are seeded from the true identities over frames 1..warmup_frames.
/// A directive reassigning claimed label i to j exchanges labels i and j
/// from the current record onward, so the displaced track takes over the
/// freed label. Events whose corrected identity matches the underlying true
/// identity count as corrections, others as false re-initialisations.
HarnessReport run_pipeline(const Scenario& s, const ReidConfig& cfg,
                           std::uint32_t warmup_frames);
PipelineRun run_pipeline_detailed(const Scenario& s, const ReidConfig& cfg,
                                  std::uint32_t warmup_frames);

struct SweepGrid {
  std::vector<double> tau_low;
  std::vector<double> tau_high;
  std::vector<double> cadence_s;
};

struct SweepPoint {
  ReidConfig config;
  HarnessReport report;
};

/// One run per grid point (tau_low x tau_high x cadence, in that nesting
/// order) against a single scenario generated from `cfg`. Alpha comes from
/// `base`. Throws InputError on an empty axis or a point violating
/// tau_low < tau_high. Points run concurrently when `parallel` is set;
/// results are identical either way.
std::vector<SweepPoint> sensitivity_sweep(const ScenarioConfig& cfg, const ReidConfig& base,
                                          const SweepGrid& grid, std::uint32_t warmup_frames,
                                          bool parallel = true);

}  // namespace herdtrack
