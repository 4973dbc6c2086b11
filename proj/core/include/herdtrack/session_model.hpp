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
#include <vector>

#include "herdtrack/units.hpp"

namespace herdtrack {

using ObjectId = std::int64_t;
using StreamFrame = std::uint64_t;

struct PruneConfig {
  bool enabled = true;
  std::uint32_t keep_last = 8;   // non-conditioning outputs kept per object
  std::uint32_t interval = 25;   // prune every `interval` processed frames
};

/// Cached tracker outputs for one object. The conditioning entry is never
/// pruned; non-conditioning outputs are keyed by frame index.
struct ObjectCache {
  Bytes cond_frame_bytes = 0;
  std::map<StreamFrame, Bytes> non_cond_outputs;

  Bytes bytes() const;
  friend bool operator==(const ObjectCache&, const ObjectCache&) = default;
};

struct SessionState {
  std::map<ObjectId, ObjectCache> objects;
  std::uint64_t frames_processed = 0;
  PruneConfig config;

  friend bool operator==(const SessionState& a, const SessionState& b) {
    return a.objects == b.objects && a.frames_processed == b.frames_processed;
  }
};

struct PruneEvent {
  std::uint64_t frames_processed = 0;
  std::uint64_t entries_removed = 0;
  Bytes bytes_removed = 0;
  // Allocator cache release point: set when the prune lands on an interval
  // boundary. Annotation only; no memory is released by it.
  bool cache_clear_marker = false;
};

/// Streaming tracker-session memory model. Single writer.
class TrackerSession {
 public:
  explicit TrackerSession(PruneConfig config = {});

  /// Registers an object with its conditioning-frame output size.
  /// Throws InputError if the id is already present.
  void add_object(ObjectId id, Bytes cond_frame_bytes);

  /// Appends one non-conditioning output of `per_object_bytes` to every
  /// object, then prunes if enabled and frames_processed is a multiple of
  /// the interval. Throws InputError if `frame` does not exceed every cached
  /// frame index.
  void step(StreamFrame frame, Bytes per_object_bytes);
  /// Per-object variant; only the listed objects receive an entry.
  void step(StreamFrame frame, const std::map<ObjectId, Bytes>& per_object_bytes);

  /// Keeps only the keep_last most recent non-conditioning outputs of each
  /// object. Idempotent.
  PruneEvent prune();

  Bytes memory_bytes() const;
  const SessionState& state() const { return state_; }
  const std::vector<PruneEvent>& prune_events() const { return events_; }

 private:
  void check_frame(StreamFrame frame) const;
  void after_step(StreamFrame frame);

  SessionState state_;
  StreamFrame last_frame_ = 0;
  bool any_frame_ = false;
  std::vector<PruneEvent> events_;
};

/// Linear growth model behind the streaming simulation.
struct MemoryModelParams {
  double per_frame_per_object_mb = 5.6;
  double base_mb = 0.0;  // fixed offsets: conditioning frames, encodings, runtime
  std::uint32_t num_objects = 8;
  double fps = 30.0;
  double budget_gb = 16.0;
};

/// Throws InputError unless the growth constant, object count, fps and
/// budget are positive and base is non-negative.
void validate(const MemoryModelParams& p);

struct TracePoint {
  StreamFrame frame = 0;
  Bytes bytes = 0;
};

/// Drives a session with constant-size entries for frames 1..frames and
/// records the footprint (base included) after each step. Deterministic.
std::vector<TracePoint> simulate_stream(const MemoryModelParams& p,
                                        std::uint64_t frames,
                                        const PruneConfig& prune);

/// base + frames * k * objects.
Bytes unpruned_footprint(const MemoryModelParams& p, std::uint64_t frames);
/// base + objects * (keep_last + interval) * k; an upper bound on every
/// pruned trace point.
Bytes pruned_footprint_bound(const MemoryModelParams& p, const PruneConfig& prune);
/// keep_last * k.
Bytes steady_state_per_object(const MemoryModelParams& p, const PruneConfig& prune);

/// Seconds until an unpruned stream exhausts the budget:
/// (budget - base) / (k * objects * fps), or 0 when there is no headroom.
double time_to_budget(const MemoryModelParams& p);

}  // namespace herdtrack
