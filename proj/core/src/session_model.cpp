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

#include "herdtrack/session_model.hpp"

#include <cmath>
#include <iterator>
#include <string>

#include "herdtrack/errors.hpp"

namespace herdtrack {

Bytes ObjectCache::bytes() const {
  Bytes total = cond_frame_bytes;
  for (const auto& [frame, b] : non_cond_outputs) total += b;
  return total;
}

TrackerSession::TrackerSession(PruneConfig config) {
  if (config.enabled && (config.interval == 0 || config.keep_last == 0)) {
    throw InputError("prune keep_last and interval must be >= 1");
  }
  state_.config = config;
}

void TrackerSession::add_object(ObjectId id, Bytes cond_frame_bytes) {
  if (state_.objects.contains(id)) {
    throw InputError("object " + std::to_string(id) + " already registered");
  }
  state_.objects[id].cond_frame_bytes = cond_frame_bytes;
}

void TrackerSession::check_frame(StreamFrame frame) const {
  if (any_frame_ && frame <= last_frame_) {
    throw InputError("non-monotonic frame index " + std::to_string(frame) +
                     " (last was " + std::to_string(last_frame_) + ")");
  }
}

void TrackerSession::after_step(StreamFrame frame) {
  last_frame_ = frame;
  any_frame_ = true;
  ++state_.frames_processed;
  if (state_.config.enabled &&
      state_.frames_processed % state_.config.interval == 0) {
    prune();
  }
}

void TrackerSession::step(StreamFrame frame, Bytes per_object_bytes) {
  check_frame(frame);
  for (auto& [id, cache] : state_.objects) {
    cache.non_cond_outputs.emplace_hint(cache.non_cond_outputs.end(), frame,
                                        per_object_bytes);
  }
  after_step(frame);
}

void TrackerSession::step(StreamFrame frame,
                          const std::map<ObjectId, Bytes>& per_object_bytes) {
  check_frame(frame);
  for (const auto& [id, b] : per_object_bytes) {
    if (!state_.objects.contains(id)) {
      throw InputError("step: unknown object " + std::to_string(id));
    }
  }
  for (const auto& [id, b] : per_object_bytes) {
    auto& outputs = state_.objects[id].non_cond_outputs;
    outputs.emplace_hint(outputs.end(), frame, b);
  }
  after_step(frame);
}

PruneEvent TrackerSession::prune() {
  PruneEvent ev;
  ev.frames_processed = state_.frames_processed;
  const std::size_t keep = state_.config.keep_last;
  for (auto& [id, cache] : state_.objects) {
    auto& outputs = cache.non_cond_outputs;
    if (outputs.size() <= keep) continue;
    // std::map is ordered by frame index, so the oldest entries lead.
    auto cut = outputs.begin();
    std::advance(cut, outputs.size() - keep);
    for (auto it = outputs.begin(); it != cut; ++it) {
      ev.bytes_removed += it->second;
      ++ev.entries_removed;
    }
    outputs.erase(outputs.begin(), cut);
  }
  ev.cache_clear_marker = state_.config.interval > 0 &&
                          state_.frames_processed % state_.config.interval == 0;
  events_.push_back(ev);
  return ev;
}

Bytes TrackerSession::memory_bytes() const {
  Bytes total = 0;
  for (const auto& [id, cache] : state_.objects) total += cache.bytes();
  return total;
}

void validate(const MemoryModelParams& p) {
  if (!(p.per_frame_per_object_mb > 0.0) || !std::isfinite(p.per_frame_per_object_mb)) {
    throw InputError("per-frame-per-object growth must be positive");
  }
  if (!(p.base_mb >= 0.0) || !std::isfinite(p.base_mb)) {
    throw InputError("base footprint must be non-negative");
  }
  if (p.num_objects == 0) throw InputError("object count must be positive");
  if (!(p.fps > 0.0) || !std::isfinite(p.fps)) throw InputError("fps must be positive");
  if (!(p.budget_gb > 0.0) || !std::isfinite(p.budget_gb)) {
    throw InputError("memory budget must be positive");
  }
}

std::vector<TracePoint> simulate_stream(const MemoryModelParams& p,
                                        std::uint64_t frames,
                                        const PruneConfig& prune) {
  validate(p);
  if (frames == 0) throw InputError("simulate_stream: frames must be >= 1");
  const Bytes base = bytes_from_megabytes(p.base_mb);
  const Bytes entry = bytes_from_megabytes(p.per_frame_per_object_mb);
  TrackerSession session(prune);
  for (std::uint32_t i = 0; i < p.num_objects; ++i) session.add_object(i, 0);
  std::vector<TracePoint> trace;
  trace.reserve(frames);
  for (StreamFrame f = 1; f <= frames; ++f) {
    session.step(f, entry);
    trace.push_back({f, base + session.memory_bytes()});
  }
  return trace;
}

Bytes unpruned_footprint(const MemoryModelParams& p, std::uint64_t frames) {
  validate(p);
  return bytes_from_megabytes(p.base_mb) +
         frames * p.num_objects * bytes_from_megabytes(p.per_frame_per_object_mb);
}

Bytes pruned_footprint_bound(const MemoryModelParams& p, const PruneConfig& prune) {
  validate(p);
  const std::uint64_t window =
      static_cast<std::uint64_t>(prune.keep_last) + prune.interval;
  return bytes_from_megabytes(p.base_mb) +
         p.num_objects * window * bytes_from_megabytes(p.per_frame_per_object_mb);
}

Bytes steady_state_per_object(const MemoryModelParams& p, const PruneConfig& prune) {
  validate(p);
  return static_cast<Bytes>(prune.keep_last) *
         bytes_from_megabytes(p.per_frame_per_object_mb);
}

double time_to_budget(const MemoryModelParams& p) {
  validate(p);
  const double headroom = p.budget_gb * 1e9 - p.base_mb * 1e6;
  if (headroom <= 0.0) return 0.0;
  const double rate = p.per_frame_per_object_mb * 1e6 * p.num_objects * p.fps;
  return headroom / rate;
}

}  // namespace herdtrack
