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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "herdtrack/geometry.hpp"

namespace herdtrack {

using FrameIndex = std::uint32_t;
using IdentityId = std::int64_t;

struct TrackRecord {
  FrameIndex frame = 1;  // 1-based
  IdentityId id = 0;
  BoundingBox box{0.0, 0.0, 1.0, 1.0};
  double confidence = 1.0;
};

/// Immutable collection of track records, at most one per (frame, id).
///
/// Records are kept sorted by (frame, id) so a frame's records form one
/// contiguous span.
class TrackSet {
 public:
  TrackSet() = default;
  /// Sorts the input. Throws InputError on duplicate (frame, id), frame 0,
  /// or confidence outside [0, 1].
  explicit TrackSet(std::vector<TrackRecord> records);

  std::span<const TrackRecord> records() const { return records_; }
  std::span<const TrackRecord> at_frame(FrameIndex frame) const;
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }

  /// (first, last) frame present; (0, 0) for an empty set.
  std::pair<FrameIndex, FrameIndex> frame_range() const;
  /// Distinct identities, ascending.
  std::vector<IdentityId> identities() const;

 private:
  std::vector<TrackRecord> records_;
};

// Track CSV: header `frame,id,x,y,w,h,score`, rows sorted by frame then id.

/// Throws InputError with the offending line number on any malformed row,
/// unsorted input or duplicate (frame, id).
TrackSet read_track_csv(std::istream& in);
TrackSet read_track_csv(const std::filesystem::path& path);
void write_track_csv(std::ostream& out, const TrackSet& tracks);
void write_track_csv(const std::filesystem::path& path, const TrackSet& tracks);

}  // namespace herdtrack
