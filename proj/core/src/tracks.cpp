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

#include "herdtrack/tracks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "herdtrack/errors.hpp"

namespace herdtrack {

namespace {

auto frame_id_key(const TrackRecord& r) { return std::pair(r.frame, r.id); }

}  // namespace

TrackSet::TrackSet(std::vector<TrackRecord> records)
    : records_(std::move(records)) {
  std::stable_sort(records_.begin(), records_.end(),
                   [](const TrackRecord& a, const TrackRecord& b) {
                     return frame_id_key(a) < frame_id_key(b);
                   });
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.frame < 1) throw InputError("track record frame index must be >= 1");
    if (!(r.confidence >= 0.0 && r.confidence <= 1.0)) {
      throw InputError("track record confidence must lie in [0, 1]");
    }
    if (i > 0 && frame_id_key(records_[i - 1]) == frame_id_key(r)) {
      throw InputError("duplicate track record for frame " +
                       std::to_string(r.frame) + ", id " +
                       std::to_string(r.id));
    }
  }
}

std::span<const TrackRecord> TrackSet::at_frame(FrameIndex frame) const {
  const auto lo = std::lower_bound(
      records_.begin(), records_.end(), frame,
      [](const TrackRecord& r, FrameIndex f) { return r.frame < f; });
  const auto hi = std::upper_bound(
      lo, records_.end(), frame,
      [](FrameIndex f, const TrackRecord& r) { return f < r.frame; });
  return {lo, hi};
}

std::pair<FrameIndex, FrameIndex> TrackSet::frame_range() const {
  if (records_.empty()) return {0, 0};
  return {records_.front().frame, records_.back().frame};
}

std::vector<IdentityId> TrackSet::identities() const {
  std::vector<IdentityId> ids;
  ids.reserve(records_.size());
  for (const auto& r : records_) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

namespace {

constexpr std::string_view kTrackHeader = "frame,id,x,y,w,h,score";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& what) {
  throw InputError("track csv line " + std::to_string(line_no) + ": " + what);
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no, const char* name) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    fail_at(line_no, std::string("cannot parse ") + name + " from '" +
                         std::string(field) + "'");
  }
  return value;
}

}  // namespace

TrackSet read_track_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw InputError("track csv: missing header");
  ++line_no;
  if (trim(line) != kTrackHeader) {
    fail_at(line_no, "expected header '" + std::string(kTrackHeader) + "'");
  }
  std::vector<TrackRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto f = split_commas(body);
    if (f.size() != 7) {
      fail_at(line_no, "expected 7 fields, found " + std::to_string(f.size()));
    }
    const auto frame = parse_field<std::int64_t>(f[0], line_no, "frame");
    if (frame < 1 || frame > std::numeric_limits<FrameIndex>::max()) {
      fail_at(line_no, "frame index must be >= 1");
    }
    TrackRecord rec;
    rec.frame = static_cast<FrameIndex>(frame);
    rec.id = parse_field<IdentityId>(f[1], line_no, "id");
    const auto x = parse_field<double>(f[2], line_no, "x");
    const auto y = parse_field<double>(f[3], line_no, "y");
    const auto w = parse_field<double>(f[4], line_no, "w");
    const auto h = parse_field<double>(f[5], line_no, "h");
    rec.confidence = parse_field<double>(f[6], line_no, "score");
    try {
      rec.box = BoundingBox(x, y, w, h);
    } catch (const InputError& e) {
      fail_at(line_no, e.what());
    }
    if (!(rec.confidence >= 0.0 && rec.confidence <= 1.0)) {
      fail_at(line_no, "score must lie in [0, 1]");
    }
    if (!records.empty()) {
      const auto prev = frame_id_key(records.back());
      const auto cur = frame_id_key(rec);
      if (cur == prev) fail_at(line_no, "duplicate (frame, id) pair");
      if (cur < prev) fail_at(line_no, "records not sorted by frame then id");
    }
    records.push_back(rec);
  }
  return TrackSet(std::move(records));
}

TrackSet read_track_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open track file " + path.string());
  return read_track_csv(in);
}

void write_track_csv(std::ostream& out, const TrackSet& tracks) {
  out << kTrackHeader << '\n';
  std::ostringstream row;
  row << std::setprecision(17);
  for (const auto& r : tracks.records()) {
    row.str({});
    row << r.frame << ',' << r.id << ',' << r.box.x_left() << ','
        << r.box.y_top() << ',' << r.box.width() << ',' << r.box.height()
        << ',' << r.confidence << '\n';
    out << row.str();
  }
}

void write_track_csv(const std::filesystem::path& path, const TrackSet& tracks) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write track file " + path.string());
  write_track_csv(out, tracks);
}

}  // namespace herdtrack
