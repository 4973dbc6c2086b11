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
#include <string>
#include <vector>

#include "herdtrack/distill_loss.hpp"
#include "herdtrack/random.hpp"
#include "herdtrack/tracks.hpp"

namespace herdtrack::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(HERDTRACK_FIXTURE_DIR) / name;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("herdtrack_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline FeatureTensor random_tensor(FeatureTensor::Dims dims, CounterRng& rng,
                                   double scale = 1.0) {
  FeatureTensor t(dims);
  for (double& v : t.values()) v = scale * rng.normal();
  return t;
}

/// Straight-line track of `frames` boxes for one identity.
inline std::vector<TrackRecord> lane(IdentityId id, FrameIndex first, FrameIndex last,
                                     double y, double step = 2.0) {
  std::vector<TrackRecord> out;
  for (FrameIndex f = first; f <= last; ++f) {
    out.push_back({f, id, BoundingBox(10.0 + step * f, y, 40.0, 30.0), 1.0});
  }
  return out;
}

inline std::vector<TrackRecord> concat(std::vector<std::vector<TrackRecord>> parts) {
  std::vector<TrackRecord> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace herdtrack::testing
