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

#include "herdtrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "herdtrack/errors.hpp"

namespace herdtrack {

BoundingBox::BoundingBox(double x_left, double y_top, double width,
                         double height)
    : x_left_(x_left), y_top_(y_top), width_(width), height_(height) {
  if (!std::isfinite(x_left) || !std::isfinite(y_top) ||
      !std::isfinite(width) || !std::isfinite(height)) {
    throw InputError("bounding box has non-finite coordinates");
  }
  if (x_left < 0.0 || y_top < 0.0) {
    throw InputError("bounding box origin must be non-negative");
  }
  if (width <= 0.0 || height <= 0.0) {
    throw InputError("bounding box width and height must be positive");
  }
}

BoundingBox BoundingBox::translated(double dx, double dy) const {
  return BoundingBox(x_left_ + dx, y_top_ + dy, width_, height_);
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double ix = std::min(a.x_right(), b.x_right()) -
                    std::max(a.x_left(), b.x_left());
  const double iy = std::min(a.y_bottom(), b.y_bottom()) -
                    std::max(a.y_top(), b.y_top());
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double center_distance(const BoundingBox& a, const BoundingBox& b) {
  return std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y());
}

double box_distance(const BoundingBox& a, const BoundingBox& b,
                    DistanceMode mode) {
  switch (mode) {
    case DistanceMode::kCenter:
      return center_distance(a, b);
    case DistanceMode::kOneMinusIou:
      return 1.0 - iou(a, b);
  }
  return center_distance(a, b);
}

std::string_view to_string(DistanceMode mode) {
  return mode == DistanceMode::kCenter ? "center" : "one-minus-iou";
}

DistanceMode parse_distance_mode(std::string_view text) {
  if (text == "center") return DistanceMode::kCenter;
  if (text == "one-minus-iou") return DistanceMode::kOneMinusIou;
  throw InputError("unknown distance mode '" + std::string(text) +
                   "' (expected center or one-minus-iou)");
}

}  // namespace herdtrack
