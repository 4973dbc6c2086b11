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

#include <string_view>

namespace herdtrack {

/// Axis-aligned box in top-left + size form, pixel units.
///
/// Construction validates the invariants (finite, non-negative origin,
/// strictly positive extent) and throws InputError otherwise, so every
/// BoundingBox value in the program is usable without further checks.
class BoundingBox {
 public:
  BoundingBox(double x_left, double y_top, double width, double height);

  double x_left() const { return x_left_; }
  double y_top() const { return y_top_; }
  double width() const { return width_; }
  double height() const { return height_; }

  double x_right() const { return x_left_ + width_; }
  double y_bottom() const { return y_top_ + height_; }
  double area() const { return width_ * height_; }
  double center_x() const { return x_left_ + 0.5 * width_; }
  double center_y() const { return y_top_ + 0.5 * height_; }

  /// Same box shifted by (dx, dy). The result must still be valid.
  BoundingBox translated(double dx, double dy) const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  double x_left_;
  double y_top_;
  double width_;
  double height_;
};

/// Intersection over union, in [0, 1].
double iou(const BoundingBox& a, const BoundingBox& b);

/// Euclidean distance between box centers, in pixels.
double center_distance(const BoundingBox& a, const BoundingBox& b);

/// Localization distance used for MOTP accumulation.
enum class DistanceMode {
  kCenter,        // center distance in pixels (default)
  kOneMinusIou,   // 1 - IoU, unitless
};

double box_distance(const BoundingBox& a, const BoundingBox& b,
                    DistanceMode mode);

std::string_view to_string(DistanceMode mode);
/// Accepts "center" and "one-minus-iou". Throws InputError otherwise.
DistanceMode parse_distance_mode(std::string_view text);

}  // namespace herdtrack
