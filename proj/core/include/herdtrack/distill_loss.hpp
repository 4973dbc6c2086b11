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

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace herdtrack {

/// Dense (B, C, H, W) tensor, row-major, 64-bit values.
class FeatureTensor {
 public:
  using Dims = std::array<std::size_t, 4>;

  FeatureTensor() = default;
  /// Zero-filled tensor. Every dim must be >= 1.
  explicit FeatureTensor(Dims dims);
  /// Throws InputError when the value count does not match or a value is
  /// not finite.
  FeatureTensor(Dims dims, std::vector<double> values);

  const Dims& dims() const { return dims_; }
  std::size_t batch() const { return dims_[0]; }
  std::size_t channels() const { return dims_[1]; }
  std::size_t height() const { return dims_[2]; }
  std::size_t width() const { return dims_[3]; }
  std::size_t size() const { return values_.size(); }

  std::size_t offset(std::size_t b, std::size_t c, std::size_t y,
                     std::size_t x) const {
    return ((b * dims_[1] + c) * dims_[2] + y) * dims_[3] + x;
  }
  double at(std::size_t b, std::size_t c, std::size_t y, std::size_t x) const {
    return values_[offset(b, c, y, x)];
  }
  double& at(std::size_t b, std::size_t c, std::size_t y, std::size_t x) {
    return values_[offset(b, c, y, x)];
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  FeatureTensor scaled(double factor) const;
  /// Mirrors the W axis.
  FeatureTensor flipped_horizontal() const;

 private:
  Dims dims_{0, 0, 0, 0};
  std::vector<double> values_;
};

/// Term weights; the defaults weight direction over scale.
struct LossWeights {
  double directional = 1.0;
  double cosine = 0.5;
  double moment = 0.3;
  double raw = 0.1;
};

struct LossOptions {
  LossWeights weights;
  /// When set, zero norms and zero standard deviations are regularized by
  /// `epsilon` instead of raising DegenerateInputError.
  bool epsilon_mode = false;
  double epsilon = 1e-12;
};

struct LossBreakdown {
  double directional = 0.0;
  double cosine = 0.0;
  double moment = 0.0;
  double raw = 0.0;
  double total = 0.0;
};

/// Per-(batch, channel) spatial moments, population convention.
struct MomentStats {
  std::vector<double> mean;    // index b * C + c
  std::vector<double> stddev;  // index b * C + c
};

MomentStats channel_moments(const FeatureTensor& t);

/// Four-term direction-then-scale distillation loss:
///
///   directional  mean over all elements of (s/|s| - t/|t|)^2, with the L2
///                norm taken per batch sample over its whole (C, H, W) block
///   cosine       mean over the B*H*W spatial locations of 1 - cos(s, t)
///                between the C-dimensional feature vectors at that location
///   moment       mean over (b, c) of (sigma_s - sigma_t)^2 + (mu_s - mu_t)^2
///   raw          mean over all elements of (s - t)^2
///
/// Throws InputError on a dims mismatch and DegenerateInputError when a
/// student or teacher sample (or spatial feature vector) has zero norm,
/// unless epsilon mode is enabled.
LossBreakdown compute_loss(const FeatureTensor& student,
                           const FeatureTensor& teacher,
                           const LossOptions& options = {});

/// Analytic d(total)/d(student), same dims as the inputs.
///
/// A student channel with zero spatial deviation contributes no gradient
/// through its standard-deviation term (the subgradient at the kink).
FeatureTensor loss_gradient(const FeatureTensor& student,
                            const FeatureTensor& teacher,
                            const LossOptions& options = {});

struct GradCheckResult {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  std::size_t worst_index = 0;
};

/// Compares loss_gradient against central finite differences of
/// compute_loss. The step for element i is relative_step * max(|s_i|, 1).
/// Relative error uses max(|analytic|, |numeric|, abs_floor) as scale.
GradCheckResult gradient_check(const FeatureTensor& student,
                               const FeatureTensor& teacher,
                               const LossOptions& options = {},
                               double relative_step = 1e-5,
                               double abs_floor = 1e-6);

struct FidelityReport {
  double cosine_mean = 0.0;
  double cosine_std = 0.0;
  double scale_ratio = 0.0;
  double mse = 0.0;
};

/// Per-location cosine statistics, whole-tensor std ratio (student over
/// teacher) and MSE. A constant teacher raises DegenerateInputError.
FidelityReport fidelity(const FeatureTensor& student, const FeatureTensor& teacher);

struct FidelityBand {
  double min_cosine = 0.7;
  double min_scale_ratio = 0.8;
  double max_scale_ratio = 1.2;
};

/// True when the report falls inside the acceptance band.
bool fidelity_within_band(const FidelityReport& report, const FidelityBand& band = {});

// Tensor files: magic "DTN1" (float32) or "DTNH" (float16), u32 LE rank = 4,
// four u32 LE dims, then B*C*H*W little-endian values in row-major order.

enum class TensorPrecision { kFloat32, kFloat16 };

FeatureTensor read_tensor(std::istream& in);
FeatureTensor read_tensor(const std::filesystem::path& path);
void write_tensor(std::ostream& out, const FeatureTensor& t, TensorPrecision precision);
void write_tensor(const std::filesystem::path& path, const FeatureTensor& t,
                  TensorPrecision precision);

}  // namespace herdtrack
