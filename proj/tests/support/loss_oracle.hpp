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

#include <algorithm>
#include <cmath>

#include "herdtrack/distill_loss.hpp"

namespace herdtrack::testing {

// Naive reference written directly from the loss definition with nested
// loops over (b, c, y, x). Shares nothing with the library beyond the tensor
// accessors.
struct OracleLoss {
  double directional, cosine, moment, raw, total;
};

inline OracleLoss oracle(const FeatureTensor& s, const FeatureTensor& t, const LossWeights& w) {
  const std::size_t B = s.batch(), C = s.channels(), H = s.height(), W = s.width();
  const double n = static_cast<double>(B * C * H * W);
  OracleLoss o{};
  for (std::size_t b = 0; b < B; ++b) {
    double ns = 0, nt = 0;
    for (std::size_t c = 0; c < C; ++c)
      for (std::size_t y = 0; y < H; ++y)
        for (std::size_t x = 0; x < W; ++x) {
          ns += s.at(b, c, y, x) * s.at(b, c, y, x);
          nt += t.at(b, c, y, x) * t.at(b, c, y, x);
        }
    ns = std::sqrt(ns);
    nt = std::sqrt(nt);
    for (std::size_t c = 0; c < C; ++c)
      for (std::size_t y = 0; y < H; ++y)
        for (std::size_t x = 0; x < W; ++x) {
          const double d = s.at(b, c, y, x) / ns - t.at(b, c, y, x) / nt;
          o.directional += d * d;
        }
  }
  o.directional /= n;

  for (std::size_t b = 0; b < B; ++b)
    for (std::size_t y = 0; y < H; ++y)
      for (std::size_t x = 0; x < W; ++x) {
        double dot = 0, aa = 0, bb = 0;
        for (std::size_t c = 0; c < C; ++c) {
          dot += s.at(b, c, y, x) * t.at(b, c, y, x);
          aa += s.at(b, c, y, x) * s.at(b, c, y, x);
          bb += t.at(b, c, y, x) * t.at(b, c, y, x);
        }
        o.cosine += 1.0 - dot / (std::sqrt(aa) * std::sqrt(bb));
      }
  o.cosine /= static_cast<double>(B * H * W);

  const double hw = static_cast<double>(H * W);
  for (std::size_t b = 0; b < B; ++b)
    for (std::size_t c = 0; c < C; ++c) {
      double ms = 0, mt = 0;
      for (std::size_t y = 0; y < H; ++y)
        for (std::size_t x = 0; x < W; ++x) {
          ms += s.at(b, c, y, x);
          mt += t.at(b, c, y, x);
        }
      ms /= hw;
      mt /= hw;
      double vs = 0, vt = 0;
      for (std::size_t y = 0; y < H; ++y)
        for (std::size_t x = 0; x < W; ++x) {
          vs += (s.at(b, c, y, x) - ms) * (s.at(b, c, y, x) - ms);
          vt += (t.at(b, c, y, x) - mt) * (t.at(b, c, y, x) - mt);
        }
      const double ds = std::sqrt(vs / hw) - std::sqrt(vt / hw);
      o.moment += ds * ds + (ms - mt) * (ms - mt);
    }
  o.moment /= static_cast<double>(B * C);

  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = s.values()[i] - t.values()[i];
    o.raw += d * d;
  }
  o.raw /= n;
  o.total = w.directional * o.directional + w.cosine * o.cosine + w.moment * o.moment +
            w.raw * o.raw;
  return o;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Central differences of compute_loss, independent of gradient_check.
inline double max_fd_relative_error(const FeatureTensor& s, const FeatureTensor& t,
                             const LossOptions& opts) {
  const FeatureTensor g = loss_gradient(s, t, opts);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double h = 1e-5 * std::max(std::abs(s.values()[i]), 1.0);
    FeatureTensor plus = s, minus = s;
    plus.values()[i] += h;
    minus.values()[i] -= h;
    const double numeric =
        (compute_loss(plus, t, opts).total - compute_loss(minus, t, opts).total) / (2.0 * h);
    const double analytic = g.values()[i];
    const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
    worst = std::max(worst, std::abs(analytic - numeric) / scale);
  }
  return worst;
}

}  // namespace herdtrack::testing
