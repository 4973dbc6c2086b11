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

#include "herdtrack/distill_loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "herdtrack/errors.hpp"

namespace herdtrack {

FeatureTensor::FeatureTensor(Dims dims) : dims_(dims) {
  for (auto d : dims_) {
    if (d == 0) throw InputError("tensor dims must all be >= 1");
  }
  values_.assign(dims_[0] * dims_[1] * dims_[2] * dims_[3], 0.0);
}

FeatureTensor::FeatureTensor(Dims dims, std::vector<double> values)
    : FeatureTensor(dims) {
  if (values.size() != values_.size()) {
    throw InputError("tensor value count " + std::to_string(values.size()) +
                     " does not match dims (expected " +
                     std::to_string(values_.size()) + ")");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("tensor values must be finite");
  }
  values_ = std::move(values);
}

FeatureTensor FeatureTensor::scaled(double factor) const {
  FeatureTensor out = *this;
  for (double& v : out.values_) v *= factor;
  return out;
}

FeatureTensor FeatureTensor::flipped_horizontal() const {
  FeatureTensor out = *this;
  for (std::size_t b = 0; b < batch(); ++b)
    for (std::size_t c = 0; c < channels(); ++c)
      for (std::size_t y = 0; y < height(); ++y)
        for (std::size_t x = 0; x < width(); ++x)
          out.at(b, c, y, width() - 1 - x) = at(b, c, y, x);
  return out;
}

namespace {

void require_same_dims(const FeatureTensor& a, const FeatureTensor& b) {
  if (a.dims() != b.dims()) {
    auto show = [](const FeatureTensor::Dims& d) {
      return "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + "," +
             std::to_string(d[2]) + "," + std::to_string(d[3]) + ")";
    };
    throw InputError("tensor dims mismatch: " + show(a.dims()) + " vs " +
                     show(b.dims()));
  }
  if (a.size() == 0) throw InputError("tensor is empty");
}

// Norm used for normalization; sqrt(|x|^2 + eps^2) in epsilon mode.
double guarded_norm(double sum_sq, const LossOptions& o, const char* what) {
  if (o.epsilon_mode) return std::sqrt(sum_sq + o.epsilon * o.epsilon);
  if (!(sum_sq > 0.0)) {
    throw DegenerateInputError(std::string("zero-norm ") + what);
  }
  return std::sqrt(sum_sq);
}

double guarded_std(double var, const LossOptions& o) {
  return o.epsilon_mode ? std::sqrt(var + o.epsilon * o.epsilon) : std::sqrt(var);
}

struct Geometry {
  std::size_t B, C, H, W, HW, per_sample, N, locations;
  explicit Geometry(const FeatureTensor& t)
      : B(t.batch()), C(t.channels()), H(t.height()), W(t.width()),
        HW(H * W), per_sample(C * H * W), N(t.size()), locations(B * H * W) {}
  // Flat index of channel c at spatial position p of sample b.
  std::size_t idx(std::size_t b, std::size_t c, std::size_t p) const {
    return (b * C + c) * HW + p;
  }
};

std::vector<double> sample_norms(const FeatureTensor& t, const Geometry& g,
                                 const LossOptions& o, const char* what) {
  std::vector<double> norms(g.B);
  const auto v = t.values();
  for (std::size_t b = 0; b < g.B; ++b) {
    double ss = 0.0;
    for (std::size_t k = 0; k < g.per_sample; ++k) {
      ss += v[b * g.per_sample + k] * v[b * g.per_sample + k];
    }
    norms[b] = guarded_norm(ss, o, what);
  }
  return norms;
}

struct LocationStats {
  double dot, norm_s, norm_t;
};

LocationStats location_stats(const FeatureTensor& s, const FeatureTensor& t,
                             const Geometry& g, std::size_t b, std::size_t p,
                             const LossOptions& o) {
  double dot = 0.0, ss = 0.0, tt = 0.0;
  const auto sv = s.values();
  const auto tv = t.values();
  for (std::size_t c = 0; c < g.C; ++c) {
    const std::size_t i = g.idx(b, c, p);
    dot += sv[i] * tv[i];
    ss += sv[i] * sv[i];
    tt += tv[i] * tv[i];
  }
  return {dot, guarded_norm(ss, o, "student feature vector"),
          guarded_norm(tt, o, "teacher feature vector")};
}

}  // namespace

MomentStats channel_moments(const FeatureTensor& t) {
  const Geometry g(t);
  MomentStats m;
  m.mean.resize(g.B * g.C);
  m.stddev.resize(g.B * g.C);
  const auto v = t.values();
  for (std::size_t bc = 0; bc < g.B * g.C; ++bc) {
    double mu = 0.0;
    for (std::size_t p = 0; p < g.HW; ++p) mu += v[bc * g.HW + p];
    mu /= static_cast<double>(g.HW);
    double var = 0.0;
    for (std::size_t p = 0; p < g.HW; ++p) {
      const double d = v[bc * g.HW + p] - mu;
      var += d * d;
    }
    m.mean[bc] = mu;
    m.stddev[bc] = std::sqrt(var / static_cast<double>(g.HW));
  }
  return m;
}

LossBreakdown compute_loss(const FeatureTensor& student,
                           const FeatureTensor& teacher,
                           const LossOptions& options) {
  require_same_dims(student, teacher);
  const Geometry g(student);
  const auto sv = student.values();
  const auto tv = teacher.values();
  const double n_elems = static_cast<double>(g.N);
  LossBreakdown out;

  const auto ns = sample_norms(student, g, options, "student sample");
  const auto nt = sample_norms(teacher, g, options, "teacher sample");
  for (std::size_t b = 0; b < g.B; ++b) {
    for (std::size_t k = 0; k < g.per_sample; ++k) {
      const std::size_t i = b * g.per_sample + k;
      const double d = sv[i] / ns[b] - tv[i] / nt[b];
      out.directional += d * d;
    }
  }
  out.directional /= n_elems;

  for (std::size_t b = 0; b < g.B; ++b) {
    for (std::size_t p = 0; p < g.HW; ++p) {
      const auto st = location_stats(student, teacher, g, b, p, options);
      if (options.epsilon_mode) {
        out.cosine += 1.0 - st.dot / (st.norm_s * st.norm_t);
        continue;
      }
      // 1 - cos = |s/|s| - t/|t||^2 / 2.
      double half_sq = 0.0;
      for (std::size_t c = 0; c < g.C; ++c) {
        const std::size_t i = g.idx(b, c, p);
        const double d = sv[i] / st.norm_s - tv[i] / st.norm_t;
        half_sq += d * d;
      }
      out.cosine += 0.5 * half_sq;
    }
  }
  out.cosine /= static_cast<double>(g.locations);

  const auto ms = channel_moments(student);
  const auto mt = channel_moments(teacher);
  for (std::size_t bc = 0; bc < g.B * g.C; ++bc) {
    const double sd_s = guarded_std(ms.stddev[bc] * ms.stddev[bc], options);
    const double sd_t = guarded_std(mt.stddev[bc] * mt.stddev[bc], options);
    const double dsd = sd_s - sd_t;
    const double dmu = ms.mean[bc] - mt.mean[bc];
    out.moment += dsd * dsd + dmu * dmu;
  }
  out.moment /= static_cast<double>(g.B * g.C);

  for (std::size_t i = 0; i < g.N; ++i) {
    const double d = sv[i] - tv[i];
    out.raw += d * d;
  }
  out.raw /= n_elems;

  const auto& w = options.weights;
  out.total = w.directional * out.directional + w.cosine * out.cosine +
              w.moment * out.moment + w.raw * out.raw;
  return out;
}

FeatureTensor loss_gradient(const FeatureTensor& student,
                            const FeatureTensor& teacher,
                            const LossOptions& options) {
  require_same_dims(student, teacher);
  const Geometry g(student);
  const auto& w = options.weights;
  const auto sv = student.values();
  const auto tv = teacher.values();
  const double n_elems = static_cast<double>(g.N);
  FeatureTensor grad(student.dims());
  auto gv = grad.values();

  // Directional: L = (1/N) sum (s/n_s - t/n_t)^2 with n_s = sqrt(|s|^2 [+eps^2]).
  // dL/ds = (1/n_s) (r - s (s.r) / n_s^2),  r = (2/N)(s/n_s - t/n_t).
  if (w.directional != 0.0) {
    const auto ns = sample_norms(student, g, options, "student sample");
    const auto nt = sample_norms(teacher, g, options, "teacher sample");
    for (std::size_t b = 0; b < g.B; ++b) {
      const std::size_t base = b * g.per_sample;
      double s_dot_r = 0.0;
      for (std::size_t k = 0; k < g.per_sample; ++k) {
        const double r = 2.0 / n_elems * (sv[base + k] / ns[b] - tv[base + k] / nt[b]);
        s_dot_r += sv[base + k] * r;
      }
      for (std::size_t k = 0; k < g.per_sample; ++k) {
        const double r = 2.0 / n_elems * (sv[base + k] / ns[b] - tv[base + k] / nt[b]);
        gv[base + k] += w.directional *
                        (r - sv[base + k] * s_dot_r / (ns[b] * ns[b])) / ns[b];
      }
    }
  }

  // Cosine: L = (1/M) sum_loc (1 - s.t / (n_s n_t)).
  if (w.cosine != 0.0) {
    const double inv_m = 1.0 / static_cast<double>(g.locations);
    for (std::size_t b = 0; b < g.B; ++b) {
      for (std::size_t p = 0; p < g.HW; ++p) {
        const auto st = location_stats(student, teacher, g, b, p, options);
        const double denom = st.norm_s * st.norm_t;
        const double cos_over_ns2 = st.dot / (denom * st.norm_s * st.norm_s);
        for (std::size_t c = 0; c < g.C; ++c) {
          const std::size_t i = g.idx(b, c, p);
          const double dcos = tv[i] / denom - sv[i] * cos_over_ns2;
          gv[i] -= w.cosine * inv_m * dcos;
        }
      }
    }
  }

  // Moment: per (b, c): (sd_s - sd_t)^2 + (mu_s - mu_t)^2, averaged over B*C.
  // d mu / d s_i = 1/HW;  d sd / d s_i = (s_i - mu) / (HW sd).
  if (w.moment != 0.0) {
    const auto ms = channel_moments(student);
    const auto mt = channel_moments(teacher);
    const double inv_bc = 1.0 / static_cast<double>(g.B * g.C);
    const double inv_hw = 1.0 / static_cast<double>(g.HW);
    for (std::size_t bc = 0; bc < g.B * g.C; ++bc) {
      const double sd_s = guarded_std(ms.stddev[bc] * ms.stddev[bc], options);
      const double sd_t = guarded_std(mt.stddev[bc] * mt.stddev[bc], options);
      const double dsd = sd_s - sd_t;
      const double dmu = ms.mean[bc] - mt.mean[bc];
      for (std::size_t p = 0; p < g.HW; ++p) {
        const std::size_t i = bc * g.HW + p;
        double d = 2.0 * dmu * inv_hw;
        if (sd_s > 0.0) d += 2.0 * dsd * (sv[i] - ms.mean[bc]) * inv_hw / sd_s;
        gv[i] += w.moment * inv_bc * d;
      }
    }
  }

  if (w.raw != 0.0) {
    for (std::size_t i = 0; i < g.N; ++i) {
      gv[i] += w.raw * 2.0 * (sv[i] - tv[i]) / n_elems;
    }
  }
  return grad;
}

GradCheckResult gradient_check(const FeatureTensor& student,
                               const FeatureTensor& teacher,
                               const LossOptions& options, double relative_step,
                               double abs_floor) {
  const FeatureTensor analytic = loss_gradient(student, teacher, options);
  FeatureTensor probe = student;
  GradCheckResult result;
  for (std::size_t i = 0; i < student.size(); ++i) {
    const double x = student.values()[i];
    const double h = relative_step * std::max(std::abs(x), 1.0);
    probe.values()[i] = x + h;
    const double up = compute_loss(probe, teacher, options).total;
    probe.values()[i] = x - h;
    const double down = compute_loss(probe, teacher, options).total;
    probe.values()[i] = x;
    const double numeric = (up - down) / (2.0 * h);
    const double a = analytic.values()[i];
    const double abs_err = std::abs(a - numeric);
    const double rel_err =
        abs_err / std::max({std::abs(a), std::abs(numeric), abs_floor});
    result.max_absolute_error = std::max(result.max_absolute_error, abs_err);
    if (rel_err > result.max_relative_error) {
      result.max_relative_error = rel_err;
      result.worst_index = i;
    }
  }
  return result;
}

FidelityReport fidelity(const FeatureTensor& student, const FeatureTensor& teacher) {
  require_same_dims(student, teacher);
  const Geometry g(student);
  const LossOptions strict;
  FidelityReport r;

  std::vector<double> cosines;
  cosines.reserve(g.locations);
  for (std::size_t b = 0; b < g.B; ++b) {
    for (std::size_t p = 0; p < g.HW; ++p) {
      const auto st = location_stats(student, teacher, g, b, p, strict);
      cosines.push_back(std::clamp(st.dot / (st.norm_s * st.norm_t), -1.0, 1.0));
    }
  }
  double mean = 0.0;
  for (double c : cosines) mean += c;
  mean /= static_cast<double>(cosines.size());
  double var = 0.0;
  for (double c : cosines) var += (c - mean) * (c - mean);
  r.cosine_mean = mean;
  r.cosine_std = std::sqrt(var / static_cast<double>(cosines.size()));

  auto whole_std = [](std::span<const double> v) {
    double mu = 0.0;
    for (double x : v) mu += x;
    mu /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(v.size()));
  };
  const double sd_t = whole_std(teacher.values());
  if (!(sd_t > 0.0)) {
    throw DegenerateInputError("teacher tensor has zero standard deviation");
  }
  r.scale_ratio = whole_std(student.values()) / sd_t;

  double mse = 0.0;
  for (std::size_t i = 0; i < g.N; ++i) {
    const double d = student.values()[i] - teacher.values()[i];
    mse += d * d;
  }
  r.mse = mse / static_cast<double>(g.N);
  return r;
}

bool fidelity_within_band(const FidelityReport& report, const FidelityBand& band) {
  return report.cosine_mean >= band.min_cosine &&
         report.scale_ratio >= band.min_scale_ratio &&
         report.scale_ratio <= band.max_scale_ratio;
}

}  // namespace herdtrack
