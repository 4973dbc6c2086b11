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

#include "herdtrack/sim_harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <string>

#include "herdtrack/errors.hpp"
#include "herdtrack/random.hpp"

namespace herdtrack {

namespace {

// Stream tags for CounterRng::derive.
constexpr std::uint64_t kPlacementStream = 1;
constexpr std::uint64_t kMotionStream = 2;
constexpr std::uint64_t kCenterStream = 3;
constexpr std::uint64_t kNoiseStream = 4;

bool overlaps(double ax, double ay, double bx, double by, double w, double h) {
  return ax < bx + w && bx < ax + w && ay < by + h && by < ay + h;
}

std::vector<double> normalized(std::vector<double> v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  if (!(n > 0.0)) throw DegenerateInputError("cannot normalize a zero vector");
  for (double& x : v) x /= n;
  return v;
}

// Unit cluster centers with pairwise cosine exactly cos(separation):
// c_i = sqrt(cos) * g + sqrt(1 - cos) * e_i over an orthonormal set {g, e_i}.
std::vector<EmbeddingVector> make_centers(const ScenarioConfig& cfg) {
  const auto& em = cfg.embedding_model;
  CounterRng rng = CounterRng::derive(cfg.seed, kCenterStream);
  std::vector<std::vector<double>> basis;
  while (basis.size() < cfg.num_identities + 1) {
    std::vector<double> v(em.dim);
    for (double& x : v) x = rng.normal();
    for (const auto& b : basis) {
      const double d = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= d * b[k];
    }
    double n = 0.0;
    for (double x : v) n += x * x;
    if (n < 1e-12) continue;
    basis.push_back(normalized(std::move(v)));
  }
  const double c = std::clamp(std::cos(em.cluster_separation), 0.0, 1.0);
  const double a = std::sqrt(c);
  const double b = std::sqrt(1.0 - c);
  std::vector<EmbeddingVector> centers;
  for (std::uint32_t i = 0; i < cfg.num_identities; ++i) {
    std::vector<double> v(em.dim);
    for (std::size_t k = 0; k < em.dim; ++k) v[k] = a * basis[0][k] + b * basis[i + 1][k];
    centers.emplace_back(normalized(std::move(v)));
  }
  return centers;
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
  if (cfg.num_identities == 0) throw InputError("scenario needs at least one identity");
  if (cfg.num_frames == 0) throw InputError("scenario needs at least one frame");
  if (!(cfg.arena_width > 0.0) || !(cfg.arena_height > 0.0)) {
    throw InputError("arena dimensions must be positive");
  }
  if (!(cfg.box_width > 0.0) || !(cfg.box_height > 0.0)) {
    throw InputError("box dimensions must be positive");
  }
  if (!(cfg.motion.speed_px_per_frame >= 0.0) ||
      !(cfg.motion.direction_change_prob >= 0.0 && cfg.motion.direction_change_prob <= 1.0)) {
    throw InputError("motion: speed must be >= 0 and change probability in [0, 1]");
  }
  const auto& em = cfg.embedding_model;
  if (em.dim < static_cast<std::size_t>(cfg.num_identities) + 1) {
    throw InputError("embedding dim must exceed the identity count");
  }
  if (!(em.cluster_separation >= 0.0 && em.cluster_separation <= std::numbers::pi / 2.0)) {
    throw InputError("cluster separation must lie in [0, pi/2] radians");
  }
  if (!(em.noise_sigma >= 0.0) || !std::isfinite(em.noise_sigma)) {
    throw InputError("noise sigma must be non-negative");
  }
  if (!(cfg.fps > 0.0) || !std::isfinite(cfg.fps)) throw InputError("fps must be positive");
  for (const auto& s : cfg.switch_plan) {
    if (s.frame < 2 || s.frame > cfg.num_frames) {
      throw InputError("switch frame " + std::to_string(s.frame) + " outside [2, " +
                       std::to_string(cfg.num_frames) + "]");
    }
    if (s.identity_a == s.identity_b) throw InputError("switch identities must differ");
    for (auto id : {s.identity_a, s.identity_b}) {
      if (id < 1 || id > static_cast<IdentityId>(cfg.num_identities)) {
        throw InputError("switch identity " + std::to_string(id) + " does not exist");
      }
    }
  }
}

std::size_t Scenario::slot(FrameIndex frame, IdentityId identity) const {
  if (frame < 1 || frame > config_.num_frames || identity < 1 ||
      identity > static_cast<IdentityId>(config_.num_identities)) {
    throw InputError("scenario lookup out of range");
  }
  return static_cast<std::size_t>(frame - 1) * config_.num_identities +
         static_cast<std::size_t>(identity - 1);
}

const EmbeddingVector& Scenario::true_embedding(FrameIndex frame, IdentityId identity) const {
  return embeddings_[slot(frame, identity)];
}

IdentityId Scenario::corrupted_label(FrameIndex frame, IdentityId identity) const {
  return labels_[slot(frame, identity)];
}

IdentityId Scenario::true_identity(FrameIndex frame, IdentityId label) const {
  const std::size_t base = slot(frame, 1);
  for (std::uint32_t i = 0; i < config_.num_identities; ++i) {
    if (labels_[base + i] == label) return static_cast<IdentityId>(i + 1);
  }
  throw InputError("label " + std::to_string(label) + " not present at frame " +
                   std::to_string(frame));
}

Scenario generate(const ScenarioConfig& cfg) {
  validate(cfg);
  const std::uint32_t n = cfg.num_identities;
  const double w = cfg.box_width;
  const double h = cfg.box_height;
  const auto cols = static_cast<std::uint64_t>(std::floor(cfg.arena_width / w));
  const auto rows = static_cast<std::uint64_t>(std::floor(cfg.arena_height / h));
  if (cols * rows < n) {
    throw InputError("overcrowded arena: " + std::to_string(n) + " boxes of " +
                     std::to_string(w) + "x" + std::to_string(h) + " do not fit");
  }

  Scenario s;
  s.config_ = cfg;

  // Initial placement: distinct grid cells, jittered inside each cell.
  CounterRng place = CounterRng::derive(cfg.seed, kPlacementStream);
  std::vector<std::uint64_t> cells(cols * rows);
  std::iota(cells.begin(), cells.end(), 0);
  for (std::size_t i = cells.size(); i > 1; --i) {
    std::swap(cells[i - 1], cells[place.below(i)]);
  }
  const double cell_w = cfg.arena_width / static_cast<double>(cols);
  const double cell_h = cfg.arena_height / static_cast<double>(rows);
  std::vector<double> px(n), py(n), heading(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto cx = cells[i] % cols;
    const auto cy = cells[i] / cols;
    px[i] = static_cast<double>(cx) * cell_w + place.uniform() * (cell_w - w);
    py[i] = static_cast<double>(cy) * cell_h + place.uniform() * (cell_h - h);
    heading[i] = 2.0 * std::numbers::pi * place.uniform();
  }

  const double max_x = cfg.arena_width - w;
  const double max_y = cfg.arena_height - h;
  auto reflect = [](double v, double hi, double& dir_component) {
    if (v < 0.0) {
      v = -v;
      dir_component = -dir_component;
    }
    if (v > hi) {
      v = 2.0 * hi - v;
      dir_component = -dir_component;
    }
    return std::clamp(v, 0.0, hi);
  };

  CounterRng motion = CounterRng::derive(cfg.seed, kMotionStream);
  CounterRng noise = CounterRng::derive(cfg.seed, kNoiseStream);
  s.centers_ = make_centers(cfg);

  std::vector<TrackRecord> gt_records, corrupted_records;
  gt_records.reserve(static_cast<std::size_t>(n) * cfg.num_frames);
  corrupted_records.reserve(gt_records.capacity());
  s.embeddings_.reserve(gt_records.capacity());
  s.labels_.resize(gt_records.capacity());

  std::map<FrameIndex, std::vector<const IdentitySwap*>> swaps_at;
  for (const auto& sw : cfg.switch_plan) swaps_at[sw.frame].push_back(&sw);

  for (FrameIndex f = 1; f <= cfg.num_frames; ++f) {
    if (f > 1) {
      for (std::uint32_t i = 0; i < n; ++i) {
        if (motion.uniform() < cfg.motion.direction_change_prob) {
          heading[i] = 2.0 * std::numbers::pi * motion.uniform();
        }
        bool moved = false;
        for (int attempt = 0; attempt < 8 && !moved; ++attempt) {
          if (attempt > 0) heading[i] = 2.0 * std::numbers::pi * motion.uniform();
          double dx = std::cos(heading[i]);
          double dy = std::sin(heading[i]);
          const double nx = reflect(px[i] + cfg.motion.speed_px_per_frame * dx, max_x, dx);
          const double ny = reflect(py[i] + cfg.motion.speed_px_per_frame * dy, max_y, dy);
          bool blocked = false;
          for (std::uint32_t j = 0; j < n && !blocked; ++j) {
            blocked = j != i && overlaps(nx, ny, px[j], py[j], w, h);
          }
          if (!blocked) {
            px[i] = nx;
            py[i] = ny;
            heading[i] = std::atan2(dy, dx);
            moved = true;
          }
        }
      }
    }

    // Labels: inherit from the previous frame, then apply this frame's swaps.
    const std::size_t base = static_cast<std::size_t>(f - 1) * n;
    for (std::uint32_t i = 0; i < n; ++i) {
      s.labels_[base + i] = f == 1 ? static_cast<IdentityId>(i + 1) : s.labels_[base - n + i];
    }
    if (const auto it = swaps_at.find(f); it != swaps_at.end()) {
      for (const IdentitySwap* sw : it->second) {
        std::swap(s.labels_[base + sw->identity_a - 1], s.labels_[base + sw->identity_b - 1]);
      }
      for (std::uint32_t i = 0; i < n; ++i) {
        if (s.labels_[base + i] != s.labels_[base - n + i]) ++s.injected_switch_count_;
      }
    }

    for (std::uint32_t i = 0; i < n; ++i) {
      const BoundingBox box(px[i], py[i], w, h);
      const auto id = static_cast<IdentityId>(i + 1);
      gt_records.push_back({f, id, box, 1.0});
      corrupted_records.push_back({f, s.labels_[base + i], box, 1.0});

      const auto& center = s.centers_[i].values();
      std::vector<double> e(center.begin(), center.end());
      if (cfg.embedding_model.noise_sigma > 0.0) {
        for (double& x : e) x += cfg.embedding_model.noise_sigma * noise.normal();
        e = normalized(std::move(e));
      }
      s.embeddings_.emplace_back(std::move(e));
    }
  }
  s.ground_truth_ = TrackSet(std::move(gt_records));
  s.corrupted_ = TrackSet(std::move(corrupted_records));
  return s;
}

PipelineRun run_pipeline_detailed(const Scenario& s, const ReidConfig& cfg,
                                  std::uint32_t warmup_frames) {
  validate(cfg);
  const auto& sc = s.config();
  if (warmup_frames < 1 || warmup_frames > sc.num_frames) {
    throw InputError("warmup frames must lie in [1, num_frames]");
  }
  auto timestamp = [&](FrameIndex f) { return static_cast<double>(f - 1) / sc.fps; };

  // Oracle warmup: banks follow the true identities.
  ReidEngine engine(cfg);
  for (FrameIndex f = 1; f <= warmup_frames; ++f) {
    const double now = timestamp(f);
    for (std::uint32_t i = 1; i <= sc.num_identities; ++i) {
      const auto id = static_cast<IdentityId>(i);
      const auto& e = s.true_embedding(f, id);
      const auto it = engine.banks().find(id);
      if (it == engine.banks().end()) {
        engine.seed(id, BankEntry{now, e, uniform_histogram()});
      } else if (now - it->second.last_update() >= cfg.cadence_s &&
                 now > it->second.entries().back().timestamp) {
        engine.seed(id, BankEntry{now, ema_update(it->second.entries().back().embedding, e,
                                                  cfg.alpha),
                                  uniform_histogram()});
      }
    }
  }

  PipelineRun run;
  std::map<IdentityId, IdentityId> relabel;  // corrupted label -> emitted label
  for (std::uint32_t i = 1; i <= sc.num_identities; ++i) relabel[i] = i;

  std::vector<TrackRecord> out;
  out.reserve(s.corrupted().size());
  for (const auto& rec : s.corrupted().records()) {
    if (rec.frame <= warmup_frames) {
      out.push_back(rec);
      continue;
    }
    const IdentityId truth = s.true_identity(rec.frame, rec.id);
    const IdentityId claimed = relabel.at(rec.id);
    const auto outcome = engine.process_observation(
        claimed, s.true_embedding(rec.frame, truth), rec.frame, timestamp(rec.frame), rec.box);
    if (outcome.event) {
      const auto& ev = *outcome.event;
      run.events.push_back(ev);
      if (ev.corrected_id == truth) {
        ++run.report.corrected_switch_count;
      } else {
        ++run.report.false_reinit_count;
      }
      for (auto& [label, emitted] : relabel) {
        if (emitted == ev.claimed_id) {
          emitted = ev.corrected_id;
        } else if (emitted == ev.corrected_id) {
          emitted = ev.claimed_id;
        }
      }
    }
    TrackRecord emitted = rec;
    emitted.id = outcome.resolved_id;
    out.push_back(emitted);
  }
  run.corrected = TrackSet(std::move(out));

  run.report.mot_before = evaluate_sequence(s.ground_truth(), s.corrupted());
  run.report.mot_after = evaluate_sequence(s.ground_truth(), run.corrected);
  run.report.idsw_before = run.report.mot_before.id_switches;
  run.report.idsw_after = run.report.mot_after.id_switches;
  return run;
}

HarnessReport run_pipeline(const Scenario& s, const ReidConfig& cfg,
                           std::uint32_t warmup_frames) {
  return run_pipeline_detailed(s, cfg, warmup_frames).report;
}

std::vector<SweepPoint> sensitivity_sweep(const ScenarioConfig& cfg, const ReidConfig& base,
                                          const SweepGrid& grid, std::uint32_t warmup_frames,
                                          bool parallel) {
  if (grid.tau_low.empty() || grid.tau_high.empty() || grid.cadence_s.empty()) {
    throw InputError("sweep grid axes must be non-empty");
  }
  std::vector<ReidConfig> points;
  for (double lo : grid.tau_low) {
    for (double hi : grid.tau_high) {
      for (double cadence : grid.cadence_s) {
        ReidConfig c = base;
        c.tau_low = lo;
        c.tau_high = hi;
        c.cadence_s = cadence;
        try {
          validate(c);
        } catch (const InputError& e) {
          throw InputError("invalid sweep point (tau_low " + std::to_string(lo) +
                           ", tau_high " + std::to_string(hi) + ", cadence " +
                           std::to_string(cadence) + "): " + e.what());
        }
        points.push_back(c);
      }
    }
  }

  const Scenario scenario = generate(cfg);
  std::vector<SweepPoint> out(points.size());
  if (parallel && points.size() > 1) {
    std::vector<std::future<HarnessReport>> jobs;
    jobs.reserve(points.size());
    for (const auto& c : points) {
      jobs.push_back(std::async(std::launch::async, [&scenario, c, warmup_frames] {
        return run_pipeline(scenario, c, warmup_frames);
      }));
    }
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = {points[i], jobs[i].get()};
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) {
      out[i] = {points[i], run_pipeline(scenario, points[i], warmup_frames)};
    }
  }
  return out;
}

}  // namespace herdtrack
