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

#include "herdtrack/reid_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "herdtrack/errors.hpp"

namespace herdtrack {

std::string_view to_string(EmbeddingPrecision p) {
  return p == EmbeddingPrecision::kHalf16 ? "half16" : "single32";
}

EmbeddingPrecision parse_precision(std::string_view text) {
  if (text == "half16") return EmbeddingPrecision::kHalf16;
  if (text == "single32") return EmbeddingPrecision::kSingle32;
  throw InputError("unknown precision '" + std::string(text) +
                   "' (expected half16 or single32)");
}

EmbeddingVector::EmbeddingVector(std::vector<double> values, EmbeddingPrecision precision)
    : values_(std::move(values)), precision_(precision) {
  if (values_.empty()) throw InputError("embedding must have at least one component");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("embedding values must be finite");
  }
}

double EmbeddingVector::norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

double cosine_sim(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw InputError("cosine_sim: dim mismatch " + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()));
  }
  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values()[i] * b.values()[i];
    aa += a.values()[i] * a.values()[i];
    bb += b.values()[i] * b.values()[i];
  }
  if (!(aa > 0.0) || !(bb > 0.0)) {
    throw DegenerateInputError("cosine_sim: zero-norm embedding");
  }
  return std::clamp(dot / std::sqrt(aa * bb), -1.0, 1.0);
}

EmbeddingVector ema_update(const EmbeddingVector& prev, const EmbeddingVector& cur,
                           double alpha) {
  if (prev.dim() != cur.dim()) throw InputError("ema_update: dim mismatch");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("ema_update: alpha must be in (0, 1]");
  std::vector<double> out(cur.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = alpha * cur.values()[i] + (1.0 - alpha) * prev.values()[i];
  }
  return EmbeddingVector(std::move(out), cur.precision());
}

BehaviourHistogram uniform_histogram() {
  BehaviourHistogram h;
  h.fill(1.0 / static_cast<double>(kBehaviourClasses));
  return h;
}

void EmbeddingBank::append(BankEntry entry) {
  if (!std::isfinite(entry.timestamp)) throw InputError("bank timestamp must be finite");
  if (!entries_.empty() && !(entry.timestamp > entries_.back().timestamp)) {
    throw InputError("bank timestamps must be strictly increasing");
  }
  if (entry.embedding.dim() == 0) throw InputError("bank entry has no embedding");
  if (!entries_.empty() && entry.embedding.dim() != entries_.front().embedding.dim()) {
    throw InputError("bank entry dim differs from existing entries");
  }
  double sum = 0.0;
  for (double v : entry.histogram) {
    if (!(v >= 0.0)) throw InputError("behaviour histogram must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InputError("behaviour histogram must sum to 1");
  last_update_ = entry.timestamp;
  entries_.push_back(std::move(entry));
}

double EmbeddingBank::max_similarity(const EmbeddingVector& e) const {
  double best = -1.0;
  for (const auto& entry : entries_) best = std::max(best, cosine_sim(e, entry.embedding));
  return best;
}

void validate(const ReidConfig& cfg) {
  if (!(cfg.tau_low > 0.0) || !(cfg.tau_low < cfg.tau_high) || !std::isfinite(cfg.tau_high)) {
    throw InputError("re-id thresholds must satisfy 0 < tau_low < tau_high");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw InputError("alpha must lie in (0, 1]");
  if (!(cfg.cadence_s >= 0.0) || !std::isfinite(cfg.cadence_s)) {
    throw InputError("cadence must be non-negative");
  }
}

ReidEngine::ReidEngine(ReidConfig config) : config_(config) { validate(config_); }

void ReidEngine::seed(IdentityId id, BankEntry entry) {
  auto it = banks_.try_emplace(id, EmbeddingBank(id)).first;
  it->second.append(std::move(entry));
}

void ReidEngine::add_bank(EmbeddingBank bank) {
  const IdentityId id = bank.identity();
  if (banks_.contains(id)) throw InputError("bank already exists for " + std::to_string(id));
  banks_.emplace(id, std::move(bank));
}

ObservationOutcome ReidEngine::process_observation(IdentityId claimed_id,
                                                   const EmbeddingVector& e_cur,
                                                   FrameIndex frame, double now,
                                                   const BoundingBox& box,
                                                   const BehaviourHistogram& histogram) {
  const auto claimed = banks_.find(claimed_id);
  if (claimed == banks_.end() || claimed->second.empty()) {
    throw InputError("no embedding bank for claimed identity " + std::to_string(claimed_id));
  }

  ObservationOutcome out;
  out.resolved_id = claimed_id;
  out.sim_self = claimed->second.max_similarity(e_cur);

  IdentityId best_other = claimed_id;
  bool have_other = false;
  for (const auto& [id, bank] : banks_) {
    if (id == claimed_id || bank.empty()) continue;
    const double s = bank.max_similarity(e_cur);
    if (!have_other || s > out.sim_other) {
      out.sim_other = s;
      best_other = id;
      have_other = true;
    }
  }

  if (have_other && out.sim_self < config_.tau_low && out.sim_other > config_.tau_high) {
    out.event = ReidEvent{frame, claimed_id, best_other, out.sim_self, out.sim_other};
    out.reinit = ReinitDirective{frame, best_other, box};
    out.resolved_id = best_other;
  }

  auto& bank = banks_.at(out.resolved_id);
  if (now - bank.last_update() >= config_.cadence_s && now > bank.entries().back().timestamp) {
    BankEntry entry;
    entry.timestamp = now;
    entry.embedding = ema_update(bank.entries().back().embedding, e_cur, config_.alpha);
    entry.histogram = histogram;
    bank.append(std::move(entry));
    out.bank_appended = true;
  }
  return out;
}

StoragePolicy StoragePolicy::from_embedding(std::size_t dim, EmbeddingPrecision precision,
                                            double cadence_hours, Bytes metadata_bytes,
                                            std::uint64_t animals, double fps) {
  if (dim == 0) throw InputError("embedding dim must be positive");
  if (!(cadence_hours > 0.0) || !std::isfinite(cadence_hours)) {
    throw InputError("cadence must be positive");
  }
  StoragePolicy p;
  p.entries_per_year = static_cast<std::uint64_t>(std::floor(365.0 * 24.0 / cadence_hours));
  p.bytes_per_embedding = dim * bytes_per_component(precision);
  p.metadata_bytes_per_entry = metadata_bytes;
  p.animals = animals;
  p.fps = fps;
  return p;
}

StorageFootprint annual_footprint(const StoragePolicy& p) {
  StorageFootprint f;
  f.raw_embedding_bytes = p.entries_per_year * p.bytes_per_embedding;
  f.total_bytes_per_animal =
      f.raw_embedding_bytes + p.entries_per_year * p.metadata_bytes_per_entry;
  f.barn_total_bytes = p.animals * f.total_bytes_per_animal;
  return f;
}

TrafficReduction raw_traffic_and_reduction(const StoragePolicy& p, double cadence_s) {
  if (!(p.fps > 0.0) || !std::isfinite(p.fps)) throw InputError("fps must be positive");
  if (!(cadence_s > 0.0) || !std::isfinite(cadence_s)) {
    throw InputError("cadence must be positive");
  }
  return {p.fps * 86400.0 * static_cast<double>(p.bytes_per_embedding), p.fps * cadence_s};
}

}  // namespace herdtrack
