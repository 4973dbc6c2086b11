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

#include "herdtrack/cli/codec.hpp"

#include <set>
#include <string>

#include "herdtrack/errors.hpp"

namespace herdtrack::cli {

json to_json(const MotConfig& c) {
  return {{"iou_gate", c.iou_gate},
          {"distance_mode", std::string(to_string(c.distance_mode))},
          {"mt_threshold", c.mt_threshold},
          {"ml_threshold", c.ml_threshold}};
}

json to_json(const MotSummary& s) {
  return {{"mota", s.mota},
          {"motp", s.motp},
          {"idf1", s.idf1},
          {"idp", s.idp},
          {"idr", s.idr},
          {"precision", s.precision},
          {"recall", s.recall},
          {"mostly_tracked", s.mostly_tracked},
          {"partially_tracked", s.partially_tracked},
          {"mostly_lost", s.mostly_lost},
          {"id_switches", s.id_switches},
          {"fragmentations", s.fragmentations},
          {"false_positives", s.false_positives},
          {"misses", s.misses},
          {"total_gt", s.total_gt},
          {"matches", s.matches},
          {"idtp", s.idtp},
          {"idfp", s.idfp},
          {"idfn", s.idfn},
          {"frames", s.frames}};
}

json to_json(const ReidConfig& c) {
  return {{"tau_low", c.tau_low},
          {"tau_high", c.tau_high},
          {"alpha", c.alpha},
          {"cadence_s", c.cadence_s}};
}

json to_json(const ReidEvent& e) {
  return {{"frame", e.frame},
          {"claimed_id", e.claimed_id},
          {"corrected_id", e.corrected_id},
          {"sim_self", e.sim_self},
          {"sim_other", e.sim_other}};
}

json to_json(const HarnessReport& r) {
  return {{"idsw_before", r.idsw_before},
          {"idsw_after", r.idsw_after},
          {"false_reinit_count", r.false_reinit_count},
          {"corrected_switch_count", r.corrected_switch_count},
          {"mot_before", to_json(r.mot_before)},
          {"mot_after", to_json(r.mot_after)}};
}

json to_json(const ScenarioConfig& c) {
  json plan = json::array();
  for (const auto& s : c.switch_plan) {
    plan.push_back({{"frame", s.frame}, {"identity_a", s.identity_a}, {"identity_b", s.identity_b}});
  }
  return {{"num_identities", c.num_identities},
          {"num_frames", c.num_frames},
          {"arena", {{"width", c.arena_width}, {"height", c.arena_height}}},
          {"motion",
           {{"speed_px_per_frame", c.motion.speed_px_per_frame},
            {"direction_change_prob", c.motion.direction_change_prob}}},
          {"box_size", {{"w", c.box_width}, {"h", c.box_height}}},
          {"switch_plan", plan},
          {"embedding_model",
           {{"dim", c.embedding_model.dim},
            {"cluster_separation", c.embedding_model.cluster_separation},
            {"noise_sigma", c.embedding_model.noise_sigma}}},
          {"fps", c.fps},
          {"seed", c.seed}};
}

json to_json(const LossWeights& w) {
  return {{"directional", w.directional}, {"cosine", w.cosine}, {"moment", w.moment}, {"raw", w.raw}};
}

json to_json(const LossBreakdown& b) {
  return {{"directional", b.directional},
          {"cosine", b.cosine},
          {"moment", b.moment},
          {"raw", b.raw},
          {"total", b.total}};
}

json to_json(const FidelityReport& f) {
  return {{"cosine_mean", f.cosine_mean},
          {"cosine_std", f.cosine_std},
          {"scale_ratio", f.scale_ratio},
          {"mse", f.mse}};
}

json to_json(const GradCheckResult& g) {
  return {{"max_relative_error", g.max_relative_error},
          {"max_absolute_error", g.max_absolute_error},
          {"worst_index", g.worst_index}};
}

json to_json(const PruneConfig& p) {
  return {{"enabled", p.enabled}, {"keep_last", p.keep_last}, {"interval", p.interval}};
}

json to_json(const MemoryModelParams& p) {
  return {{"per_frame_per_object_mb", p.per_frame_per_object_mb},
          {"base_mb", p.base_mb},
          {"num_objects", p.num_objects},
          {"fps", p.fps},
          {"budget_gb", p.budget_gb}};
}

json to_json(const StoragePolicy& p) {
  return {{"entries_per_year", p.entries_per_year},
          {"bytes_per_embedding", p.bytes_per_embedding},
          {"metadata_bytes_per_entry", p.metadata_bytes_per_entry},
          {"animals", p.animals},
          {"fps", p.fps}};
}

json to_json(const BudgetLine& l) {
  return {{"name", l.name}, {"vram_gb", l.vram_gb}, {"note", l.note}};
}

json to_json(const BudgetReport& r) {
  json lines = json::array();
  for (const auto& l : r.lines) lines.push_back(to_json(l));
  return {{"lines", lines},
          {"total_gb", r.total_gb},
          {"envelope_gb", r.envelope_gb},
          {"headroom_gb", r.headroom_gb},
          {"over_budget", r.over_budget}};
}

json to_json(const ClassReport& r) {
  json per_class = json::array();
  for (std::size_t i = 0; i < r.per_class.size(); ++i) {
    const auto& s = r.per_class[i];
    per_class.push_back({{"class", r.class_names[i]},
                         {"precision", s.precision},
                         {"recall", s.recall},
                         {"f1", s.f1},
                         {"support", s.support},
                         {"zero_division", s.zero_division}});
  }
  auto avg = [](const AveragedScores& a) {
    return json{{"precision", a.precision}, {"recall", a.recall}, {"f1", a.f1}};
  };
  return {{"per_class", per_class},
          {"macro", avg(r.macro)},
          {"weighted", avg(r.weighted)},
          {"accuracy", r.accuracy},
          {"total", r.total}};
}

json to_json(const Confusion& c) {
  return {{"true_class", c.true_class},
          {"predicted_class", c.predicted_class},
          {"count", c.count},
          {"fraction_of_true_class", c.fraction_of_true_class}};
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  if (!obj.is_object()) throw InputError(std::string(where) + " must be a JSON object");
  const std::set<std::string_view> keys(allowed);
  for (const auto& [key, value] : obj.items()) {
    if (!keys.contains(key)) {
      throw InputError(std::string(where) + ": unknown field '" + key + "'");
    }
  }
}

template <typename T>
void read_field(const json& obj, const char* key, T& out, std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string(where) + ": field '" + key + "' has the wrong type");
  }
  if constexpr (std::is_unsigned_v<T>) {
    if (!it->is_number_unsigned()) {
      throw InputError(std::string(where) + ": field '" + key + "' must be a non-negative integer");
    }
  }
}

}  // namespace

ScenarioConfig scenario_from_json(const json& doc) {
  ScenarioConfig c;
  reject_unknown(doc,
                 {"num_identities", "num_frames", "arena", "motion", "box_size", "switch_plan",
                  "embedding_model", "fps", "seed"},
                 "scenario");
  read_field(doc, "num_identities", c.num_identities, "scenario");
  read_field(doc, "num_frames", c.num_frames, "scenario");
  read_field(doc, "fps", c.fps, "scenario");
  read_field(doc, "seed", c.seed, "scenario");
  if (const auto it = doc.find("arena"); it != doc.end()) {
    reject_unknown(*it, {"width", "height"}, "scenario.arena");
    read_field(*it, "width", c.arena_width, "scenario.arena");
    read_field(*it, "height", c.arena_height, "scenario.arena");
  }
  if (const auto it = doc.find("motion"); it != doc.end()) {
    reject_unknown(*it, {"speed_px_per_frame", "direction_change_prob"}, "scenario.motion");
    read_field(*it, "speed_px_per_frame", c.motion.speed_px_per_frame, "scenario.motion");
    read_field(*it, "direction_change_prob", c.motion.direction_change_prob, "scenario.motion");
  }
  if (const auto it = doc.find("box_size"); it != doc.end()) {
    reject_unknown(*it, {"w", "h"}, "scenario.box_size");
    read_field(*it, "w", c.box_width, "scenario.box_size");
    read_field(*it, "h", c.box_height, "scenario.box_size");
  }
  if (const auto it = doc.find("embedding_model"); it != doc.end()) {
    reject_unknown(*it, {"dim", "cluster_separation", "noise_sigma"}, "scenario.embedding_model");
    read_field(*it, "dim", c.embedding_model.dim, "scenario.embedding_model");
    read_field(*it, "cluster_separation", c.embedding_model.cluster_separation,
               "scenario.embedding_model");
    read_field(*it, "noise_sigma", c.embedding_model.noise_sigma, "scenario.embedding_model");
  }
  if (const auto it = doc.find("switch_plan"); it != doc.end()) {
    if (!it->is_array()) throw InputError("scenario.switch_plan must be a list");
    for (const auto& s : *it) {
      reject_unknown(s, {"frame", "identity_a", "identity_b"}, "scenario.switch_plan[]");
      if (!s.contains("frame") || !s.contains("identity_a") || !s.contains("identity_b")) {
        throw InputError("scenario.switch_plan[]: frame, identity_a and identity_b are required");
      }
      IdentitySwap sw;
      read_field(s, "frame", sw.frame, "scenario.switch_plan[]");
      read_field(s, "identity_a", sw.identity_a, "scenario.switch_plan[]");
      read_field(s, "identity_b", sw.identity_b, "scenario.switch_plan[]");
      c.switch_plan.push_back(sw);
    }
  }
  validate(c);
  return c;
}

std::vector<BudgetLine> budget_lines_from_json(const json& doc, double* envelope_gb) {
  const json* list = &doc;
  if (doc.is_object()) {
    reject_unknown(doc, {"lines", "envelope_gb"}, "budget");
    if (!doc.contains("lines")) throw InputError("budget: missing 'lines'");
    list = &doc.at("lines");
    if (envelope_gb != nullptr) read_field(doc, "envelope_gb", *envelope_gb, "budget");
  }
  if (!list->is_array()) throw InputError("budget lines must be a list");
  std::vector<BudgetLine> lines;
  for (const auto& item : *list) {
    reject_unknown(item, {"name", "vram_gb", "note"}, "budget line");
    if (!item.contains("name") || !item.contains("vram_gb")) {
      throw InputError("budget line: 'name' and 'vram_gb' are required");
    }
    BudgetLine l;
    read_field(item, "name", l.name, "budget line");
    read_field(item, "vram_gb", l.vram_gb, "budget line");
    read_field(item, "note", l.note, "budget line");
    lines.push_back(std::move(l));
  }
  return lines;
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

}  // namespace herdtrack::cli
