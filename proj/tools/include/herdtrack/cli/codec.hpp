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

#include <nlohmann/json.hpp>

#include "herdtrack/budget.hpp"
#include "herdtrack/cls_metrics.hpp"
#include "herdtrack/distill_loss.hpp"
#include "herdtrack/mot_metrics.hpp"
#include "herdtrack/reid_engine.hpp"
#include "herdtrack/session_model.hpp"
#include "herdtrack/sim_harness.hpp"

namespace herdtrack::cli {

using nlohmann::json;

json to_json(const MotConfig& c);
json to_json(const MotSummary& s);
json to_json(const ReidConfig& c);
json to_json(const ReidEvent& e);
json to_json(const HarnessReport& r);
json to_json(const ScenarioConfig& c);
json to_json(const LossWeights& w);
json to_json(const LossBreakdown& b);
json to_json(const FidelityReport& f);
json to_json(const GradCheckResult& g);
json to_json(const PruneConfig& p);
json to_json(const MemoryModelParams& p);
json to_json(const StoragePolicy& p);
json to_json(const BudgetLine& l);
json to_json(const BudgetReport& r);
json to_json(const ClassReport& r);
json to_json(const Confusion& c);

/// Missing fields keep their defaults; unknown fields and wrong types throw
/// InputError.
ScenarioConfig scenario_from_json(const json& doc);
/// Either a list of lines or an object with `lines` and optional
/// `envelope_gb`.
std::vector<BudgetLine> budget_lines_from_json(const json& doc, double* envelope_gb);

/// Parses text as JSON, mapping syntax errors to InputError.
json parse_json(std::string_view text, std::string_view what);

}  // namespace herdtrack::cli
