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
#include <optional>
#include <string>
#include <vector>

#include "herdtrack/units.hpp"

namespace herdtrack {

/// teacher / student. Throws InputError when student_params is zero.
double compression_ratio(std::uint64_t teacher_params, std::uint64_t student_params);

struct ComponentSpec {
  std::string name;
  std::uint64_t parameter_count = 0;
  double bytes_per_parameter = 2.0;  // 2 for half16, 4 for single32
  std::optional<Bytes> activation_budget_bytes;
};

/// Throws InputError unless parameter_count > 0 and bytes_per_parameter is
/// positive and finite.
void validate(const ComponentSpec& c);

/// parameter_count * bytes_per_parameter rounded to whole bytes. The
/// activation budget is not included.
Bytes checkpoint_size(const ComponentSpec& c);

struct BudgetLine {
  std::string name;
  double vram_gb = 0.0;
  std::string note;

  friend bool operator==(const BudgetLine&, const BudgetLine&) = default;
};

struct BudgetReport {
  std::vector<BudgetLine> lines;
  double total_gb = 0.0;
  double envelope_gb = 0.0;
  double headroom_gb = 0.0;
  bool over_budget = false;
};

/// Sums the lines and subtracts from the envelope. Throws InputError when
/// the envelope is not positive or a line is negative or non-finite. The
/// total is accumulated in a fixed order so it does not depend on the line
/// order.
BudgetReport budget_report(std::vector<BudgetLine> lines, double envelope_gb);

/// "12.51 GiB" style rendering with the unit mode's suffix.
std::string format_size(Bytes b, UnitMode mode, int decimals = 2);

}  // namespace herdtrack
