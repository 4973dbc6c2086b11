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

#include "herdtrack/budget.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "herdtrack/errors.hpp"

namespace herdtrack {

double compression_ratio(std::uint64_t teacher_params, std::uint64_t student_params) {
  if (student_params == 0) throw InputError("compression ratio: student parameter count is zero");
  return static_cast<double>(teacher_params) / static_cast<double>(student_params);
}

void validate(const ComponentSpec& c) {
  if (c.parameter_count == 0) {
    throw InputError("component '" + c.name + "': parameter count must be positive");
  }
  if (!(c.bytes_per_parameter > 0.0) || !std::isfinite(c.bytes_per_parameter)) {
    throw InputError("component '" + c.name + "': bytes per parameter must be positive");
  }
}

Bytes checkpoint_size(const ComponentSpec& c) {
  validate(c);
  const double whole = std::floor(c.bytes_per_parameter);
  if (whole == c.bytes_per_parameter && whole <= 16.0) {
    return c.parameter_count * static_cast<Bytes>(whole);
  }
  return static_cast<Bytes>(
      std::llround(static_cast<long double>(c.parameter_count) * c.bytes_per_parameter));
}

BudgetReport budget_report(std::vector<BudgetLine> lines, double envelope_gb) {
  if (!(envelope_gb > 0.0) || !std::isfinite(envelope_gb)) {
    throw InputError("budget envelope must be positive");
  }
  std::vector<double> values;
  values.reserve(lines.size());
  for (const auto& l : lines) {
    if (!(l.vram_gb >= 0.0) || !std::isfinite(l.vram_gb)) {
      throw InputError("budget line '" + l.name + "': vram must be non-negative");
    }
    values.push_back(l.vram_gb);
  }
  // Sorted-order sum.
  std::sort(values.begin(), values.end());
  long double total = 0.0L;
  for (double v : values) total += v;

  BudgetReport r;
  r.lines = std::move(lines);
  r.total_gb = static_cast<double>(total);
  r.envelope_gb = envelope_gb;
  r.headroom_gb = static_cast<double>(static_cast<long double>(envelope_gb) - total);
  r.over_budget = r.headroom_gb < 0.0;
  return r;
}

std::string format_size(Bytes b, UnitMode mode, int decimals) {
  const double gb = to_gigabytes(b, mode);
  const bool use_giga = gb >= 1.0;
  const double value = use_giga ? gb : to_megabytes(b, mode);
  const auto suffix = use_giga ? gigabyte_suffix(mode) : megabyte_suffix(mode);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f %.*s", std::clamp(decimals, 0, 9), value,
                static_cast<int>(suffix.size()), suffix.data());
  return buf;
}

}  // namespace herdtrack
