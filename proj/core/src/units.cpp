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

#include "herdtrack/units.hpp"

#include <cmath>
#include <string>

#include "herdtrack/errors.hpp"

namespace herdtrack {

namespace {

Bytes round_bytes(double value) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.8e19) {
    throw InputError("byte size must be finite and non-negative");
  }
  return static_cast<Bytes>(std::llround(value));
}

}  // namespace

Bytes bytes_from_megabytes(double mb, UnitMode m) { return round_bytes(mb * mega(m)); }
Bytes bytes_from_gigabytes(double gb, UnitMode m) { return round_bytes(gb * giga(m)); }

std::string_view to_string(UnitMode m) {
  return m == UnitMode::kDecimal ? "decimal" : "binary";
}

UnitMode parse_unit_mode(std::string_view text) {
  if (text == "decimal") return UnitMode::kDecimal;
  if (text == "binary") return UnitMode::kBinary;
  throw InputError("unknown unit mode '" + std::string(text) +
                   "' (expected decimal or binary)");
}

std::string_view megabyte_suffix(UnitMode m) {
  return m == UnitMode::kDecimal ? "MB" : "MiB";
}
std::string_view gigabyte_suffix(UnitMode m) {
  return m == UnitMode::kDecimal ? "GB" : "GiB";
}

}  // namespace herdtrack
