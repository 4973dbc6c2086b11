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
#include <string_view>

namespace herdtrack {

using Bytes = std::uint64_t;

/// Decimal SI (10^3 steps) or binary IEC (2^10 steps). Memory-growth and
/// storage arithmetic is decimal; weight-file sizes are usually quoted in
/// binary units, so callers pick explicitly.
enum class UnitMode { kDecimal, kBinary };

constexpr double kilo(UnitMode m) { return m == UnitMode::kDecimal ? 1e3 : 1024.0; }
constexpr double mega(UnitMode m) { return kilo(m) * kilo(m); }
constexpr double giga(UnitMode m) { return mega(m) * kilo(m); }

constexpr double to_megabytes(Bytes b, UnitMode m = UnitMode::kDecimal) {
  return static_cast<double>(b) / mega(m);
}
constexpr double to_gigabytes(Bytes b, UnitMode m = UnitMode::kDecimal) {
  return static_cast<double>(b) / giga(m);
}

/// Rounds to the nearest byte. Throws InputError for negative or non-finite
/// input.
Bytes bytes_from_megabytes(double mb, UnitMode m = UnitMode::kDecimal);
Bytes bytes_from_gigabytes(double gb, UnitMode m = UnitMode::kDecimal);

std::string_view to_string(UnitMode m);
/// "decimal" or "binary".
UnitMode parse_unit_mode(std::string_view text);
/// "MB"/"GB" or "MiB"/"GiB".
std::string_view megabyte_suffix(UnitMode m);
std::string_view gigabyte_suffix(UnitMode m);

}  // namespace herdtrack
