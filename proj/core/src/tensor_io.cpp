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

#include <fstream>
#include <limits>

#include "herdtrack/distill_loss.hpp"
#include "herdtrack/errors.hpp"
#include "herdtrack/half.hpp"
#include "le_io.hpp"

namespace herdtrack {

namespace {

constexpr std::string_view kMagicF32 = "DTN1";
constexpr std::string_view kMagicF16 = "DTNH";
// 2^31 elements; far beyond anything this tool needs to load.
constexpr std::uint64_t kMaxElements = 1ull << 31;

}  // namespace

FeatureTensor read_tensor(std::istream& in) {
  char magic[4];
  detail::read_exact(in, magic, 4, "tensor magic");
  const std::string_view m(magic, 4);
  const bool half = (m == kMagicF16);
  if (!half && m != kMagicF32) {
    throw InputError("tensor file: bad magic (expected DTN1 or DTNH)");
  }
  const auto rank = detail::read_u32(in, "tensor rank");
  if (rank != 4) {
    throw InputError("tensor file: rank must be 4, got " + std::to_string(rank));
  }
  FeatureTensor::Dims dims{};
  std::uint64_t count = 1;
  for (auto& d : dims) {
    d = detail::read_u32(in, "tensor dims");
    if (d == 0) throw InputError("tensor file: zero dimension");
    count *= d;
    if (count > kMaxElements) throw InputError("tensor file: too many elements");
  }
  std::vector<double> values(count);
  for (auto& v : values) {
    v = half ? static_cast<double>(half_to_float(detail::read_u16(in, "tensor values")))
             : static_cast<double>(detail::read_f32(in, "tensor values"));
  }
  if (!detail::at_eof(in)) throw InputError("tensor file: trailing bytes after values");
  return FeatureTensor(dims, std::move(values));
}

FeatureTensor read_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open tensor file " + path.string());
  return read_tensor(in);
}

void write_tensor(std::ostream& out, const FeatureTensor& t, TensorPrecision precision) {
  const bool half = precision == TensorPrecision::kFloat16;
  out.write(half ? kMagicF16.data() : kMagicF32.data(), 4);
  detail::write_u32(out, 4);
  for (auto d : t.dims()) {
    if (d > std::numeric_limits<std::uint32_t>::max()) {
      throw InputError("tensor dim exceeds u32 range");
    }
    detail::write_u32(out, static_cast<std::uint32_t>(d));
  }
  for (double v : t.values()) {
    if (half) {
      detail::write_u16(out, float_to_half(static_cast<float>(v)));
    } else {
      detail::write_f32(out, static_cast<float>(v));
    }
  }
}

void write_tensor(const std::filesystem::path& path, const FeatureTensor& t,
                  TensorPrecision precision) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write tensor file " + path.string());
  write_tensor(out, t, precision);
}

}  // namespace herdtrack
