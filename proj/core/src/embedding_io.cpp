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

#include <bit>
#include <fstream>

#include <nlohmann/json.hpp>

#include "base64.hpp"
#include "herdtrack/errors.hpp"
#include "herdtrack/half.hpp"
#include "herdtrack/reid_engine.hpp"
#include "le_io.hpp"

namespace herdtrack {

namespace {

constexpr std::string_view kEmbeddingMagic = "EMB1";
constexpr std::uint64_t kMaxStreamValues = 1ull << 30;

}  // namespace

std::vector<EmbeddingVector> read_embedding_stream(std::istream& in) {
  char magic[4];
  detail::read_exact(in, magic, 4, "embedding magic");
  if (std::string_view(magic, 4) != kEmbeddingMagic) {
    throw InputError("embedding stream: bad magic (expected EMB1)");
  }
  const std::uint32_t count = detail::read_u32(in, "embedding count");
  const std::uint32_t dim = detail::read_u32(in, "embedding dim");
  char dtype = 0;
  detail::read_exact(in, &dtype, 1, "embedding dtype");
  if (dtype != 0 && dtype != 1) {
    throw InputError("embedding stream: dtype must be 0 (single32) or 1 (half16)");
  }
  if (dim == 0 && count > 0) throw InputError("embedding stream: zero dim");
  if (static_cast<std::uint64_t>(count) * dim > kMaxStreamValues) {
    throw InputError("embedding stream: too many values");
  }
  const auto precision =
      dtype == 1 ? EmbeddingPrecision::kHalf16 : EmbeddingPrecision::kSingle32;
  std::vector<EmbeddingVector> out;
  out.reserve(count);
  for (std::uint32_t n = 0; n < count; ++n) {
    std::vector<double> values(dim);
    for (auto& v : values) {
      v = precision == EmbeddingPrecision::kHalf16
              ? static_cast<double>(half_to_float(detail::read_u16(in, "embedding values")))
              : static_cast<double>(detail::read_f32(in, "embedding values"));
    }
    out.emplace_back(std::move(values), precision);
  }
  if (!detail::at_eof(in)) throw InputError("embedding stream: trailing bytes");
  return out;
}

std::vector<EmbeddingVector> read_embedding_stream(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open embedding stream " + path.string());
  return read_embedding_stream(in);
}

void write_embedding_stream(std::ostream& out, std::span<const EmbeddingVector> vectors,
                            EmbeddingPrecision precision) {
  const std::size_t dim = vectors.empty() ? 0 : vectors.front().dim();
  for (const auto& v : vectors) {
    if (v.dim() != dim) throw InputError("embedding stream: mixed dims");
  }
  out.write(kEmbeddingMagic.data(), 4);
  detail::write_u32(out, static_cast<std::uint32_t>(vectors.size()));
  detail::write_u32(out, static_cast<std::uint32_t>(dim));
  const char dtype = precision == EmbeddingPrecision::kHalf16 ? 1 : 0;
  out.write(&dtype, 1);
  for (const auto& v : vectors) {
    for (double x : v.values()) {
      if (precision == EmbeddingPrecision::kHalf16) {
        detail::write_u16(out, float_to_half(static_cast<float>(x)));
      } else {
        detail::write_f32(out, static_cast<float>(x));
      }
    }
  }
}

void write_embedding_stream(const std::filesystem::path& path,
                            std::span<const EmbeddingVector> vectors,
                            EmbeddingPrecision precision) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write embedding stream " + path.string());
  write_embedding_stream(out, vectors, precision);
}

namespace {

std::string encode_payload(const EmbeddingVector& e) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(e.storage_bytes());
  for (double x : e.values()) {
    if (e.precision() == EmbeddingPrecision::kHalf16) {
      const std::uint16_t h = float_to_half(static_cast<float>(x));
      bytes.push_back(static_cast<std::uint8_t>(h & 0xFF));
      bytes.push_back(static_cast<std::uint8_t>(h >> 8));
    } else {
      const auto u = std::bit_cast<std::uint32_t>(static_cast<float>(x));
      for (int k = 0; k < 4; ++k) bytes.push_back(static_cast<std::uint8_t>(u >> (8 * k)));
    }
  }
  return detail::base64_encode(bytes);
}

EmbeddingVector decode_payload(const std::string& text, std::size_t dim,
                               EmbeddingPrecision precision) {
  const auto bytes = detail::base64_decode(text);
  const std::size_t width = bytes_per_component(precision);
  if (bytes.size() != dim * width) {
    throw InputError("bank json: embedding payload size does not match dim");
  }
  std::vector<double> values(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::uint8_t* p = bytes.data() + i * width;
    if (precision == EmbeddingPrecision::kHalf16) {
      values[i] = half_to_float(static_cast<std::uint16_t>(p[0] | (p[1] << 8)));
    } else {
      const std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                              (static_cast<std::uint32_t>(p[2]) << 16) |
                              (static_cast<std::uint32_t>(p[3]) << 24);
      values[i] = std::bit_cast<float>(u);
    }
  }
  return EmbeddingVector(std::move(values), precision);
}

}  // namespace

std::string bank_to_json(const EmbeddingBank& bank) {
  nlohmann::json doc;
  doc["identity"] = bank.identity();
  doc["last_update"] = bank.last_update();
  const auto precision = bank.empty() ? EmbeddingPrecision::kHalf16
                                      : bank.entries().front().embedding.precision();
  doc["dim"] = bank.empty() ? 0 : bank.entries().front().embedding.dim();
  doc["dtype"] = std::string(to_string(precision));
  doc["entries"] = nlohmann::json::array();
  for (const auto& e : bank.entries()) {
    if (e.embedding.precision() != precision) {
      throw InputError("bank json: entries must share one precision");
    }
    doc["entries"].push_back({{"timestamp", e.timestamp},
                              {"embedding", encode_payload(e.embedding)},
                              {"histogram", e.histogram}});
  }
  return doc.dump(2);
}

EmbeddingBank bank_from_json(std::string_view document) {
  try {
    const auto doc = nlohmann::json::parse(document);
    EmbeddingBank bank(doc.at("identity").get<IdentityId>());
    const auto dim = doc.at("dim").get<std::size_t>();
    const auto precision = parse_precision(doc.at("dtype").get<std::string>());
    for (const auto& e : doc.at("entries")) {
      BankEntry entry;
      entry.timestamp = e.at("timestamp").get<double>();
      entry.embedding = decode_payload(e.at("embedding").get<std::string>(), dim, precision);
      const auto hist = e.at("histogram").get<std::vector<double>>();
      if (hist.size() != kBehaviourClasses) {
        throw InputError("bank json: histogram must have 9 bins");
      }
      std::copy(hist.begin(), hist.end(), entry.histogram.begin());
      bank.append(std::move(entry));
    }
    bank.set_last_update(doc.at("last_update").get<double>());
    return bank;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bank json: ") + e.what());
  }
}

}  // namespace herdtrack
