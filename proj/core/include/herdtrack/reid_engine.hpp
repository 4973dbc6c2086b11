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

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "herdtrack/geometry.hpp"
#include "herdtrack/tracks.hpp"
#include "herdtrack/units.hpp"

namespace herdtrack {

enum class EmbeddingPrecision : std::uint8_t { kSingle32 = 0, kHalf16 = 1 };

constexpr std::size_t bytes_per_component(EmbeddingPrecision p) {
  return p == EmbeddingPrecision::kHalf16 ? 2 : 4;
}
std::string_view to_string(EmbeddingPrecision p);
/// "half16" or "single32".
EmbeddingPrecision parse_precision(std::string_view text);

inline constexpr std::size_t kDefaultEmbeddingDim = 384;

class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  /// Throws InputError when empty or any value is non-finite.
  explicit EmbeddingVector(std::vector<double> values,
                           EmbeddingPrecision precision = EmbeddingPrecision::kHalf16);

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  EmbeddingPrecision precision() const { return precision_; }
  double norm() const;
  /// Storage size at the tagged precision.
  Bytes storage_bytes() const { return dim() * bytes_per_component(precision_); }

 private:
  std::vector<double> values_;
  EmbeddingPrecision precision_ = EmbeddingPrecision::kHalf16;
};

/// Cosine similarity. InputError on dim mismatch, DegenerateInputError on a
/// zero-norm operand.
double cosine_sim(const EmbeddingVector& a, const EmbeddingVector& b);

/// alpha * cur + (1 - alpha) * prev, alpha in (0, 1].
EmbeddingVector ema_update(const EmbeddingVector& prev, const EmbeddingVector& cur,
                           double alpha);

inline constexpr std::size_t kBehaviourClasses = 9;
using BehaviourHistogram = std::array<double, kBehaviourClasses>;
BehaviourHistogram uniform_histogram();

struct BankEntry {
  double timestamp = 0.0;  // seconds since epoch
  EmbeddingVector embedding;
  BehaviourHistogram histogram = uniform_histogram();
};

/// Time-ordered appearance history of one identity.
class EmbeddingBank {
 public:
  explicit EmbeddingBank(IdentityId identity) : identity_(identity) {}

  IdentityId identity() const { return identity_; }
  const std::vector<BankEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  double last_update() const { return last_update_; }
  void set_last_update(double t) { last_update_ = t; }

  /// Appends and sets last_update to the entry's timestamp. Throws
  /// InputError if timestamps would not be strictly increasing, the
  /// histogram is not a distribution (within 1e-9), or dims differ from the
  /// existing entries.
  void append(BankEntry entry);

  /// Highest cosine between `e` and any entry; -1 for an empty bank.
  double max_similarity(const EmbeddingVector& e) const;

 private:
  IdentityId identity_;
  std::vector<BankEntry> entries_;
  double last_update_ = 0.0;
};

struct ReidConfig {
  double tau_low = 0.65;   // below this self-similarity the track is doubted
  double tau_high = 0.78;  // above this similarity to another bank, reassign
  double alpha = 0.7;      // EMA weight on the current observation
  double cadence_s = 3600.0;
};

/// Requires 0 < tau_low < tau_high, alpha in (0, 1], cadence >= 0.
/// tau_high above 1 is allowed and disables reassignment.
void validate(const ReidConfig& cfg);

struct ReidEvent {
  FrameIndex frame = 0;
  IdentityId claimed_id = 0;
  IdentityId corrected_id = 0;
  double sim_self = 0.0;
  double sim_other = 0.0;
};

/// Instruction for the tracker to restart `identity` at `box`. The engine
/// never executes it.
struct ReinitDirective {
  FrameIndex frame = 0;
  IdentityId identity = 0;
  BoundingBox box{0.0, 0.0, 1.0, 1.0};
};

struct ObservationOutcome {
  IdentityId resolved_id = 0;  // identity the observation continues as
  double sim_self = 0.0;
  double sim_other = -1.0;     // -1 when no other bank exists
  std::optional<ReidEvent> event;
  std::optional<ReinitDirective> reinit;
  bool bank_appended = false;
};

/// Embedding-pool re-identification state machine.
///
/// For each observation: compare against the claimed identity's bank
/// (sim_self) and every other bank (sim_other, both as max cosine over
/// entries). If sim_self < tau_low and sim_other > tau_high the observation
/// is reassigned to the best-matching bank, a swap event and a re-init
/// directive are emitted. Independently, the (possibly corrected) bank
/// receives an EMA entry when `cadence_s` has elapsed since its last update.
class ReidEngine {
 public:
  explicit ReidEngine(ReidConfig config = {});

  const ReidConfig& config() const { return config_; }
  const std::map<IdentityId, EmbeddingBank>& banks() const { return banks_; }

  /// Appends a raw (non-EMA) entry, creating the bank if needed.
  void seed(IdentityId id, BankEntry entry);
  void add_bank(EmbeddingBank bank);

  /// Throws InputError when the claimed identity has no bank or dims differ.
  ObservationOutcome process_observation(
      IdentityId claimed_id, const EmbeddingVector& e_cur, FrameIndex frame,
      double now, const BoundingBox& box,
      const BehaviourHistogram& histogram = uniform_histogram());

 private:
  ReidConfig config_;
  std::map<IdentityId, EmbeddingBank> banks_;
};

// Storage sizing for embedding banks. All arithmetic is exact bytes.

struct StoragePolicy {
  std::uint64_t entries_per_year = 8760;  // one per hour
  Bytes bytes_per_embedding = 768;        // 384 x float16
  Bytes metadata_bytes_per_entry = 10000;
  std::uint64_t animals = 1;
  double fps = 5.0;

  /// Policy for `dim` components at `precision`, one entry per
  /// `cadence_hours` over a 365-day year (fractional entries truncated).
  static StoragePolicy from_embedding(std::size_t dim, EmbeddingPrecision precision,
                                      double cadence_hours, Bytes metadata_bytes,
                                      std::uint64_t animals, double fps);
};

struct StorageFootprint {
  Bytes raw_embedding_bytes = 0;     // per animal per year
  Bytes total_bytes_per_animal = 0;  // embeddings + metadata
  Bytes barn_total_bytes = 0;
};

StorageFootprint annual_footprint(const StoragePolicy& p);

struct TrafficReduction {
  double bytes_per_animal_per_day = 0.0;  // per-frame embedding traffic
  double reduction_factor = 0.0;          // frames folded into one entry
};

/// Throws InputError unless fps and cadence are positive.
TrafficReduction raw_traffic_and_reduction(const StoragePolicy& p, double cadence_s);

// Embedding stream file: magic "EMB1", u32 LE count, u32 LE dim, u8 dtype
// (0 = single32, 1 = half16), then count * dim little-endian values.

std::vector<EmbeddingVector> read_embedding_stream(std::istream& in);
std::vector<EmbeddingVector> read_embedding_stream(const std::filesystem::path& path);
/// All vectors must share one dim; written at `precision`.
void write_embedding_stream(std::ostream& out, std::span<const EmbeddingVector> vectors,
                            EmbeddingPrecision precision);
void write_embedding_stream(const std::filesystem::path& path,
                            std::span<const EmbeddingVector> vectors,
                            EmbeddingPrecision precision);

/// One JSON document per identity: identity, last_update, dim, dtype and
/// entries with timestamp, base64 little-endian embedding payload and
/// histogram.
std::string bank_to_json(const EmbeddingBank& bank);
EmbeddingBank bank_from_json(std::string_view document);

}  // namespace herdtrack
