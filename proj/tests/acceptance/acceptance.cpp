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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "herdtrack/assignment.hpp"
#include "herdtrack/budget.hpp"
#include "herdtrack/cls_metrics.hpp"
#include "herdtrack/distill_loss.hpp"
#include "herdtrack/mot_metrics.hpp"
#include "herdtrack/random.hpp"
#include "herdtrack/reid_engine.hpp"
#include "herdtrack/session_model.hpp"
#include "herdtrack/sim_harness.hpp"
#include "loss_oracle.hpp"
#include "test_util.hpp"

namespace {

using namespace herdtrack;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    detail << ' ' << what << '=' << got;
    require(std::abs(got - want) <= tol, what);
  }
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // 0: no limit
  std::function<void(Check&)> body;
};

void c1_compression(Check& c) {
  c.near(compression_ratio(446'240'000, 40'660'000), 10.98, 0.005, "ratio_a");
  c.near(compression_ratio(465'780'000, 59'980'000), 7.77, 0.005, "ratio_b");
}

void c2_budget(Check& c) {
  const std::vector<BudgetLine> lines{{"student", 6.49, ""},
                                      {"detector", 1.5, ""},
                                      {"classifier", 1.6, ""},
                                      {"banks", 0.01, ""},
                                      {"runtime", 1.5, ""}};
  const auto r = budget_report(lines, 16.0);
  c.near(r.total_gb, 11.1, 0.01, "total_gb");
  c.near(r.headroom_gb, 4.9, 0.01, "headroom_gb");
}

StoragePolicy barn_policy() {
  StoragePolicy p;
  p.entries_per_year = 8760;
  p.bytes_per_embedding = 768;
  p.metadata_bytes_per_entry = 10'000;
  p.animals = 200;
  p.fps = 5.0;
  return p;
}

void c3_storage(Check& c) {
  const auto fp = annual_footprint(barn_policy());
  c.detail << " raw=" << fp.raw_embedding_bytes;
  c.require(fp.raw_embedding_bytes == 6'727'680u, "raw exact");
  const double per_animal_mb = to_megabytes(fp.total_bytes_per_animal);
  const double barn_gb = to_gigabytes(fp.barn_total_bytes);
  c.near(per_animal_mb, 94.3, 0.01 * 94.3, "per_animal_mb");
  c.near(barn_gb, 18.9, 0.01 * 18.9, "barn_gb");
}

void c4_traffic(Check& c) {
  const auto t = raw_traffic_and_reduction(barn_policy(), 3600.0);
  c.detail << " bytes_per_day=" << static_cast<std::uint64_t>(t.bytes_per_animal_per_day)
           << " reduction=" << t.reduction_factor;
  c.require(t.bytes_per_animal_per_day == 331'776'000.0, "traffic exact");
  c.require(t.reduction_factor == 18'000.0, "reduction exact");
}

void c5_steady_state(Check& c) {
  const MemoryModelParams p;  // 5.6 MB per object-frame
  const PruneConfig prune;    // keep 8
  const Bytes steady = steady_state_per_object(p, prune);
  c.detail << " steady_bytes=" << steady;
  c.require(steady == 44'800'000u, "8 x 5.6 MB exact");
  // The simulated stream settles on the same per-object cache right after a prune.
  const auto trace = simulate_stream(p, 1000, prune);
  c.require(trace[999].bytes == p.num_objects * steady, "simulated steady state");
}

void c6_classification(Check& c) {
  const std::array<double, 9> f1{0.9436, 0.9487, 0.9909, 0.9495, 0.8727,
                                 0.9865, 0.7692, 0.9000, 0.8889};
  const std::array<std::uint64_t, 9> support{474, 477, 819, 95, 49, 2280, 14, 19, 65};
  c.near(macro_mean(f1), 0.9167, 0.0005, "macro_f1");
  c.near(weighted_mean(f1, support), 0.9737, 0.0005, "weighted_f1");
  const auto cm = read_confusion_csv(testing::fixture("behaviour_confusion.csv"));
  const auto top = top_confusions(cm, 1);
  c.require(!top.empty() && top[0].true_class == "sleep" && top[0].predicted_class == "lying",
            "sleep->lying is the top confusion");
  if (!top.empty()) c.near(top[0].fraction_of_true_class, 0.0171, 0.0005, "sleep_lying_frac");
  const auto rep = report(cm);
  c.near(rep.macro.f1, 0.9167, 0.0005, "matrix_macro_f1");
  c.near(rep.weighted.f1, 0.9737, 0.0005, "matrix_weighted_f1");
}

void c7_assignment(Check& c) {
  CounterRng rng(20260101);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(6);
    CostMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t k = 0; k < cols; ++k)
        m.set(r, k, rng.uniform() < 0.15 ? kForbidden : static_cast<double>(rng.below(100)));
    const auto fast = solve_min_cost(m);
    const auto slow = brute_force_min_cost(m);
    if (fast.total_cost != slow.total_cost || fast.pairs.size() != slow.pairs.size()) ++mismatches;
  }
  c.detail << " mismatches=" << mismatches << "/1000";
  c.require(mismatches == 0, "exact cost equality");
}

void c8_mot(Check& c) {
  const TrackSet gt = read_track_csv(testing::fixture("two_lane_gt.csv"));
  const TrackSet swap = read_track_csv(testing::fixture("two_lane_swap.csv"));
  const auto perfect = evaluate_sequence(gt, gt);
  c.detail << " perfect_mota=" << perfect.mota << " perfect_idf1=" << perfect.idf1;
  c.require(perfect.mota == 1.0 && perfect.idf1 == 1.0 && perfect.id_switches == 0,
            "perfect tracker");
  const auto s = evaluate_sequence(gt, swap);
  c.detail << " swap_idsw=" << s.id_switches << " swap_idf1=" << s.idf1;
  c.require(gt.frame_range() == std::make_pair(FrameIndex{1}, FrameIndex{100}), "100-frame clip");
  c.require(s.id_switches == 2 && s.idf1 == 0.5, "permanent swap");

  std::vector<TrackRecord> relabeled;
  for (auto r : swap.records()) {
    r.id = 1000 - 7 * r.id;
    relabeled.push_back(r);
  }
  const auto rs = evaluate_sequence(gt, TrackSet(relabeled));
  c.require(rs.mota == s.mota && rs.idf1 == s.idf1, "relabel invariance");
  c.require(gt.size() == swap.size(), "equal cardinality fixture");
  c.require(std::abs(s.idp - s.idr) <= 1e-15 && std::abs(s.idp - s.idf1) <= 1e-15,
            "idp = idr = idf1");
}

void c9_loss(Check& c) {
  CounterRng rng(99);
  const LossWeights w;
  double worst_oracle = 0.0, worst_scale = 0.0, worst_grad = 0.0;
  bool zero_ok = true;
  for (int pair = 0; pair < 20; ++pair) {
    const auto s = testing::random_tensor({1, 4, 3, 3}, rng);
    const auto t = testing::random_tensor({1, 4, 3, 3}, rng);
    zero_ok = zero_ok && compute_loss(t, t).total == 0.0;
    const auto got = compute_loss(s, t);
    worst_oracle = std::max(worst_oracle, testing::rel(got.total, testing::oracle(s, t, w).total));
    const double k = 0.25 + 4.0 * rng.uniform();
    const auto scaled = compute_loss(s.scaled(k), t);
    worst_scale = std::max({worst_scale, std::abs(scaled.directional - got.directional),
                            std::abs(scaled.cosine - got.cosine)});
    worst_grad = std::max(worst_grad, testing::max_fd_relative_error(s, t, LossOptions{}));
  }
  c.detail << " oracle_rel=" << worst_oracle << " scale_abs=" << worst_scale
           << " grad_rel=" << worst_grad;
  c.require(zero_ok, "zero on identical tensors");
  c.require(worst_oracle <= 1e-12, "oracle within 1e-12");
  c.require(worst_scale <= 1e-12, "scale invariance within 1e-12");
  c.require(worst_grad < 1e-4, "gradient within 1e-4");
}

void c10_session(Check& c) {
  const MemoryModelParams p;
  PruneConfig off;
  off.enabled = false;
  bool linear = true;
  const auto unpruned = simulate_stream(p, 2000, off);
  for (const auto& pt : unpruned) linear = linear && pt.bytes == unpruned_footprint(p, pt.frame);
  c.require(linear, "unpruned exactly linear");

  bool bounded = true;
  Bytes peak = 0;
  for (const PruneConfig& pc : {PruneConfig{}, PruneConfig{true, 1, 1}, PruneConfig{true, 16, 100}}) {
    const Bytes bound = pruned_footprint_bound(p, pc);
    for (const auto& pt : simulate_stream(p, 10'000, pc)) {
      bounded = bounded && pt.bytes <= bound;
      peak = std::max(peak, pt.bytes);
    }
  }
  c.detail << " peak=" << peak;
  c.require(bounded, "pruned trace bounded up to 10000 frames");

  TrackerSession session(PruneConfig{true, 8, 1'000'000});
  for (ObjectId id = 1; id <= 3; ++id) session.add_object(id, 1000);
  for (StreamFrame f = 1; f <= 40; ++f) session.step(f, 10);
  session.prune();
  const SessionState once = session.state();
  const auto second = session.prune();
  c.require(second.entries_removed == 0 && session.state() == once, "prune idempotent");
}

void c11_reid(Check& c) {
  ScenarioConfig sc;
  sc.num_frames = 100;
  sc.switch_plan = {{50, 1, 2}};
  sc.seed = 42;
  const auto r = run_pipeline(generate(sc), ReidConfig{}, 10);
  c.detail << " idsw_after=" << r.idsw_after << " corrected=" << r.corrected_switch_count
           << " false=" << r.false_reinit_count;
  c.require(r.idsw_before == 2 && r.idsw_after == 0 && r.corrected_switch_count == 1 &&
                r.false_reinit_count == 0,
            "one swap corrected");

  std::uint64_t false_reinits = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    ScenarioConfig quiet = sc;
    quiet.switch_plan.clear();
    quiet.seed = seed;
    quiet.embedding_model.noise_sigma = 0.02;
    false_reinits += run_pipeline(generate(quiet), ReidConfig{}, 10).false_reinit_count;
  }
  c.detail << " no_switch_false=" << false_reinits;
  c.require(false_reinits == 0, "no-switch scenario");

  const auto off = run_pipeline(generate(sc), ReidConfig{0.65, 1.01, 0.7, 3600.0}, 10);
  c.require(off.corrected_switch_count == 0 && off.idsw_after == off.idsw_before,
            "tau_high > 1 disables correction");

  ScenarioConfig noisy = sc;
  noisy.embedding_model.noise_sigma = 0.05;
  noisy.seed = 17;
  c.require(run_pipeline(generate(noisy), ReidConfig{}, 10) ==
                run_pipeline(generate(noisy), ReidConfig{}, 10),
            "deterministic");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "compression ratios", 1.0, c1_compression},
      {2, "edge budget total and headroom", 1.0, c2_budget},
      {3, "annual embedding storage", 1.0, c3_storage},
      {4, "raw traffic and reduction", 1.0, c4_traffic},
      {5, "pruned steady-state cache", 1.0, c5_steady_state},
      {6, "behaviour classification averages", 1.0, c6_classification},
      {7, "assignment vs brute force", 5.0, c7_assignment},
      {8, "MOT metric properties", 0.0, c8_mot},
      {9, "distillation loss properties", 10.0, c9_loss},
      {10, "session memory model", 0.0, c10_session},
      {11, "re-id harness", 0.0, c11_reid},
  };
  constexpr double kSuiteLimitS = 30.0;

  int failures = 0;
  const auto suite_start = Clock::now();
  for (const auto& cr : criteria) {
    Check check;
    const auto start = Clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (cr.time_limit_s > 0.0 && secs >= cr.time_limit_s) {
      check.ok = false;
      check.detail << " [over time limit " << cr.time_limit_s << " s]";
    }
    if (!check.ok) ++failures;
    std::printf("%s %2d %s:%s (%.3f s)\n", check.ok ? "PASS" : "FAIL", cr.id, cr.title,
                check.detail.str().c_str(), secs);
  }
  const double total = std::chrono::duration<double>(Clock::now() - suite_start).count();
  const bool suite_ok = total < kSuiteLimitS;
  if (!suite_ok) ++failures;
  std::printf("%s suite runtime %.3f s (limit %.0f s)\n", suite_ok ? "PASS" : "FAIL", total,
              kSuiteLimitS);
  return failures == 0 ? 0 : 1;
}
