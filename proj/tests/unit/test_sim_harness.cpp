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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "herdtrack/errors.hpp"
#include "herdtrack/sim_harness.hpp"

namespace herdtrack {
namespace {

bool same_records(const TrackSet& a, const TrackSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto &x = a.records()[i], &y = b.records()[i];
    if (x.frame != y.frame || x.id != y.id || !(x.box == y.box) || x.confidence != y.confidence) {
      return false;
    }
  }
  return true;
}

ScenarioConfig one_swap(std::uint64_t seed = 42) {
  ScenarioConfig cfg;
  cfg.num_frames = 100;
  cfg.switch_plan = {{50, 1, 2}};
  cfg.seed = seed;
  return cfg;
}

TEST(Scenario, EmptyPlanLeavesLabelsIntact) {
  ScenarioConfig cfg;
  cfg.num_frames = 60;
  const Scenario s = generate(cfg);
  EXPECT_TRUE(same_records(s.ground_truth(), s.corrupted()));
  EXPECT_EQ(s.injected_switch_count(), 0u);
  EXPECT_EQ(s.ground_truth().size(), 8u * 60u);
}

TEST(Scenario, OneSwapInjectsTwoSwitches) {
  const Scenario s = generate(one_swap());
  EXPECT_EQ(s.injected_switch_count(), 2u);
  EXPECT_EQ(evaluate_sequence(s.ground_truth(), s.corrupted()).id_switches, 2u);
  EXPECT_EQ(s.corrupted_label(49, 1), 1);
  EXPECT_EQ(s.corrupted_label(50, 1), 2);
  EXPECT_EQ(s.corrupted_label(100, 2), 1);
  EXPECT_EQ(s.true_identity(60, 2), 1);
  EXPECT_EQ(s.true_identity(60, 3), 3);
}

TEST(Scenario, CorruptionOnlyTouchesLabels) {
  const Scenario s = generate(one_swap());
  const auto gt = s.ground_truth().records();
  for (FrameIndex f = 1; f <= 100; ++f) {
    for (const auto& c : s.corrupted().at_frame(f)) {
      const IdentityId truth = s.true_identity(f, c.id);
      const auto& g = gt[(f - 1) * 8 + static_cast<std::size_t>(truth - 1)];
      EXPECT_EQ(g.id, truth);
      EXPECT_EQ(g.box, c.box);
      if (f < 50) {
        EXPECT_EQ(c.id, truth);
      }
    }
  }
}

TEST(Scenario, DeterministicInSeed) {
  const Scenario a = generate(one_swap(9));
  const Scenario b = generate(one_swap(9));
  EXPECT_TRUE(same_records(a.ground_truth(), b.ground_truth()));
  EXPECT_TRUE(same_records(a.corrupted(), b.corrupted()));
  for (FrameIndex f : {1u, 50u, 100u}) {
    const auto &x = a.true_embedding(f, 3), &y = b.true_embedding(f, 3);
    EXPECT_TRUE(std::equal(x.values().begin(), x.values().end(), y.values().begin()));
  }
  const Scenario c = generate(one_swap(10));
  EXPECT_FALSE(same_records(a.ground_truth(), c.ground_truth()));
}

TEST(Scenario, BoxesStayInArenaAndNeverOverlap) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    ScenarioConfig cfg;
    cfg.num_frames = 200;
    cfg.num_identities = 12;
    cfg.arena_width = 700;
    cfg.arena_height = 500;
    cfg.motion.speed_px_per_frame = 15.0;
    cfg.seed = seed;
    const Scenario s = generate(cfg);
    for (FrameIndex f = 1; f <= cfg.num_frames; ++f) {
      const auto recs = s.ground_truth().at_frame(f);
      ASSERT_EQ(recs.size(), 12u);
      for (std::size_t i = 0; i < recs.size(); ++i) {
        EXPECT_LE(recs[i].box.x_right(), cfg.arena_width + 1e-9);
        EXPECT_LE(recs[i].box.y_bottom(), cfg.arena_height + 1e-9);
        for (std::size_t j = i + 1; j < recs.size(); ++j) {
          EXPECT_EQ(iou(recs[i].box, recs[j].box), 0.0);
        }
      }
    }
  }
}

TEST(Scenario, ClusterCentersHaveRequestedSeparation) {
  for (double sep : {0.3, 1.0, std::numbers::pi / 2.0}) {
    ScenarioConfig cfg;
    cfg.num_frames = 2;
    cfg.embedding_model.cluster_separation = sep;
    const Scenario s = generate(cfg);
    const auto& c = s.cluster_centers();
    ASSERT_EQ(c.size(), 8u);
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_NEAR(c[i].norm(), 1.0, 1e-12);
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        EXPECT_NEAR(cosine_sim(c[i], c[j]), std::cos(sep), 1e-12);
      }
    }
    // Noiseless embeddings are the centers themselves.
    EXPECT_NEAR(cosine_sim(s.true_embedding(2, 4), c[3]), 1.0, 1e-12);
  }
}

TEST(Scenario, RejectsInvalidConfigs) {
  auto bad = [](auto mutate) {
    ScenarioConfig cfg;
    mutate(cfg);
    return cfg;
  };
  EXPECT_THROW(generate(bad([](auto& c) { c.switch_plan = {{1, 1, 2}}; })), InputError);
  EXPECT_THROW(generate(bad([](auto& c) { c.switch_plan = {{301, 1, 2}}; })), InputError);
  EXPECT_THROW(generate(bad([](auto& c) { c.switch_plan = {{5, 2, 2}}; })), InputError);
  EXPECT_THROW(generate(bad([](auto& c) { c.switch_plan = {{5, 1, 9}}; })), InputError);
  EXPECT_THROW(generate(bad([](auto& c) { c.num_identities = 0; })), InputError);
  EXPECT_THROW(generate(bad([](auto& c) { c.embedding_model.dim = 8; })), InputError);
  EXPECT_THROW(generate(bad([](auto& c) { c.embedding_model.noise_sigma = -1; })), InputError);
  EXPECT_THROW(generate(bad([](auto& c) { c.embedding_model.cluster_separation = 2.0; })),
               InputError);
  EXPECT_THROW(generate(bad([](auto& c) { c.fps = 0; })), InputError);
  EXPECT_THROW(generate(bad([](auto& c) {
                 c.num_identities = 100;
                 c.arena_width = 500;
                 c.arena_height = 300;
               })),
               InputError);
}

TEST(Pipeline, NoiselessSwapIsCorrected) {
  const Scenario s = generate(one_swap());
  const auto run = run_pipeline_detailed(s, ReidConfig{}, 10);
  EXPECT_EQ(run.report.idsw_before, 2u);
  EXPECT_EQ(run.report.idsw_after, 0u);
  EXPECT_EQ(run.report.corrected_switch_count, 1u);
  EXPECT_EQ(run.report.false_reinit_count, 0u);
  ASSERT_EQ(run.events.size(), 1u);
  EXPECT_EQ(run.events[0].frame, 50u);
  EXPECT_EQ(run.report.mot_after.idf1, 1.0);
  EXPECT_LT(run.report.mot_before.idf1, 1.0);
  EXPECT_TRUE(same_records(run.corrected, s.ground_truth()));
}

TEST(Pipeline, SeveralSwapsAreEachCorrected) {
  ScenarioConfig cfg = one_swap();
  cfg.num_frames = 200;
  cfg.switch_plan = {{30, 1, 2}, {60, 3, 4}, {90, 1, 5}, {150, 6, 8}};
  const auto r = run_pipeline(generate(cfg), ReidConfig{}, 5);
  EXPECT_EQ(r.idsw_before, 8u);
  EXPECT_EQ(r.idsw_after, 0u);
  EXPECT_EQ(r.corrected_switch_count, 4u);
  EXPECT_EQ(r.false_reinit_count, 0u);
}

TEST(Pipeline, NoSwitchSmallNoiseHasNoFalseReinits) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    ScenarioConfig cfg;
    cfg.num_frames = 150;
    cfg.embedding_model.noise_sigma = 0.02;
    cfg.seed = seed;
    const auto r = run_pipeline(generate(cfg), ReidConfig{}, 5);
    EXPECT_EQ(r.false_reinit_count, 0u);
    EXPECT_EQ(r.corrected_switch_count, 0u);
    EXPECT_EQ(r.mot_after, r.mot_before);
  }
}

TEST(Pipeline, UnreachableThresholdDisablesCorrection) {
  const Scenario s = generate(one_swap());
  const auto r = run_pipeline(s, ReidConfig{0.65, 1.01, 0.7, 3600}, 10);
  EXPECT_EQ(r.idsw_after, r.idsw_before);
  EXPECT_EQ(r.corrected_switch_count, 0u);
  EXPECT_EQ(r.false_reinit_count, 0u);
  EXPECT_EQ(r.mot_after, r.mot_before);
}

TEST(Pipeline, Deterministic) {
  ScenarioConfig cfg = one_swap(5);
  cfg.embedding_model.noise_sigma = 0.05;
  const auto a = run_pipeline(generate(cfg), ReidConfig{}, 10);
  const auto b = run_pipeline(generate(cfg), ReidConfig{}, 10);
  EXPECT_EQ(a, b);
}

TEST(Pipeline, RejectsBadWarmup) {
  const Scenario s = generate(one_swap());
  EXPECT_THROW(run_pipeline(s, ReidConfig{}, 0), InputError);
  EXPECT_THROW(run_pipeline(s, ReidConfig{}, 101), InputError);
  EXPECT_THROW(run_pipeline(s, ReidConfig{0.9, 0.8, 0.7, 1}, 5), InputError);
}

TEST(PipelineProperty, EachDirectiveAddsAtMostTwoSwitches) {
  // Each directive exchanges two labels and adds at most two switches.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    ScenarioConfig cfg;
    cfg.num_frames = 120;
    cfg.seed = seed;
    cfg.embedding_model.noise_sigma = 0.03 + 0.01 * static_cast<double>(seed);
    cfg.embedding_model.cluster_separation = 1.0;
    cfg.switch_plan = {{40, 1, 2}, {80, 3, 4}};
    for (const ReidConfig& rc : {ReidConfig{}, ReidConfig{0.8, 0.85, 0.7, 0.0},
                                 ReidConfig{0.9, 0.92, 0.5, 1.0}}) {
      const Scenario s = generate(cfg);
      const auto run = run_pipeline_detailed(s, rc, 5);
      const auto& r = run.report;
      EXPECT_EQ(r.corrected_switch_count + r.false_reinit_count, run.events.size());
      EXPECT_LE(r.idsw_after, r.idsw_before + 2 * run.events.size());
      bool prompt = run.events.size() == cfg.switch_plan.size();
      for (std::size_t i = 0; prompt && i < run.events.size(); ++i) {
        prompt = run.events[i].frame == cfg.switch_plan[i].frame;
      }
      if (prompt && r.false_reinit_count == 0) {
        EXPECT_EQ(r.idsw_after, 0u);
      }
    }
  }
}

TEST(Sweep, SinglePointEqualsRunPipeline) {
  const ScenarioConfig cfg = one_swap();
  const auto points = sensitivity_sweep(cfg, ReidConfig{}, {{0.65}, {0.78}, {3600}}, 10);
  ASSERT_EQ(points.size(), 1u);
  EXPECT_EQ(points[0].report, run_pipeline(generate(cfg), ReidConfig{}, 10));
}

TEST(Sweep, RisingHighThresholdNeverCorrectsMore) {
  ScenarioConfig cfg = one_swap();
  cfg.num_frames = 150;
  cfg.switch_plan = {{40, 1, 2}, {90, 3, 4}};
  cfg.embedding_model.noise_sigma = 0.03;
  const auto points =
      sensitivity_sweep(cfg, ReidConfig{}, {{0.65}, {0.7, 0.9, 0.95, 1.01}, {3600}}, 10);
  ASSERT_EQ(points.size(), 4u);
  for (std::size_t i = 1; i < points.size(); ++i) {
    EXPECT_LE(points[i].report.corrected_switch_count,
              points[i - 1].report.corrected_switch_count);
  }
  EXPECT_EQ(points.front().report.corrected_switch_count, 2u);
  EXPECT_EQ(points.back().report.corrected_switch_count, 0u);
}

TEST(Sweep, NoSwitchesAcrossGridGiveNoFalseReinits) {
  ScenarioConfig cfg;
  cfg.num_frames = 100;
  cfg.embedding_model.noise_sigma = 0.02;
  const auto points = sensitivity_sweep(
      cfg, ReidConfig{}, {{0.5, 0.65}, {0.78, 0.9}, {0.0, 60.0, 3600.0}}, 5);
  ASSERT_EQ(points.size(), 12u);
  EXPECT_EQ(points[0].config.tau_low, 0.5);
  EXPECT_EQ(points[0].config.cadence_s, 0.0);
  EXPECT_EQ(points[1].config.cadence_s, 60.0);
  for (const auto& p : points) EXPECT_EQ(p.report.false_reinit_count, 0u);
}

TEST(Sweep, ParallelMatchesSerial) {
  ScenarioConfig cfg = one_swap();
  cfg.embedding_model.noise_sigma = 0.05;
  const SweepGrid grid{{0.6, 0.7}, {0.75, 0.85}, {0.0, 3600.0}};
  const auto a = sensitivity_sweep(cfg, ReidConfig{}, grid, 5, true);
  const auto b = sensitivity_sweep(cfg, ReidConfig{}, grid, 5, false);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].report, b[i].report);
}

TEST(Sweep, RejectsBadGrids) {
  const ScenarioConfig cfg = one_swap();
  EXPECT_THROW(sensitivity_sweep(cfg, ReidConfig{}, {{}, {0.78}, {3600}}, 5), InputError);
  EXPECT_THROW(sensitivity_sweep(cfg, ReidConfig{}, {{0.8}, {0.78}, {3600}}, 5), InputError);
}

}  // namespace
}  // namespace herdtrack
