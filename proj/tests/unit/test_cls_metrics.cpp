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
#include <numeric>
#include <sstream>

#include "herdtrack/cls_metrics.hpp"
#include "herdtrack/errors.hpp"
#include "herdtrack/random.hpp"
#include "test_util.hpp"

namespace herdtrack {
namespace {

const std::vector<double> kTableF1{0.9436, 0.9487, 0.9909, 0.9495, 0.8727,
                                   0.9865, 0.7692, 0.9000, 0.8889};
const std::vector<std::uint64_t> kSupports{474, 477, 819, 95, 49, 2280, 14, 19, 65};

ConfusionMatrix behaviour_matrix() {
  return read_confusion_csv(testing::fixture("behaviour_confusion.csv"));
}

TEST(ClsMetrics, DiagonalMatrixIsPerfect) {
  const ConfusionMatrix cm({"a", "b", "c"}, {{5, 0, 0}, {0, 2, 0}, {0, 0, 9}});
  const auto r = report(cm);
  for (const auto& s : r.per_class) {
    EXPECT_EQ(s.precision, 1.0);
    EXPECT_EQ(s.recall, 1.0);
    EXPECT_EQ(s.f1, 1.0);
  }
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_TRUE(top_confusions(cm, 5).empty());
}

TEST(ClsMetrics, PublishedAveragesFromPerClassF1) {
  EXPECT_NEAR(macro_mean(kTableF1), 0.9167, 5e-5);
  EXPECT_NEAR(weighted_mean(kTableF1, kSupports), 0.9737, 5e-5);
  EXPECT_THROW(weighted_mean(kTableF1, std::vector<std::uint64_t>{1, 2}), InputError);
}

TEST(ClsMetrics, BehaviourMatrixReproducesPerClassTable) {
  const auto cm = behaviour_matrix();
  ASSERT_EQ(cm.num_classes(), 9u);
  EXPECT_EQ(cm.total(), 4292u);
  const auto r = report(cm);
  const std::vector<double> precision{0.9907, 0.9112, 0.9820, 0.9126, 0.7869,
                                      0.9969, 0.8333, 0.8571, 0.8101};
  const std::vector<double> recall{0.9008, 0.9895, 1.0000, 0.9895, 0.9796,
                                   0.9763, 0.7143, 0.9474, 0.9846};
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_EQ(r.per_class[i].support, kSupports[i]);
    EXPECT_NEAR(r.per_class[i].precision, precision[i], 5e-5) << cm.class_names()[i];
    EXPECT_NEAR(r.per_class[i].recall, recall[i], 5e-5) << cm.class_names()[i];
    EXPECT_NEAR(r.per_class[i].f1, kTableF1[i], 5e-5) << cm.class_names()[i];
  }
  EXPECT_NEAR(r.macro.f1, 0.9167, 5e-5);
  EXPECT_NEAR(r.macro.precision, 0.8979, 5e-5);
  EXPECT_NEAR(r.macro.recall, 0.9424, 5e-5);
  EXPECT_NEAR(r.weighted.f1, 0.9737, 5e-5);
  EXPECT_NEAR(r.weighted.precision, 0.9756, 5e-5);
  EXPECT_NEAR(r.weighted.recall, 0.9734, 5e-5);
}

TEST(ClsMetrics, TopConfusionsMatchPublishedFailureModes) {
  const auto top = top_confusions(behaviour_matrix(), 5);
  ASSERT_EQ(top.size(), 5u);
  const std::vector<std::pair<std::string, std::string>> expected{{"sleep", "lying"},
                                                                  {"standing", "eat"},
                                                                  {"standing", "nose-to-nose"},
                                                                  {"sleep", "sitting"},
                                                                  {"standing", "drink"}};
  const std::vector<std::uint64_t> counts{39, 15, 11, 11, 8};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(top[i].true_class, expected[i].first);
    EXPECT_EQ(top[i].predicted_class, expected[i].second);
    EXPECT_EQ(top[i].count, counts[i]);
  }
  EXPECT_NEAR(top[0].fraction_of_true_class, 39.0 / 2280.0, 1e-15);
  EXPECT_NEAR(top[1].fraction_of_true_class, 0.032, 5e-4);
}

TEST(ClsMetrics, TieBreakFollowsLabelOrder) {
  const ConfusionMatrix cm({"a", "b", "c"}, {{1, 0, 3}, {3, 1, 0}, {0, 3, 1}});
  const auto top = top_confusions(cm, 10);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0].true_class, "a");
  EXPECT_EQ(top[1].true_class, "b");
  EXPECT_EQ(top[2].true_class, "c");
  EXPECT_THROW(top_confusions(cm, 0), InputError);
}

TEST(ClsMetrics, ZeroDivisionIsFlagged) {
  const ConfusionMatrix cm({"a", "b", "c"}, {{4, 0, 0}, {2, 0, 0}, {0, 0, 0}});
  const auto r = report(cm);
  EXPECT_TRUE(r.per_class[1].zero_division);
  EXPECT_EQ(r.per_class[1].precision, 0.0);
  EXPECT_EQ(r.per_class[1].f1, 0.0);
  EXPECT_TRUE(r.per_class[2].zero_division);
  EXPECT_EQ(r.per_class[2].recall, 0.0);
  EXPECT_FALSE(r.per_class[0].zero_division);
}

TEST(ClsMetrics, RejectsMalformedMatrices) {
  EXPECT_THROW(ConfusionMatrix({"a", "b"}, {{1, 2}}), InputError);
  EXPECT_THROW(ConfusionMatrix({"a", "a"}, {{1, 2}, {3, 4}}), InputError);
  EXPECT_THROW(report(ConfusionMatrix({"a", "b"}, {{0, 0}, {0, 0}})), EmptyDataError);
}

TEST(ClsMetrics, F1Formula) {
  EXPECT_DOUBLE_EQ(f1_score(0.5, 1.0), 2.0 / 3.0);
  EXPECT_EQ(f1_score(0.0, 0.0), 0.0);
}

TEST(ConfusionCsv, RoundTripAndErrors) {
  const auto cm = behaviour_matrix();
  std::stringstream ss;
  write_confusion_csv(ss, cm);
  const auto back = read_confusion_csv(ss);
  EXPECT_EQ(back.class_names(), cm.class_names());
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) EXPECT_EQ(back.count(i, j), cm.count(i, j));
  }
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_confusion_csv(in);
  };
  EXPECT_THROW(parse("x,a,b\na,1,2\nb,3,4\n"), InputError);
  EXPECT_THROW(parse("true\\pred,a,b\nb,1,2\na,3,4\n"), InputError);
  EXPECT_THROW(parse("true\\pred,a,b\na,1,-2\nb,3,4\n"), InputError);
  EXPECT_THROW(parse("true\\pred,a,b\na,1\nb,3,4\n"), InputError);
  EXPECT_NO_THROW(parse("true\\pred,a,b\na,1,2\nb,3,4\n"));
}

ConfusionMatrix random_matrix(CounterRng& rng, std::size_t k) {
  std::vector<std::string> names;
  std::vector<std::vector<std::uint64_t>> counts(k, std::vector<std::uint64_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    names.push_back("c" + std::to_string(i));
    for (std::size_t j = 0; j < k; ++j) counts[i][j] = rng.below(i == j ? 200 : 20);
    counts[i][i] += 1;
  }
  return ConfusionMatrix(names, counts);
}

TEST(ClsProperty, PermutationInvarianceAndBounds) {
  CounterRng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.below(8);
    const auto cm = random_matrix(rng, k);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = k; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<std::string> names(k);
    std::vector<std::vector<std::uint64_t>> counts(k, std::vector<std::uint64_t>(k));
    for (std::size_t i = 0; i < k; ++i) {
      names[i] = cm.class_names()[perm[i]];
      for (std::size_t j = 0; j < k; ++j) counts[i][j] = cm.count(perm[i], perm[j]);
    }
    const auto a = report(cm);
    const auto b = report(ConfusionMatrix(names, counts));
    EXPECT_NEAR(a.macro.f1, b.macro.f1, 1e-12);
    EXPECT_NEAR(a.weighted.f1, b.weighted.f1, 1e-12);
    EXPECT_NEAR(a.accuracy, a.weighted.recall, 1e-12);
    for (const auto& s : a.per_class) {
      EXPECT_GE(s.f1, std::min(s.precision, s.recall) - 1e-15);
      EXPECT_LE(s.f1, std::max(s.precision, s.recall) + 1e-15);
    }
  }
}

}  // namespace
}  // namespace herdtrack
