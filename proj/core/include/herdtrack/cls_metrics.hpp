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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace herdtrack {

/// K x K counts; rows are the true class, columns the predicted class.
class ConfusionMatrix {
 public:
  ConfusionMatrix(std::vector<std::string> class_names,
                  std::vector<std::vector<std::uint64_t>> counts);

  std::size_t num_classes() const { return names_.size(); }
  const std::vector<std::string>& class_names() const { return names_; }
  std::uint64_t count(std::size_t truth, std::size_t predicted) const {
    return counts_[truth * names_.size() + predicted];
  }
  std::uint64_t support(std::size_t truth) const;
  std::uint64_t predicted_total(std::size_t predicted) const;
  std::uint64_t total() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::uint64_t> counts_;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
  // Set when a denominator was zero and the zero convention was applied.
  bool zero_division = false;
};

struct AveragedScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ClassReport {
  std::vector<std::string> class_names;
  std::vector<ClassScores> per_class;
  AveragedScores macro;
  AveragedScores weighted;
  double accuracy = 0.0;
  std::uint64_t total = 0;
};

/// Throws EmptyDataError when the matrix holds no samples.
ClassReport report(const ConfusionMatrix& cm);

/// F1 = 2PR / (P + R), 0 when P + R = 0.
double f1_score(double precision, double recall);

/// Unweighted mean of per-class values.
double macro_mean(std::span<const double> values);
/// Support-weighted mean. Throws InputError on length mismatch or zero
/// total support.
double weighted_mean(std::span<const double> values,
                     std::span<const std::uint64_t> supports);

struct Confusion {
  std::string true_class;
  std::string predicted_class;
  std::uint64_t count = 0;
  double fraction_of_true_class = 0.0;
};

/// Up to k largest off-diagonal cells, descending by count; ties follow
/// class order of (true, predicted). Zero cells are never listed.
std::vector<Confusion> top_confusions(const ConfusionMatrix& cm, std::size_t k);

// Confusion CSV: first row `true\pred,<label...>`, then `<label>,<counts...>`
// with row labels in the same order as the header.
ConfusionMatrix read_confusion_csv(std::istream& in);
ConfusionMatrix read_confusion_csv(const std::filesystem::path& path);
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm);

}  // namespace herdtrack
