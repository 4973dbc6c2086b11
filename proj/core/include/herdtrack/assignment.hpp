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

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>
#include <vector>

namespace herdtrack {

/// Marks a pairing that must never be selected.
inline constexpr double kForbidden = std::numeric_limits<double>::infinity();

/// Dense row-major cost matrix. Entries are finite or kForbidden.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t r, std::size_t c) const {
    return costs_[r * cols_ + c];
  }
  /// Throws InputError for NaN or -inf.
  void set(std::size_t r, std::size_t c, double value);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> costs_;
};

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (row, col), sorted by row
  double total_cost = 0.0;
};

/// Minimum-cost assignment (Hungarian method with row potentials,
/// O(n^3) for n = max(rows, cols)).
///
/// Among all pairings that use only finite cells, returns one of maximum
/// cardinality and, among those, minimum total cost. Rows or columns with
/// no usable cell stay unmatched. When several optima exist the choice is
/// unspecified.
Assignment solve_min_cost(const CostMatrix& m);

/// Exhaustive reference for solve_min_cost. Same contract; enumerates
/// every partial injection. Requires max(rows, cols) <= 8 and throws
/// std::logic_error otherwise.
Assignment brute_force_min_cost(const CostMatrix& m);

inline constexpr std::size_t kBruteForceMaxDim = 8;

}  // namespace herdtrack
