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

#include "herdtrack/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "herdtrack/errors.hpp"

namespace herdtrack {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), costs_(rows * cols, fill) {
  if (std::isnan(fill) || fill == -kForbidden) {
    throw InputError("cost matrix fill value must be finite or +inf");
  }
}

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  costs_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("ragged cost matrix literal");
    for (double v : row) {
      if (std::isnan(v) || v == -kForbidden) {
        throw InputError("cost entries must be finite or +inf");
      }
      costs_.push_back(v);
    }
  }
}

void CostMatrix::set(std::size_t r, std::size_t c, double value) {
  if (std::isnan(value) || value == -kForbidden) {
    throw InputError("cost entries must be finite or +inf");
  }
  costs_.at(r * cols_ + c) = value;
}

namespace {

bool usable(double v) { return v != kForbidden; }

}  // namespace

Assignment solve_min_cost(const CostMatrix& m) {
  Assignment result;
  if (m.empty()) return result;

  double lo = 0.0;
  double hi = 0.0;
  bool any_finite = false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      if (!usable(v)) continue;
      if (!any_finite) {
        lo = hi = v;
        any_finite = true;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!any_finite) return result;

  // Square padding. Forbidden cells get a penalty larger than any possible
  // difference in finite totals, so fewer forbidden picks always wins and
  // the optimum is maximum-cardinality over finite cells first.
  const std::size_t n = std::max(m.rows(), m.cols());
  const double penalty =
      static_cast<double>(n) * (std::abs(lo) + std::abs(hi)) + 1.0;
  auto padded = [&](std::size_t r, std::size_t c) -> double {
    if (r >= m.rows() || c >= m.cols()) return 0.0;
    const double v = m(r, c);
    return usable(v) ? v : penalty;
  };

  // Shortest augmenting path with potentials; 1-based with a virtual
  // column 0 holding the row being inserted.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> col_owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    col_owner[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t row0 = col_owner[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double cur = padded(row0 - 1, c - 1) - u[row0] - v[c];
        if (cur < minv[c]) {
          minv[c] = cur;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[col_owner[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (col_owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      col_owner[col0] = col_owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  for (std::size_t c = 1; c <= n; ++c) {
    const std::size_t r = col_owner[c] - 1;
    const std::size_t col = c - 1;
    if (r >= m.rows() || col >= m.cols()) continue;
    if (!usable(m(r, col))) continue;
    result.pairs.emplace_back(r, col);
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  for (const auto& [r, c] : result.pairs) result.total_cost += m(r, c);
  return result;
}

namespace {

struct BruteForceSearch {
  const CostMatrix& m;
  std::vector<char> col_used;
  std::vector<std::pair<std::size_t, std::size_t>> current;
  double current_cost = 0.0;
  Assignment best;
  bool have_best = false;

  void visit(std::size_t row) {
    if (row == m.rows()) {
      const bool better =
          !have_best || current.size() > best.pairs.size() ||
          (current.size() == best.pairs.size() &&
           current_cost < best.total_cost);
      if (better) {
        best.pairs = current;
        best.total_cost = current_cost;
        have_best = true;
      }
      return;
    }
    visit(row + 1);  // leave this row unmatched
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (col_used[c] || !usable(m(row, c))) continue;
      col_used[c] = 1;
      current.emplace_back(row, c);
      current_cost += m(row, c);
      visit(row + 1);
      current_cost -= m(row, c);
      current.pop_back();
      col_used[c] = 0;
    }
  }
};

}  // namespace

Assignment brute_force_min_cost(const CostMatrix& m) {
  if (std::max(m.rows(), m.cols()) > kBruteForceMaxDim) {
    throw std::logic_error("brute_force_min_cost: dimension " +
                           std::to_string(std::max(m.rows(), m.cols())) +
                           " exceeds the enumeration limit");
  }
  if (m.empty()) return {};
  BruteForceSearch search{m, std::vector<char>(m.cols(), 0), {}, 0.0, {}, false};
  search.visit(0);
  return search.best;
}

}  // namespace herdtrack
