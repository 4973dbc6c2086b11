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

#include "herdtrack/cls_metrics.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "herdtrack/errors.hpp"

namespace herdtrack {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> class_names,
                                 std::vector<std::vector<std::uint64_t>> counts)
    : names_(std::move(class_names)) {
  const std::size_t k = names_.size();
  if (k == 0) throw InputError("confusion matrix needs at least one class");
  if (std::set<std::string>(names_.begin(), names_.end()).size() != k) {
    throw InputError("confusion matrix class names must be unique");
  }
  if (counts.size() != k) {
    throw InputError("confusion matrix must have one row per class");
  }
  counts_.reserve(k * k);
  for (const auto& row : counts) {
    if (row.size() != k) {
      throw InputError("confusion matrix must have one column per class");
    }
    counts_.insert(counts_.end(), row.begin(), row.end());
  }
}

std::uint64_t ConfusionMatrix::support(std::size_t truth) const {
  std::uint64_t s = 0;
  for (std::size_t p = 0; p < num_classes(); ++p) s += count(truth, p);
  return s;
}

std::uint64_t ConfusionMatrix::predicted_total(std::size_t predicted) const {
  std::uint64_t s = 0;
  for (std::size_t t = 0; t < num_classes(); ++t) s += count(t, predicted);
  return s;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t s = 0;
  for (auto c : counts_) s += c;
  return s;
}

double f1_score(double precision, double recall) {
  const double den = precision + recall;
  return den > 0.0 ? 2.0 * precision * recall / den : 0.0;
}

double macro_mean(std::span<const double> values) {
  if (values.empty()) throw InputError("macro mean of an empty list");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double weighted_mean(std::span<const double> values,
                     std::span<const std::uint64_t> supports) {
  if (values.size() != supports.size()) {
    throw InputError("weighted mean: values and supports differ in length");
  }
  double num = 0.0;
  std::uint64_t den = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    num += values[i] * static_cast<double>(supports[i]);
    den += supports[i];
  }
  if (den == 0) throw InputError("weighted mean: total support is zero");
  return num / static_cast<double>(den);
}

ClassReport report(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw EmptyDataError("confusion matrix holds no samples");
  const std::size_t k = cm.num_classes();

  ClassReport r;
  r.class_names = cm.class_names();
  r.total = total;
  std::vector<double> p(k), rc(k), f(k);
  std::vector<std::uint64_t> sup(k);
  std::uint64_t trace = 0;
  for (std::size_t c = 0; c < k; ++c) {
    ClassScores s;
    const auto tp = cm.count(c, c);
    const auto col = cm.predicted_total(c);
    s.support = cm.support(c);
    trace += tp;
    if (col > 0) {
      s.precision = static_cast<double>(tp) / static_cast<double>(col);
    } else {
      s.zero_division = true;
    }
    if (s.support > 0) {
      s.recall = static_cast<double>(tp) / static_cast<double>(s.support);
    } else {
      s.zero_division = true;
    }
    if (s.precision + s.recall == 0.0) s.zero_division = true;
    s.f1 = f1_score(s.precision, s.recall);
    p[c] = s.precision;
    rc[c] = s.recall;
    f[c] = s.f1;
    sup[c] = s.support;
    r.per_class.push_back(s);
  }
  r.macro = {macro_mean(p), macro_mean(rc), macro_mean(f)};
  r.weighted = {weighted_mean(p, sup), weighted_mean(rc, sup),
                weighted_mean(f, sup)};
  r.accuracy = static_cast<double>(trace) / static_cast<double>(total);
  return r;
}

std::vector<Confusion> top_confusions(const ConfusionMatrix& cm, std::size_t k) {
  if (k == 0) throw InputError("top_confusions: k must be >= 1");
  struct Cell {
    std::size_t t, p;
    std::uint64_t n;
  };
  std::vector<Cell> cells;
  for (std::size_t t = 0; t < cm.num_classes(); ++t) {
    for (std::size_t p = 0; p < cm.num_classes(); ++p) {
      if (t != p && cm.count(t, p) > 0) cells.push_back({t, p, cm.count(t, p)});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.n != b.n) return a.n > b.n;
    if (a.t != b.t) return a.t < b.t;
    return a.p < b.p;
  });
  if (cells.size() > k) cells.resize(k);
  std::vector<Confusion> out;
  for (const auto& c : cells) {
    out.push_back({cm.class_names()[c.t], cm.class_names()[c.p], c.n,
                   static_cast<double>(c.n) / static_cast<double>(cm.support(c.t))});
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

constexpr std::string_view kCorner = "true\\pred";

}  // namespace

ConfusionMatrix read_confusion_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw InputError("confusion csv: missing header");
  auto header = split_row(line);
  if (header.size() < 2 || header.front() != kCorner) {
    throw InputError("confusion csv line 1: expected header 'true\\pred,<labels>'");
  }
  std::vector<std::string> names(header.begin() + 1, header.end());
  std::vector<std::vector<std::uint64_t>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_row(line);
    const std::string where = "confusion csv line " + std::to_string(line_no);
    if (fields.size() != names.size() + 1) {
      throw InputError(where + ": expected " + std::to_string(names.size() + 1) +
                       " fields");
    }
    if (rows.size() >= names.size() || fields.front() != names[rows.size()]) {
      throw InputError(where + ": row label must follow header order");
    }
    std::vector<std::uint64_t> row;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      std::uint64_t v = 0;
      const auto& f = fields[i];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
        throw InputError(where + ": count '" + f + "' is not a non-negative integer");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != names.size()) {
    throw InputError("confusion csv: expected " + std::to_string(names.size()) +
                     " rows, found " + std::to_string(rows.size()));
  }
  return ConfusionMatrix(std::move(names), std::move(rows));
}

ConfusionMatrix read_confusion_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open confusion file " + path.string());
  return read_confusion_csv(in);
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm) {
  out << kCorner;
  for (const auto& n : cm.class_names()) out << ',' << n;
  out << '\n';
  for (std::size_t t = 0; t < cm.num_classes(); ++t) {
    out << cm.class_names()[t];
    for (std::size_t p = 0; p < cm.num_classes(); ++p) out << ',' << cm.count(t, p);
    out << '\n';
  }
}

}  // namespace herdtrack
