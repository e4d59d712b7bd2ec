// Copyright 2026 The kchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kchar/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string_view>

#include "kchar/encodings.hpp"

namespace kchar {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  for (;;) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

int parse_label(std::string_view field, int num_classes, std::size_t lineno) {
  while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  int v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
    throw LoadError("label '" + std::string(field) + "' is not an integer", lineno);
  if (v < 0 || v >= num_classes)
    throw LoadError("label " + std::to_string(v) + " outside [0, " +
                        std::to_string(num_classes) + ")",
                    lineno);
  return v;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open corpus file " + path.string(), 0);
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

int num_classes(Task task) noexcept { return task == Task::NSMC ? kNsmcClasses : k3i4kClasses; }

std::string task_name(Task task) { return task == Task::NSMC ? "nsmc" : "3i4k"; }

Task parse_task(const std::string& name) {
  if (name == "nsmc" || name == "NSMC") return Task::NSMC;
  if (name == "3i4k" || name == "3i4K") return Task::I3K4;
  throw std::invalid_argument("unknown task '" + name + "' (expected nsmc or 3i4k)");
}

Examples read_nsmc(std::istream& in) {
  Examples out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (lineno == 1) continue;  // id / document / label
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 3)
      throw LoadError("expected 3 tab-separated columns, found " + std::to_string(cols.size()),
                      lineno);
    out.push_back({std::string(cols[1]), parse_label(cols[2], kNsmcClasses, lineno)});
  }
  return out;
}

Examples read_3i4k(std::istream& in) {
  Examples out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 2)
      throw LoadError("expected 2 tab-separated columns, found " + std::to_string(cols.size()),
                      lineno);
    out.push_back({std::string(cols[1]), parse_label(cols[0], k3i4kClasses, lineno)});
  }
  return out;
}

void write_nsmc(std::ostream& out, const Examples& examples) {
  out << "id\tdocument\tlabel\n";
  for (std::size_t i = 0; i < examples.size(); ++i)
    out << i << '\t' << examples[i].text << '\t' << examples[i].label << '\n';
}

void write_3i4k(std::ostream& out, const Examples& examples) {
  for (const auto& e : examples) out << e.label << '\t' << e.text << '\n';
}

Corpus load_nsmc(const std::filesystem::path& train_file, const std::filesystem::path& test_file) {
  auto train = open_or_throw(train_file);
  auto test = open_or_throw(test_file);
  return {read_nsmc(train), read_nsmc(test)};
}

Corpus load_3i4k(const std::filesystem::path& train_file, const std::filesystem::path& test_file) {
  auto train = open_or_throw(train_file);
  auto test = open_or_throw(test_file);
  return {read_3i4k(train), read_3i4k(test)};
}

Corpus load_corpus(Task task, const std::filesystem::path& train_file,
                   const std::filesystem::path& test_file) {
  return task == Task::NSMC ? load_nsmc(train_file, test_file) : load_3i4k(train_file, test_file);
}

Split split_validation(const Examples& data, const SplitSpec& spec) {
  if (!(spec.validation_fraction >= 0.0 && spec.validation_fraction < 1.0))
    throw std::invalid_argument("validation fraction must lie in [0, 1)");
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(spec.seed);
  std::shuffle(order.begin(), order.end(), rng);

  // The epsilon absorbs binary representation error (0.1 * 150000).
  const auto n_val = static_cast<std::size_t>(
      std::floor(spec.validation_fraction * static_cast<double>(data.size()) + 1e-9));
  Split split;
  split.validation.reserve(n_val);
  split.train.reserve(data.size() - n_val);
  for (std::size_t i = 0; i < order.size(); ++i)
    (i < n_val ? split.validation : split.train).push_back(data[order[i]]);
  return split;
}

std::vector<int> class_counts(const Examples& data, int num_classes) {
  std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
  for (const auto& e : data) {
    if (e.label < 0 || e.label >= num_classes)
      throw std::invalid_argument("label " + std::to_string(e.label) + " out of range");
    ++counts[static_cast<std::size_t>(e.label)];
  }
  return counts;
}

std::vector<double> class_weights(const Examples& train, int num_classes) {
  const auto counts = class_counts(train, num_classes);
  std::vector<double> w(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0)
      throw std::invalid_argument("class " + std::to_string(c) + " has no training examples");
    w[c] = static_cast<double>(train.size()) / (num_classes * static_cast<double>(counts[c]));
  }
  return w;
}

}  // namespace kchar
