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

#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace kchar {

enum class Task { NSMC, I3K4 };

inline constexpr int kNsmcClasses = 2;
inline constexpr int k3i4kClasses = 7;

int num_classes(Task task) noexcept;
std::string task_name(Task task);
Task parse_task(const std::string& name);

struct LabeledExample {
  std::string text;
  int label = 0;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

using Examples = std::vector<LabeledExample>;

struct Corpus {
  Examples train;
  Examples test;
};

/// `id<TAB>document<TAB>label` with a header row; labels 0/1.
Examples read_nsmc(std::istream& in);
Corpus load_nsmc(const std::filesystem::path& train_file, const std::filesystem::path& test_file);
void write_nsmc(std::ostream& out, const Examples& examples);

/// `label<TAB>text`, no header; labels 0..6.
Examples read_3i4k(std::istream& in);
Corpus load_3i4k(const std::filesystem::path& train_file, const std::filesystem::path& test_file);
void write_3i4k(std::ostream& out, const Examples& examples);

Corpus load_corpus(Task task, const std::filesystem::path& train_file,
                   const std::filesystem::path& test_file);

struct SplitSpec {
  double validation_fraction = 0.1;
  unsigned long long seed = 0;
};

struct Split {
  Examples train;
  Examples validation;
};

/// Seeded shuffle, then floor(fraction * N) examples go to validation.
Split split_validation(const Examples& data, const SplitSpec& spec);

/// N / (K * count_c). Throws std::invalid_argument if a class is absent.
std::vector<double> class_weights(const Examples& train, int num_classes);

std::vector<int> class_counts(const Examples& data, int num_classes);

}  // namespace kchar
