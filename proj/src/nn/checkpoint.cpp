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

#include "kchar/nn/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "kchar/encodings.hpp"

namespace kchar::nn {

namespace {

constexpr const char* kFormat = "kchar-checkpoint";
constexpr int kVersion = 1;

nlohmann::json config_to_json(const ModelConfig& c) {
  return {{"arch", architecture_name(c.arch)},
          {"input_dim", c.input_dim},
          {"seq_len", c.seq_len},
          {"num_classes", c.num_classes},
          {"hidden", c.hidden},
          {"fc_width", c.fc_width},
          {"attention_dim", c.attention_dim},
          {"aux_dim", c.aux_dim},
          {"sa_fc_width", c.sa_fc_width},
          {"dropout", c.dropout}};
}

ModelConfig config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.arch = parse_architecture(j.at("arch").get<std::string>());
  c.input_dim = j.at("input_dim").get<int>();
  c.seq_len = j.at("seq_len").get<int>();
  c.num_classes = j.at("num_classes").get<int>();
  c.hidden = j.at("hidden").get<int>();
  c.fc_width = j.at("fc_width").get<int>();
  c.attention_dim = j.at("attention_dim").get<int>();
  c.aux_dim = j.at("aux_dim").get<int>();
  c.sa_fc_width = j.at("sa_fc_width").get<int>();
  c.dropout = j.at("dropout").get<double>();
  return c;
}

}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  nlohmann::json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["config"] = config_to_json(ckpt.config);
  j["seed"] = ckpt.seed;
  auto& segs = j["segments"] = nlohmann::json::array();
  for (std::size_t s = 0; s < ckpt.params.segments().size(); ++s) {
    const auto& seg = ckpt.params.segment(s);
    const auto first = ckpt.params.values().begin() + static_cast<std::ptrdiff_t>(seg.offset);
    segs.push_back({{"name", seg.name},
                    {"shape", {seg.rows, seg.cols}},
                    {"values", std::vector<double>(first, first + static_cast<std::ptrdiff_t>(seg.size()))}});
  }
  out << j.dump() << '\n';
}

Checkpoint read_checkpoint(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("format").get<std::string>() != kFormat)
      throw LoadError("not a kchar checkpoint", 0);
    if (j.at("version").get<int>() != kVersion)
      throw LoadError("unsupported checkpoint version", 0);
    Checkpoint ckpt;
    ckpt.config = config_from_json(j.at("config"));
    ckpt.seed = j.at("seed").get<unsigned long long>();
    ckpt.params = ModelParams::layout(ckpt.config);
    const auto& segs = j.at("segments");
    if (segs.size() != ckpt.params.segments().size())
      throw LoadError("checkpoint segment count does not match its config", 0);
    for (std::size_t s = 0; s < segs.size(); ++s) {
      const auto& seg = ckpt.params.segment(s);
      const auto& js = segs[s];
      const auto shape = js.at("shape").get<std::vector<int>>();
      if (js.at("name").get<std::string>() != seg.name || shape.size() != 2 ||
          shape[0] != seg.rows || shape[1] != seg.cols)
        throw LoadError("checkpoint segment " + std::to_string(s) + " does not match layout", 0);
      const auto values = js.at("values").get<std::vector<double>>();
      if (values.size() != seg.size())
        throw LoadError("checkpoint segment " + seg.name + " has wrong value count", 0);
      std::copy(values.begin(), values.end(),
                ckpt.params.values().begin() + static_cast<std::ptrdiff_t>(seg.offset));
    }
    return ckpt;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("malformed checkpoint: ") + e.what(), 0);
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write checkpoint " + path.string(), 0);
  write_checkpoint(out, ckpt);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open checkpoint " + path.string(), 0);
  return read_checkpoint(in);
}

}  // namespace kchar::nn
