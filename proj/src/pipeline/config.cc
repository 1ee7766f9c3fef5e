// Copyright 2026 The Disambig Authors
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

#include "disambig/pipeline/config.h"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <functional>

#include "disambig/base/csv.h"
#include "disambig/base/error.h"

namespace disambig::pipeline {
namespace {

std::string Trim(std::string_view s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kUsage, "bad value '" + std::string(text) +
                                       "' for " + std::string(key));
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(ErrorCode::kUsage,
              "bad value '" + std::string(text) + "' for " + std::string(key));
}

std::vector<double> ParseList(std::string_view key, std::string_view text) {
  std::vector<double> out;
  if (Trim(text).empty()) return out;
  for (const std::string& part : SplitString(text, ',')) {
    out.push_back(ParseNumber<double>(key, Trim(part)));
  }
  return out;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string FormatList(const std::vector<double>& values) {
  std::vector<std::string> parts;
  for (double v : values) parts.push_back(FormatDouble(v));
  return JoinStrings(parts, ",");
}

struct Field {
  const char* key;
  std::function<void(PipelineConfig*, std::string_view)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

#define DISAMBIG_STRING_FIELD(key, member)                                   \
  Field {                                                                    \
    key, [](PipelineConfig* c, std::string_view v) { c->member = v; },       \
        [](const PipelineConfig& c) { return c.member; }                     \
  }
#define DISAMBIG_NUMBER_FIELD(key, member)                                   \
  Field {                                                                    \
    key,                                                                     \
        [](PipelineConfig* c, std::string_view v) {                          \
          c->member = ParseNumber<decltype(c->member)>(key, v);              \
        },                                                                   \
        [](const PipelineConfig& c) {                                        \
          if constexpr (std::is_floating_point_v<decltype(c.member)>) {      \
            return FormatDouble(c.member);                                   \
          } else {                                                           \
            return std::to_string(c.member);                                 \
          }                                                                  \
        }                                                                    \
  }

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      DISAMBIG_STRING_FIELD("input", input),
      DISAMBIG_STRING_FIELD("output_dir", output_dir),
      DISAMBIG_NUMBER_FIELD("synth.seed", synth_seed),
      DISAMBIG_NUMBER_FIELD("synth.entities", synth.n_entities),
      DISAMBIG_NUMBER_FIELD("synth.min_records", synth.min_records_per_entity),
      DISAMBIG_NUMBER_FIELD("synth.max_records", synth.max_records_per_entity),
      DISAMBIG_NUMBER_FIELD("synth.typo_rate", synth.typo_rate),
      DISAMBIG_NUMBER_FIELD("synth.middle_initial_rate",
                            synth.middle_initial_rate),
      DISAMBIG_NUMBER_FIELD("synth.coinventor_reorder_rate",
                            synth.coinventor_reorder_rate),
      DISAMBIG_NUMBER_FIELD("synth.assignee_suffix_rate",
                            synth.assignee_suffix_rate),
      DISAMBIG_NUMBER_FIELD("synth.ipc_variation_rate",
                            synth.ipc_variation_rate),
      DISAMBIG_NUMBER_FIELD("synth.last_name_collision_rate",
                            synth.last_name_collision_rate),
      DISAMBIG_NUMBER_FIELD("synth.full_name_collision_rate",
                            synth.full_name_collision_rate),
      DISAMBIG_NUMBER_FIELD("synth.protected_prefix", synth.protected_prefix),
      DISAMBIG_STRING_FIELD("layout", layout),
      DISAMBIG_STRING_FIELD("layout_file", layout_file),
      DISAMBIG_STRING_FIELD("architecture", architecture),
      DISAMBIG_NUMBER_FIELD("max_block_size", max_block_size),
      DISAMBIG_NUMBER_FIELD("split.train_fraction", split.train_fraction),
      DISAMBIG_NUMBER_FIELD("split.validation_fraction",
                            split.validation_fraction_of_train),
      DISAMBIG_NUMBER_FIELD("split.seed", split.seed),
      DISAMBIG_NUMBER_FIELD("train.batch_size", train.batch_size),
      DISAMBIG_NUMBER_FIELD("train.epochs", train.epochs),
      DISAMBIG_NUMBER_FIELD("train.lr_start", train.lr_start),
      DISAMBIG_NUMBER_FIELD("train.lr_end", train.lr_end),
      DISAMBIG_NUMBER_FIELD("train.seed", train.seed),
      DISAMBIG_NUMBER_FIELD("train.momentum", train.momentum),
      DISAMBIG_NUMBER_FIELD("train.weight_decay", train.weight_decay),
      DISAMBIG_NUMBER_FIELD("p_bar", cluster.p_bar),
      DISAMBIG_NUMBER_FIELD("l_bar", cluster.l_bar),
      Field{"eval.all_pairs",
            [](PipelineConfig* c, std::string_view v) {
              c->eval_all_pairs = ParseBool("eval.all_pairs", v);
            },
            [](const PipelineConfig& c) {
              return std::string(c.eval_all_pairs ? "true" : "false");
            }},
      Field{"sweep.p_bar",
            [](PipelineConfig* c, std::string_view v) {
              c->sweep_p_bar = ParseList("sweep.p_bar", v);
            },
            [](const PipelineConfig& c) { return FormatList(c.sweep_p_bar); }},
      Field{"sweep.l_bar",
            [](PipelineConfig* c, std::string_view v) {
              c->sweep_l_bar = ParseList("sweep.l_bar", v);
            },
            [](const PipelineConfig& c) { return FormatList(c.sweep_l_bar); }},
      DISAMBIG_NUMBER_FIELD("png_samples", png_samples),
      DISAMBIG_NUMBER_FIELD("workers", workers),
  };
  return fields;
}

#undef DISAMBIG_STRING_FIELD
#undef DISAMBIG_NUMBER_FIELD

}  // namespace

std::string PipelineConfig::CorpusPath() const {
  return input.empty() ? ArtifactPath("corpus.jsonl") : input;
}

std::string PipelineConfig::ArtifactPath(std::string_view name) const {
  return (std::filesystem::path(output_dir) / name).string();
}

void PipelineConfig::Validate() const {
  try {
    ValidateSynthConfig(synth);
    split.Validate();
    train.Validate();
    cluster.Validate();
    if (max_block_size < 2) {
      throw Error(ErrorCode::kInvalidConfig, "max_block_size must be >= 2");
    }
    if (sweep_p_bar.empty() != sweep_l_bar.empty()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "sweep.p_bar and sweep.l_bar must be given together");
    }
    for (double p : sweep_p_bar) ClusterParams{p, cluster.l_bar}.Validate();
    for (double l : sweep_l_bar) ClusterParams{cluster.p_bar, l}.Validate();
    if (png_samples < 0) {
      throw Error(ErrorCode::kInvalidConfig, "png_samples must be >= 0");
    }
    if (workers < 0) {
      throw Error(ErrorCode::kInvalidConfig, "workers must be >= 0");
    }
    if (output_dir.empty()) {
      throw Error(ErrorCode::kInvalidConfig, "output_dir is empty");
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::kUsage, e.what());
  }
}

void ApplySetting(std::string_view assignment, PipelineConfig* config) {
  const size_t eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::kUsage,
                "expected key=value, got '" + std::string(assignment) + "'");
  }
  const std::string key = Trim(assignment.substr(0, eq));
  const std::string value = Trim(assignment.substr(eq + 1));
  for (const Field& f : Fields()) {
    if (key == f.key) {
      f.set(config, value);
      return;
    }
  }
  throw Error(ErrorCode::kUsage, "unknown setting '" + key + "'");
}

void ApplyConfigFile(const std::string& path, PipelineConfig* config) {
  const std::string text = ReadFileOrThrow(path);
  int line_no = 0;
  for (const std::string& raw : SplitString(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (const size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    if (Trim(line).empty()) continue;
    try {
      ApplySetting(line, config);
    } catch (const Error& e) {
      throw Error(ErrorCode::kUsage,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string DescribeConfig(const PipelineConfig& config) {
  std::string out;
  for (const Field& f : Fields()) {
    out += f.key;
    out += "=";
    out += f.get(config);
    out += "\n";
  }
  return out;
}

}  // namespace disambig::pipeline
