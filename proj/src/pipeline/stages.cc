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

#include "disambig/pipeline/stages.h"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "disambig/base/binary_io.h"
#include "disambig/base/csv.h"
#include "disambig/base/digest.h"
#include "disambig/base/error.h"
#include "disambig/cluster.h"
#include "disambig/dedup.h"
#include "disambig/eval.h"
#include "disambig/layout.h"
#include "disambig/nn/model.h"
#include "disambig/nn/predict.h"
#include "disambig/nn/train.h"
#include "disambig/png_io.h"
#include "disambig/render.h"

namespace disambig::pipeline {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kPairMagic = "DSPR";
constexpr uint32_t kPairFormatVersion = 1;
constexpr std::string_view kDigestPrefix = "#digest=";
constexpr size_t kAsymmetrySample = 2000;

// ---------------------------------------------------------------------------
// Artifact plumbing.

void RequireInput(std::string_view stage, const std::string& path) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kStageInputMissing,
                std::string(stage) + ": missing input " + path);
  }
}

void CheckDigest(std::string_view stage, const std::string& path,
                 const std::string& found, const std::string& expected) {
  if (found != expected) {
    throw Error(ErrorCode::kConfigDigestMismatch,
                std::string(stage) + ": " + path + " was produced under " +
                    found + " but the current configuration implies " +
                    expected + "; re-run the stage that writes it");
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

void WriteDigestedCsv(const std::string& path, const std::string& digest,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  out << kDigestPrefix << digest << "\n";
  WriteCsvRow(out, header);
  for (const auto& row : rows) WriteCsvRow(out, row);
  WriteTextFile(path, out.str());
}

std::string LeadingDigest(const std::string& path, const std::string& text) {
  if (!text.starts_with(kDigestPrefix)) {
    throw Error(ErrorCode::kParseError, path + " has no digest line");
  }
  const size_t end = text.find('\n');
  return text.substr(kDigestPrefix.size(), end - kDigestPrefix.size());
}

// Rows after the header; checks the digest and the header.
std::vector<std::vector<std::string>> ReadDigestedCsv(
    std::string_view stage, const std::string& path,
    const std::string& expected_digest,
    const std::vector<std::string>& header) {
  RequireInput(stage, path);
  const std::string text = ReadFileOrThrow(path);
  CheckDigest(stage, path, LeadingDigest(path, text), expected_digest);
  std::vector<CsvRow> rows = ParseCsv(text);
  if (rows.empty() || rows.front().fields != header) {
    throw Error(ErrorCode::kParseError, path + " has an unexpected header");
  }
  std::vector<std::vector<std::string>> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].fields.size() != header.size()) {
      throw Error(ErrorCode::kParseError,
                  path + ":" + std::to_string(rows[i].line) + ": expected " +
                      std::to_string(header.size()) + " fields");
    }
    out.push_back(std::move(rows[i].fields));
  }
  return out;
}

std::string FormatProbability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", p);
  return buf;
}

const std::vector<std::string> kDedupHeader = {"record_id", "partition",
                                               "survivor_id"};
const std::vector<std::string> kBlocksHeader = {"partition", "block_key",
                                                "record_id"};
const std::vector<std::string> kProbsHeader = {
    "pair_id", "partition", "block_key", "record_id_a", "record_id_b",
    "p_match"};
const std::vector<std::string> kAssignmentHeader = {"record_id", "uid"};

struct DedupRow {
  std::string record_id;
  std::string partition;
  std::string survivor_id;
};

std::vector<DedupRow> ReadDedup(std::string_view stage,
                                const PipelineConfig& config,
                                const StageDigests& d) {
  std::vector<DedupRow> out;
  for (auto& f : ReadDigestedCsv(stage, config.ArtifactPath("dedup.csv"),
                                 d.dedup, kDedupHeader)) {
    out.push_back({std::move(f[0]), std::move(f[1]), std::move(f[2])});
  }
  return out;
}

// partition -> block key -> record ids.
using PartitionBlocks =
    std::map<std::string, std::map<std::string, std::vector<std::string>>>;

PartitionBlocks ReadBlocks(std::string_view stage, const PipelineConfig& config,
                           const StageDigests& d) {
  PartitionBlocks out;
  for (auto& f : ReadDigestedCsv(stage, config.ArtifactPath("blocks.csv"),
                                 d.block, kBlocksHeader)) {
    out[f[0]][f[1]].push_back(std::move(f[2]));
  }
  return out;
}

// The dedup view of one partition (or of all, when `partition` is empty),
// with survivors carrying only their ids.
DedupResult DedupView(const std::vector<DedupRow>& rows,
                      std::string_view partition) {
  DedupResult r;
  for (const DedupRow& row : rows) {
    if (!partition.empty() && row.partition != partition) continue;
    if (row.survivor_id == row.record_id) {
      Record rec;
      rec.record_id = row.record_id;
      r.survivors.push_back(std::move(rec));
    } else {
      r.duplicate_of[row.record_id] = row.survivor_id;
    }
  }
  return r;
}

struct ProbRow {
  std::string partition;
  std::string block_key;
  std::string a;
  std::string b;
  double p = 0.0;
};

std::vector<ProbRow> ReadProbs(std::string_view stage,
                               const PipelineConfig& config,
                               const StageDigests& d) {
  std::vector<ProbRow> out;
  for (auto& f : ReadDigestedCsv(stage, config.ArtifactPath("probs.csv"),
                                 d.infer, kProbsHeader)) {
    char* end = nullptr;
    const double p = std::strtod(f[5].c_str(), &end);
    if (end == f[5].c_str() || *end != '\0') {
      throw Error(ErrorCode::kParseError, "bad probability '" + f[5] + "'");
    }
    out.push_back({std::move(f[1]), std::move(f[2]), std::move(f[3]),
                   std::move(f[4]), p});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared configuration lookups.

LayoutRegistry LoadRegistry(const PipelineConfig& config) {
  if (config.layout_file.empty()) return BuiltinLayoutRegistry();
  return ParseLayoutFile(ReadFileOrThrow(config.layout_file));
}

nn::Architecture ResolveArchitecture(const PipelineConfig& config,
                                     const RecordMapLayout& layout) {
  nn::Architecture arch =
      config.architecture.empty()
          ? nn::Architecture::Reference(layout.canvas_width,
                                        layout.canvas_height)
          : nn::Architecture::Parse(config.architecture);
  arch.Validate();
  if (arch.input.w != layout.canvas_width ||
      arch.input.h != layout.canvas_height) {
    throw Error(ErrorCode::kInvalidConfig,
                "architecture input " + arch.Describe() +
                    " does not match the " + layout.name + " canvas");
  }
  return arch;
}

LabeledCorpus LoadConfiguredCorpus(std::string_view stage,
                                   const PipelineConfig& config) {
  const std::string path = config.CorpusPath();
  RequireInput(stage, path);
  return LoadCorpus(path, FormatFromPath(path));
}

std::map<std::string, const Record*> IndexRecords(const LabeledCorpus& c) {
  std::map<std::string, const Record*> index;
  for (const Record& r : c.records) index[r.record_id] = &r;
  return index;
}

class StageTimer {
 public:
  StageTimer(std::string_view stage, std::ostream& log)
      : stage_(stage), log_(log), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const double s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start_)
                         .count();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1fs", s);
    log_ << "[" << stage_ << "] done in " << buf << "\n";
  }

 private:
  std::string stage_;
  std::ostream& log_;
  std::chrono::steady_clock::time_point start_;
};

// Clusters every block of `partitions` and returns the named groups.
std::vector<InventorGroup> ClusterPartitions(
    const PartitionBlocks& blocks, const std::vector<ProbRow>& probs,
    const ClusterParams& params, const std::set<std::string>& partitions) {
  std::map<std::pair<std::string, std::string>, std::map<NodePair, double>>
      edges;
  for (const ProbRow& p : probs) {
    edges[{p.partition, p.block_key}][MakeNodePair(p.a, p.b)] = p.p;
  }
  std::vector<InventorGroup> out;
  for (const auto& [partition, by_key] : blocks) {
    if (!partitions.contains(partition)) continue;
    for (const auto& [key, ids] : by_key) {
      MatchGraph g;
      g.block_key = key;
      g.nodes = ids;
      if (const auto it = edges.find({partition, key}); it != edges.end()) {
        g.edges = it->second;
      }
      const std::vector<Group> groups = ClusterBlock(g, params);
      for (InventorGroup& ig : NameGroups(partition, key, groups)) {
        out.push_back(std::move(ig));
      }
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

StageDigests ComputeDigests(const PipelineConfig& config) {
  StageDigests d;
  const std::string corpus = config.CorpusPath();
  if (!fs::exists(corpus)) {
    throw Error(ErrorCode::kStageInputMissing, "corpus " + corpus +
                                                   " does not exist");
  }
  d.corpus = DigestOfFile(corpus);
  d.dedup = Digest()
                .Add("stage", "dedup")
                .Add("corpus", d.corpus)
                .Add("train_fraction", config.split.train_fraction)
                .Add("validation_fraction",
                     config.split.validation_fraction_of_train)
                .Add("split_seed", static_cast<int64_t>(config.split.seed))
                .Hex();
  d.block = Digest()
                .Add("stage", "block")
                .Add("dedup", d.dedup)
                .Add("max_block_size",
                     static_cast<int64_t>(config.max_block_size))
                .Hex();
  const LayoutRegistry registry = LoadRegistry(config);
  const RecordMapLayout& layout = FindLayout(registry, config.layout);
  d.render = Digest()
                 .Add("stage", "render")
                 .Add("block", d.block)
                 .Add("layout", layout.name)
                 .Add("layout_fingerprint", layout.Fingerprint())
                 .Hex();
  const nn::Architecture arch = ResolveArchitecture(config, layout);
  const nn::TrainConfig& t = config.train;
  d.train = Digest()
                .Add("stage", "train")
                .Add("render", d.render)
                .Add("architecture", arch.Describe())
                .Add("batch_size", static_cast<int64_t>(t.batch_size))
                .Add("epochs", static_cast<int64_t>(t.epochs))
                .Add("lr_start", t.lr_start)
                .Add("lr_end", t.lr_end)
                .Add("seed", static_cast<int64_t>(t.seed))
                .Add("momentum", t.momentum)
                .Add("weight_decay", t.weight_decay)
                .Hex();
  d.infer = Digest().Add("stage", "infer").Add("train", d.train).Hex();
  d.cluster = Digest()
                  .Add("stage", "cluster")
                  .Add("infer", d.infer)
                  .Add("p_bar", config.cluster.p_bar)
                  .Add("l_bar", config.cluster.l_bar)
                  .Hex();
  Digest eval;
  eval.Add("stage", "evaluate")
      .Add("cluster", d.cluster)
      .Add("all_pairs", static_cast<int64_t>(config.eval_all_pairs));
  for (double p : config.sweep_p_bar) eval.Add("sweep_p_bar", p);
  for (double l : config.sweep_l_bar) eval.Add("sweep_l_bar", l);
  d.evaluate = eval.Hex();
  return d;
}

void WritePairFile(const std::string& path, const std::string& digest,
                   const std::vector<PairRow>& pairs) {
  ByteWriter out;
  out.PutRaw(kPairMagic);
  out.Put<uint32_t>(kPairFormatVersion);
  out.PutString(digest);
  out.Put<uint64_t>(pairs.size());
  for (const PairRow& p : pairs) {
    out.Put<uint64_t>(p.pair_id);
    out.PutString(p.partition);
    out.PutString(p.block_key);
    out.PutString(p.a);
    out.PutString(p.b);
    out.Put<int8_t>(static_cast<int8_t>(p.label));
  }
  out.WriteFileWithChecksum(path);
}

std::vector<PairRow> ReadPairFile(const std::string& path,
                                  std::string* digest) {
  const std::string bytes = ReadFileVerifyChecksum(path);
  ByteReader in(bytes);
  if (in.Take(kPairMagic.size()) != kPairMagic ||
      in.Get<uint32_t>() != kPairFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch, path + " is not a pair file");
  }
  *digest = in.GetString();
  const uint64_t n = in.Get<uint64_t>();
  std::vector<PairRow> pairs;
  pairs.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    PairRow p;
    p.pair_id = in.Get<uint64_t>();
    p.partition = in.GetString();
    p.block_key = in.GetString();
    p.a = in.GetString();
    p.b = in.GetString();
    p.label = static_cast<PairLabel>(in.Get<int8_t>());
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::map<std::string, std::string> ReadAssignment(const std::string& path) {
  const std::string text = ReadFileOrThrow(path);
  std::vector<CsvRow> rows = ParseCsv(text);
  std::map<std::string, std::string> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].fields.size() != 2) {
      throw Error(ErrorCode::kParseError,
                  path + ":" + std::to_string(rows[i].line) + ": bad row");
    }
    out[rows[i].fields[0]] = rows[i].fields[1];
  }
  return out;
}

void RunSynth(const PipelineConfig& config, std::ostream& log) {
  StageTimer timer("synth", log);
  fs::create_directories(config.output_dir);
  const LabeledCorpus corpus =
      GenerateSyntheticCorpus(config.synth, config.synth_seed);
  const std::string path = config.CorpusPath();
  SaveCorpus(corpus, path, FormatFromPath(path));
  log << "[synth] " << corpus.records.size() << " records of "
      << corpus.NumEntities() << " entities -> " << path << "\n";
}

void RunDedup(const PipelineConfig& config, std::ostream& log) {
  StageTimer timer("dedup", log);
  const StageDigests d = ComputeDigests(config);
  const LabeledCorpus corpus = LoadConfiguredCorpus("dedup", config);
  fs::create_directories(config.output_dir);

  std::vector<std::pair<std::string, LabeledCorpus>> parts;
  if (corpus.labeled()) {
    CorpusSplit split = SplitCorpus(corpus, config.split);
    parts.emplace_back("train", std::move(split.train));
    parts.emplace_back("validation", std::move(split.validation));
    parts.emplace_back("test", std::move(split.test));
  } else {
    parts.emplace_back("bulk", corpus);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& [name, part] : parts) {
    const DedupResult dedup = RemoveDuplicates(part.records);
    for (const Record& r : part.records) {
      const auto it = dedup.duplicate_of.find(r.record_id);
      rows.push_back({r.record_id, name,
                      it == dedup.duplicate_of.end() ? r.record_id
                                                     : it->second});
    }
    log << "[dedup] " << name << ": " << part.records.size() << " records, "
        << dedup.duplicate_of.size() << " duplicates removed\n";
  }
  WriteDigestedCsv(config.ArtifactPath("dedup.csv"), d.dedup, kDedupHeader,
                   rows);
}

void RunBlock(const PipelineConfig& config, std::ostream& log) {
  StageTimer timer("block", log);
  const StageDigests d = ComputeDigests(config);
  const LabeledCorpus corpus = LoadConfiguredCorpus("block", config);
  const auto index = IndexRecords(corpus);
  const std::vector<DedupRow> dedup = ReadDedup("block", config, d);

  std::map<std::string, std::vector<Record>> survivors;
  for (const DedupRow& row : dedup) {
    if (row.record_id == row.survivor_id) {
      const auto it = index.find(row.record_id);
      if (it == index.end()) {
        throw Error(ErrorCode::kStageInputMissing,
                    "block: record " + row.record_id + " not in corpus");
      }
      survivors[row.partition].push_back(*it->second);
    }
  }
  std::vector<std::vector<std::string>> block_rows;
  std::vector<std::vector<std::string>> stat_rows;
  std::vector<PairRow> pairs;
  for (std::string_view partition : kPartitions) {
    const auto it = survivors.find(std::string(partition));
    if (it == survivors.end()) continue;
    const Blocking blocking = BuildBlocks(it->second, config.max_block_size);
    for (const auto& [key, ids] : blocking.blocks) {
      for (const std::string& id : ids) {
        block_rows.push_back({std::string(partition), key, id});
      }
      stat_rows.push_back(
          {std::string(partition), key, std::to_string(ids.size())});
    }
    ForEachWithinBlockPair(blocking, [&](const RecordPair& rp) {
      PairRow p;
      p.pair_id = pairs.size();
      p.partition = partition;
      p.block_key = rp.block_key;
      p.a = rp.a;
      p.b = rp.b;
      if (corpus.labeled()) {
        p.label = corpus.entity_ids.at(rp.a) == corpus.entity_ids.at(rp.b)
                      ? PairLabel::kMatch
                      : PairLabel::kNonMatch;
      }
      pairs.push_back(std::move(p));
    });
    log << "[block] " << partition << ": " << blocking.blocks.size()
        << " blocks, " << blocking.NumPairs() << " pairs";
    if (corpus.labeled()) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f",
                    EstimateMaxRecall(corpus, blocking));
      log << ", max recall " << buf;
    }
    log << "\n";
  }
  WriteDigestedCsv(config.ArtifactPath("blocks.csv"), d.block, kBlocksHeader,
                   block_rows);
  WriteDigestedCsv(config.ArtifactPath("block_stats.csv"), d.block,
                   {"partition", "block_key", "size"}, stat_rows);
  WritePairFile(config.ArtifactPath("pairs.bin"), d.block, pairs);
}

void RunRender(const PipelineConfig& config, std::ostream& log) {
  StageTimer timer("render", log);
  const StageDigests d = ComputeDigests(config);
  const LabeledCorpus corpus = LoadConfiguredCorpus("render", config);
  const std::string pairs_path = config.ArtifactPath("pairs.bin");
  RequireInput("render", pairs_path);
  std::string pairs_digest;
  const std::vector<PairRow> pairs = ReadPairFile(pairs_path, &pairs_digest);
  CheckDigest("render", pairs_path, pairs_digest, d.block);

  const LayoutRegistry registry = LoadRegistry(config);
  const RecordMapLayout& layout = FindLayout(registry, config.layout);
  std::map<std::string, size_t> position;
  for (size_t i = 0; i < corpus.records.size(); ++i) {
    position[corpus.records[i].record_id] = i;
  }
  std::vector<PairIndex> index;
  index.reserve(pairs.size());
  for (const PairRow& p : pairs) {
    index.push_back({position.at(p.a), position.at(p.b)});
  }
  std::vector<ImageTensor> maps =
      RenderComparisonMaps(corpus.records, index, layout);

  TensorBatch batch;
  batch.layout_name = layout.name;
  batch.digest = d.render;
  batch.width = layout.canvas_width;
  batch.height = layout.canvas_height;
  batch.entries.reserve(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    batch.entries.push_back(
        {pairs[i].pair_id, pairs[i].label, std::move(maps[i])});
  }
  WriteTensorBatch(batch, config.ArtifactPath("tensors.bin"));
  if (config.png_samples > 0) {
    const fs::path dir = config.ArtifactPath("png");
    fs::create_directories(dir);
    const size_t n =
        std::min(batch.entries.size(), static_cast<size_t>(config.png_samples));
    for (size_t i = 0; i < n; ++i) {
      const PairRow& p = pairs[i];
      ExportPng(batch.entries[i].tensor,
                (dir / ("pair_" + std::to_string(p.pair_id) + "_" + p.a + "_" +
                        p.b + ".png"))
                    .string());
    }
  }
  log << "[render] " << batch.entries.size() << " comparison maps, layout "
      << layout.name << " (" << layout.canvas_width << "x"
      << layout.canvas_height << ")\n";
}

void RunTrain(const PipelineConfig& config, std::ostream& log) {
  StageTimer timer("train", log);
  const StageDigests d = ComputeDigests(config);
  const std::string tensors_path = config.ArtifactPath("tensors.bin");
  const std::string pairs_path = config.ArtifactPath("pairs.bin");
  RequireInput("train", tensors_path);
  RequireInput("train", pairs_path);
  std::string pairs_digest;
  const std::vector<PairRow> pairs = ReadPairFile(pairs_path, &pairs_digest);
  CheckDigest("train", pairs_path, pairs_digest, d.block);
  TensorBatch batch = ReadTensorBatch(tensors_path);
  CheckDigest("train", tensors_path, batch.digest, d.render);

  std::map<uint64_t, std::string> partition_of;
  for (const PairRow& p : pairs) partition_of[p.pair_id] = p.partition;
  std::vector<TensorEntry> train;
  std::vector<TensorEntry> validation;
  for (TensorEntry& e : batch.entries) {
    const std::string& part = partition_of.at(e.pair_id);
    if (part == "train") train.push_back(std::move(e));
    if (part == "validation") validation.push_back(std::move(e));
  }
  const auto matches = std::ranges::count_if(
      train, [](const TensorEntry& e) { return e.label == PairLabel::kMatch; });
  log << "[train] " << train.size() << " training pairs (" << matches
      << " matches), " << validation.size() << " validation pairs\n";

  const LayoutRegistry registry = LoadRegistry(config);
  const RecordMapLayout& layout = FindLayout(registry, config.layout);
  const nn::Architecture arch = ResolveArchitecture(config, layout);
  nn::TrainResult result =
      nn::Train(train, validation, config.train, arch, batch.layout_name);
  result.model.train_config_digest = d.train;
  nn::SaveModel(result.model, config.ArtifactPath("model.bin"));

  std::ostringstream report;
  nn::WriteTrainingReport(result.report, report);
  WriteTextFile(config.ArtifactPath("train_report.csv"), report.str());
  const nn::EpochStats& last = result.report.epochs.back();
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "final train loss %.4f, validation loss %.4f, accuracy %.4f",
                last.train_loss, last.val_loss, last.val_accuracy);
  log << "[train] " << arch.Describe() << ": " << buf << "\n";
}

void RunInfer(const PipelineConfig& config, std::ostream& log) {
  StageTimer timer("infer", log);
  const StageDigests d = ComputeDigests(config);
  const std::string model_path = config.ArtifactPath("model.bin");
  const std::string tensors_path = config.ArtifactPath("tensors.bin");
  const std::string pairs_path = config.ArtifactPath("pairs.bin");
  RequireInput("infer", model_path);
  RequireInput("infer", tensors_path);
  RequireInput("infer", pairs_path);
  const nn::ClassifierModel model = nn::LoadModel(model_path);
  CheckDigest("infer", model_path, model.train_config_digest, d.train);
  const TensorBatch batch = ReadTensorBatch(tensors_path);
  CheckDigest("infer", tensors_path, batch.digest, d.render);
  std::string pairs_digest;
  const std::vector<PairRow> pairs = ReadPairFile(pairs_path, &pairs_digest);
  CheckDigest("infer", pairs_path, pairs_digest, d.block);

  std::map<uint64_t, const PairRow*> by_id;
  for (const PairRow& p : pairs) by_id[p.pair_id] = &p;
  const std::vector<nn::PairProbability> probs =
      nn::PredictPairs(model, batch);
  std::vector<std::vector<std::string>> rows;
  rows.reserve(probs.size());
  for (const nn::PairProbability& pp : probs) {
    const PairRow& p = *by_id.at(pp.pair_id);
    rows.push_back({std::to_string(p.pair_id), p.partition, p.block_key, p.a,
                    p.b, FormatProbability(pp.p_match)});
  }
  WriteDigestedCsv(config.ArtifactPath("probs.csv"), d.infer, kProbsHeader,
                   rows);
  log << "[infer] " << rows.size() << " pair probabilities\n";

  // The network sees (a, b) and (b, a) as different images. Score a sample
  // of pairs both ways so that order sensitivity is visible.
  const LabeledCorpus corpus = LoadConfiguredCorpus("infer", config);
  std::map<std::string, size_t> position;
  for (size_t i = 0; i < corpus.records.size(); ++i) {
    position[corpus.records[i].record_id] = i;
  }
  const size_t n_check = std::min(probs.size(), kAsymmetrySample);
  std::vector<PairIndex> swapped;
  swapped.reserve(n_check);
  for (size_t i = 0; i < n_check; ++i) {
    const PairRow& p = *by_id.at(probs[i].pair_id);
    swapped.push_back({position.at(p.b), position.at(p.a)});
  }
  const LayoutRegistry registry = LoadRegistry(config);
  const std::vector<ImageTensor> maps = RenderComparisonMaps(
      corpus.records, swapped, FindLayout(registry, config.layout));
  const std::vector<std::array<float, 2>> reverse =
      nn::ForwardBatch(model, maps);
  std::vector<std::vector<std::string>> asym_rows;
  double sum = 0.0;
  double worst = 0.0;
  for (size_t i = 0; i < n_check; ++i) {
    const double diff = std::abs(probs[i].p_match - reverse[i][1]);
    sum += diff;
    worst = std::max(worst, diff);
    asym_rows.push_back({std::to_string(probs[i].pair_id),
                         FormatProbability(probs[i].p_match),
                         FormatProbability(reverse[i][1]),
                         FormatProbability(diff)});
  }
  WriteDigestedCsv(config.ArtifactPath("asymmetry.csv"), d.infer,
                   {"pair_id", "p_ab", "p_ba", "abs_diff"}, asym_rows);
  if (n_check > 0) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "order asymmetry over %zu pairs: mean %.4f, max %.4f",
                  n_check, sum / static_cast<double>(n_check), worst);
    log << "[infer] " << buf << "\n";
  }
}

void RunCluster(const PipelineConfig& config, std::ostream& log) {
  StageTimer timer("cluster", log);
  const StageDigests d = ComputeDigests(config);
  const std::vector<ProbRow> probs = ReadProbs("cluster", config, d);
  const PartitionBlocks blocks = ReadBlocks("cluster", config, d);
  const std::vector<DedupRow> dedup = ReadDedup("cluster", config, d);

  const std::set<std::string> all(kPartitions.begin(), kPartitions.end());
  const std::vector<InventorGroup> groups =
      ClusterPartitions(blocks, probs, config.cluster, all);
  const std::map<std::string, std::string> assignment =
      AssignUids(groups, DedupView(dedup, ""));
  std::vector<std::vector<std::string>> rows;
  for (const auto& [id, uid] : assignment) rows.push_back({id, uid});
  WriteDigestedCsv(config.ArtifactPath("assignment.csv"), d.cluster,
                   kAssignmentHeader, rows);
  log << "[cluster] " << assignment.size() << " records in " << groups.size()
      << " groups\n";
}

void RunEvaluate(const PipelineConfig& config, std::ostream& log) {
  StageTimer timer("evaluate", log);
  const StageDigests d = ComputeDigests(config);
  const LabeledCorpus corpus = LoadConfiguredCorpus("evaluate", config);
  if (!corpus.labeled()) {
    throw Error(ErrorCode::kInvalidConfig,
                "evaluate: the corpus carries no entity labels");
  }
  const std::vector<DedupRow> dedup = ReadDedup("evaluate", config, d);
  const PartitionBlocks blocks = ReadBlocks("evaluate", config, d);
  const std::string assignment_path = config.ArtifactPath("assignment.csv");
  const auto assignment_rows = ReadDigestedCsv(
      "evaluate", assignment_path, d.cluster, kAssignmentHeader);
  std::map<std::string, std::string> assignment;
  for (const auto& f : assignment_rows) assignment[f[0]] = f[1];

  // The test universe.
  std::vector<std::string> test_ids;
  std::map<std::string, std::string> duplicate_of;
  for (const DedupRow& row : dedup) {
    if (row.partition != "test") continue;
    test_ids.push_back(row.record_id);
    if (row.survivor_id != row.record_id) {
      duplicate_of[row.record_id] = row.survivor_id;
    }
  }
  Blocking test_blocking;
  if (const auto it = blocks.find("test"); it != blocks.end()) {
    test_blocking.blocks = it->second;
  }
  const std::vector<NodePair> universe =
      config.eval_all_pairs
          ? AllPairsUniverse(test_ids)
          : WithinBlockUniverse(test_ids, test_blocking, duplicate_of);

  const ConfusionCounts counts = CountPairs(corpus, assignment, universe);
  const Metrics metrics = ComputeMetrics(counts);
  std::ostringstream report;
  report << kDigestPrefix << d.evaluate << "\n";
  report << "# test records " << test_ids.size() << ", universe "
         << (config.eval_all_pairs ? "all pairs" : "within-block pairs")
         << "\n";
  WriteMetricsReport(counts, metrics, report);
  WriteTextFile(config.ArtifactPath("metrics.txt"), report.str());
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "precision %.4f, recall %.4f, f1 %.4f over %llu pairs",
                metrics.precision, metrics.recall, metrics.f1,
                static_cast<unsigned long long>(counts.total()));
  log << "[evaluate] " << buf << "\n";

  if (config.sweep_p_bar.empty()) return;
  const std::vector<ProbRow> probs = ReadProbs("evaluate", config, d);
  const DedupResult test_dedup = DedupView(dedup, "test");
  std::vector<std::vector<std::string>> rows;
  for (double p_bar : config.sweep_p_bar) {
    for (double l_bar : config.sweep_l_bar) {
      const std::vector<InventorGroup> groups =
          ClusterPartitions(blocks, probs, {p_bar, l_bar}, {"test"});
      const auto sweep_assignment = AssignUids(groups, test_dedup);
      const ConfusionCounts c = CountPairs(corpus, sweep_assignment, universe);
      const Metrics m = ComputeMetrics(c);
      const auto fmt = [](double v) {
        char b[32];
        std::snprintf(b, sizeof(b), "%.6f", v);
        return std::string(b);
      };
      rows.push_back({fmt(p_bar), fmt(l_bar), fmt(m.precision),
                      fmt(m.recall), fmt(m.splitting), fmt(m.lumping),
                      fmt(m.f1), std::to_string(c.tp), std::to_string(c.fp),
                      std::to_string(c.tn), std::to_string(c.fn),
                      m.flags.empty() ? "none" : JoinStrings(m.flags, ";")});
    }
  }
  WriteDigestedCsv(config.ArtifactPath("sweep.csv"), d.evaluate,
                   {"p_bar", "l_bar", "precision", "recall", "splitting",
                    "lumping", "f1", "tp", "fp", "tn", "fn", "flags"},
                   rows);
  log << "[evaluate] sweep of " << rows.size() << " settings -> sweep.csv\n";
}

void RunStage(std::string_view name, const PipelineConfig& config,
              std::ostream& log) {
  config.Validate();
  if (config.workers > 0) omp_set_num_threads(config.workers);
  if (name == "synth") return RunSynth(config, log);
  if (name == "dedup") return RunDedup(config, log);
  if (name == "block") return RunBlock(config, log);
  if (name == "render") return RunRender(config, log);
  if (name == "train") return RunTrain(config, log);
  if (name == "infer") return RunInfer(config, log);
  if (name == "cluster") return RunCluster(config, log);
  if (name == "evaluate") return RunEvaluate(config, log);
  throw Error(ErrorCode::kUsage, "unknown stage '" + std::string(name) + "'");
}

void RunPipeline(const PipelineConfig& config, std::ostream& log) {
  for (std::string_view stage : kStageNames) {
    if (stage == "synth" && !config.input.empty()) continue;
    RunStage(stage, config, log);
  }
}

}  // namespace disambig::pipeline
