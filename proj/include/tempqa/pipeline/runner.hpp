#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tempqa/kg/knowledge_graph.hpp"
#include "tempqa/pipeline/benchmark.hpp"
#include "tempqa/pipeline/config.hpp"
#include "tempqa/pipeline/split.hpp"
#include "tempqa/pipeline/stage1.hpp"
#include "tempqa/question/analysis.hpp"
#include "tempqa/relevance/scorer.hpp"
#include "tempqa/rgcn/metrics.hpp"
#include "tempqa/rgcn/model.hpp"
#include "tempqa/rgcn/train.hpp"

namespace tempqa::pipeline {

struct PreparedQuestion {
  std::size_t index = 0;  // into the benchmark
  std::set<kg::ItemId> gold;
  std::optional<Stage1Result> stage1;  // empty after a failure
  std::string error;
};

// KG, benchmark, analyzer, scorer and split for one configuration.
class Workspace {
 public:
  explicit Workspace(PipelineConfig config);

  const PipelineConfig& config() const { return config_; }
  const kg::KnowledgeGraph& kg() const { return kg_; }
  const std::vector<BenchmarkQuestion>& questions() const { return questions_; }
  const DatasetSplit& split() const { return split_; }
  const question::QuestionAnalyzer& analyzer() const { return *analyzer_; }
  const relevance::RelevanceScorer& scorer() const { return *scorer_; }

  // Stage 1 over the given benchmark indices, on config().workers threads.
  // Results are cached per index. Per-question failures are logged and kept
  // with an error message.
  std::vector<PreparedQuestion> prepare(const std::vector<std::size_t>& indices) const;

  // Relational graph, gold node set and PageRank scores; nullopt when the
  // answer graph is empty.
  std::optional<rgcn::QAExample> example(const PreparedQuestion& q) const;

 private:
  PipelineConfig config_;
  kg::KnowledgeGraph kg_;
  std::vector<BenchmarkQuestion> questions_;
  DatasetSplit split_;
  std::unique_ptr<question::GazetteerDetector> detector_;
  std::unique_ptr<question::QuestionAnalyzer> analyzer_;
  std::shared_ptr<const relevance::IdfBagEncoder> encoder_;
  std::shared_ptr<const relevance::RelevanceScorer> scorer_;
  mutable std::map<std::size_t, PreparedQuestion> cache_;
};

struct PredictionRecord {
  std::string id;
  std::vector<std::pair<kg::ItemId, double>> ranking;
};

nlohmann::ordered_json stage_report_json(const StageReport& r);
nlohmann::ordered_json metrics_json(const std::optional<rgcn::Metrics>& m);
std::string format_stage_report(const std::string& title, const StageReport& r);
std::string format_metrics(const std::string& title, const std::optional<rgcn::Metrics>& m);

void write_predictions(const std::vector<PredictionRecord>& records, const std::filesystem::path& path);
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);
// Metrics of stored predictions against the benchmark answers.
std::optional<rgcn::Metrics> evaluate_predictions(const std::vector<PredictionRecord>& records, const Workspace& ws);

struct RunOptions {
  std::string split = "test";
  bool dump_graphs = false;
};

// Stage 1 for every question; writes stage_report.json/.txt into the output
// directory (and answer graph dumps under graphs/ when requested).
nlohmann::ordered_json build_graphs(const Workspace& ws, const RunOptions& options);

// Trains on the train split (dev for model selection) and writes
// model.ckpt and train_log.json.
rgcn::TrainReport train_model(const Workspace& ws, rgcn::Model& model);

// Ranks the answer graph nodes of every question in the split; questions
// without a graph get an empty ranking.
std::vector<PredictionRecord> predict_split(const Workspace& ws, rgcn::Model& model, const std::string& split);

// Full run: Stage 1, training, prediction and evaluation. Writes
// stage_report.*, model.ckpt, train_log.json, predictions.jsonl and
// report.json/report.txt. Returns the report document.
nlohmann::ordered_json run_pipeline(const Workspace& ws, const RunOptions& options);

}  // namespace tempqa::pipeline
