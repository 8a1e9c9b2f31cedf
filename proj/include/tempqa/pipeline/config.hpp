#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "tempqa/pipeline/synthetic.hpp"
#include "tempqa/rgcn/model.hpp"
#include "tempqa/rgcn/train.hpp"

namespace tempqa::pipeline {

struct ScorerConfig {
  std::string kind = "lexical";  // lexical | remote
  std::string endpoint;          // remote only: "cmd:<command>" or "tcp:<host>:<port>"
  int timeout_ms = 5000;
  bool fallback = true;  // fall back to the lexical scorer when the endpoint fails
};

struct PipelineConfig {
  std::filesystem::path items = "items.jsonl";
  std::filesystem::path facts = "facts.jsonl";
  std::filesystem::path benchmark = "questions.jsonl";
  std::filesystem::path output_dir = "out";
  std::filesystem::path word_vectors;  // optional pretrained word vectors
  ScorerConfig scorer;
  int top_facts = 25;
  int top_gsts = 25;
  int top_temporal = 25;
  int max_terminal_groups = 8;
  std::array<double, 3> split{0.6, 0.2, 0.2};
  std::uint64_t seed = 42;
  int workers = 0;  // Stage-1 threads; 0 = hardware concurrency
  double ppr_alpha = 0.15;
  rgcn::ModelConfig model;
  rgcn::TrainOptions train;
  GeneratorConfig generator;

  // ContractViolation on counts < 1, negative ratios or ratios not summing to 1.
  void validate() const;
};

// Single JSON document; every key is optional and defaults as above:
//   {"items":..,"facts":..,"benchmark":..,"output_dir":..,"word_vectors":..,
//    "scorer":{"kind":..,"endpoint":..,"timeout_ms":..,"fallback":..},
//    "top_facts":25,"top_gsts":25,"top_temporal":25,"max_terminal_groups":8,
//    "split":[0.6,0.2,0.2],"seed":42,"workers":0,"ppr_alpha":0.15,
//    "model":{"embed_dim","hidden","te_dim","layers","te_epoch","lstm_dropout",
//             "linear_dropout","fact_dropout","train_words","train_entities",
//             "ablate":[..]},
//    "train":{"epochs","batch_size","learning_rate","clip_norm","select_on_dev"},
//    "generator":{"persons","teams","schools","awards","cities","positions",
//                 "questions","explicit_share","implicit_share",
//                 "temporal_answer_share","ordinal_share","two_hop_fraction",
//                 "far_fraction"}}
// Relative paths resolve against `base_dir`. ParseError on unknown keys or
// wrong types.
PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
// Smaller model and shorter training for the synthetic desk benchmark.
PipelineConfig desk_config();
PipelineConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json config_to_json(const PipelineConfig& c);

}  // namespace tempqa::pipeline
