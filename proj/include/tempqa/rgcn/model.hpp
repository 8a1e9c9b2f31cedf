#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tempqa/numeric/autodiff.hpp"
#include "tempqa/numeric/layers.hpp"
#include "tempqa/question/analysis.hpp"
#include "tempqa/rgcn/embeddings.hpp"
#include "tempqa/rgcn/relational_graph.hpp"

namespace tempqa::rgcn {

// Pathways that can be switched off. tce/tse zero the category/signal bits,
// tee zeroes the time-aware entity state, te replaces every time encoding
// with zeros, atr replaces attention by a uniform split over out-edges.
struct Ablation {
  bool tce = false;
  bool tse = false;
  bool tee = false;
  bool te = false;
  bool atr = false;

  bool operator==(const Ablation&) const = default;
  // Accepts "tce", "tse", "tee", "te", "atr"; ContractViolation otherwise.
  void set(const std::string& name);
  std::vector<std::string> names() const;
};

struct ModelConfig {
  int embed_dim = 100;  // words and relation words
  int hidden = 100;     // question, entity and TEE states
  int te_dim = 100;
  int layers = 3;
  int te_epoch = 1000;
  double lstm_dropout = 0.3;
  double linear_dropout = 0.2;
  double fact_dropout = 0.1;
  // Fine-tune the embedding tables; otherwise their rows stay fixed.
  bool train_words = true;
  bool train_entities = true;
  double embed_init = 0;  // std of seeded embedding rows; 0 = 1/sqrt(dim)
  Ablation ablation;
};

struct QAExample {
  std::string id;
  question::QuestionAnalysis qa;
  RelationalGraph graph;
  std::vector<int> question_nodes;  // question entities present in the graph, sorted
  std::vector<double> ppr;          // per node
  std::set<int> gold;               // gold node indices
};

// Fills question_nodes and PageRank scores seeded at them (every node when
// none is in the graph).
QAExample make_example(std::string id, question::QuestionAnalysis qa, RelationalGraph graph, std::set<int> gold,
                       double alpha = 0.15);

class Model {
 public:
  // State of one forward evaluation. `dropout` is null at inference.
  struct Pass {
    numeric::Tape& tape;
    numeric::Rng* dropout = nullptr;
    std::map<const numeric::Parameter*, numeric::Var> params;
    std::map<std::string, numeric::Var> relations;
    // Per-pass caches of shared subexpressions, keyed by tape ids.
    std::map<int, numeric::Var> inputs;
    std::map<int, numeric::Var> queries;
    std::map<std::pair<int, std::string>, numeric::Var> psi_relations;
    std::map<std::pair<int, int>, numeric::Var> psi_states;

    Pass(numeric::Tape& t, numeric::Rng* rng = nullptr) : tape(t), dropout(rng) {}
    numeric::Var param(numeric::Parameter& p);
  };

  Model(ModelConfig config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  numeric::ParameterStore& params() { return store_; }
  const numeric::ParameterStore& params() const { return store_; }
  EmbeddingTable& words() { return words_; }
  EmbeddingTable& entities() { return entities_; }

  // Makes word, relation-word and entity rows of the examples trainable.
  void register_vocabulary(const std::vector<QAExample>& examples);

  numeric::Tensor time_encoding(const kg::Timestamp& ts) const;
  // Sum of time encodings; seeded random vector keyed by `relation` when
  // `times` is empty.
  numeric::Tensor edge_time_encoding(const std::vector<kg::Timestamp>& times, const std::string& relation) const;

  numeric::Var word(Pass& p, const std::string& token);
  // Mean word vector of the relation label's tokens.
  numeric::Var relation(Pass& p, const std::string& label);
  numeric::Var init_question(Pass& p, const question::QuestionAnalysis& qa);
  numeric::Var update_question(Pass& p, int layer, const std::vector<numeric::Var>& entity_states);
  numeric::Var init_entity(Pass& p, const RelNode& node);
  numeric::Var encode_fact(Pass& p, const TemporalFact& f, const std::vector<numeric::Var>& states);
  // Final LSTM state over the encodings; zeros for an empty list.
  numeric::Var encode_tee(Pass& p, const std::vector<numeric::Var>& fact_encodings);
  // Attention weights over `edges` (the out-edges of one node), in order.
  std::vector<numeric::Var> atr(Pass& p, numeric::Var h_q, const RelationalGraph& g, const std::vector<int>& edges);
  numeric::Var psi(Pass& p, int layer, const std::string& relation, numeric::Var h, double ppr);
  numeric::Var update_entity(Pass& p, int layer, numeric::Var h_e, numeric::Var h_q, numeric::Var tee,
                             numeric::Var aggregate);
  numeric::Var classify(Pass& p, numeric::Var h);

  // Per-node answer logits after `layers` propagation rounds.
  std::vector<numeric::Var> forward(Pass& p, const QAExample& ex);
  // Per-node probabilities (inference mode).
  std::vector<double> probabilities(const QAExample& ex);

 private:
  numeric::Var zeros(Pass& p, int n) const;
  numeric::Var maybe_dropout(Pass& p, numeric::Var x, double rate) const;

  ModelConfig config_;
  numeric::ParameterStore store_;
  EmbeddingTable words_;
  EmbeddingTable entities_;
  numeric::Lstm question_lstm_;
  numeric::Dense question_ffn_;
  numeric::Dense question_time_;
  std::vector<numeric::Dense> question_update_;
  numeric::Dense timestamp_proj_;
  numeric::Lstm tee_lstm_;
  numeric::Parameter* atr_proj_ = nullptr;
  std::vector<numeric::Parameter*> psi_wr_;
  std::vector<numeric::Parameter*> psi_wh_;
  std::vector<numeric::Parameter*> psi_b_;
  std::vector<numeric::Dense> entity_update_;
  numeric::Dense classifier_;
  std::uint64_t seed_;
};

// Token is a year or numeric date the question encoder embeds by time.
std::optional<kg::Timestamp> token_time(const std::string& token);

}  // namespace tempqa::rgcn
