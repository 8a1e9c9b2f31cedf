#include "tempqa/pipeline/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "tempqa/errors.hpp"

namespace tempqa::pipeline {
namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must be an object", 0);
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ParseError("unknown key '" + k + "' in " + where, 0);
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad value for '") + key + "': " + e.what(), 0);
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::filesystem::path& p) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

}  // namespace

void PipelineConfig::validate() const {
  if (top_facts < 1 || top_gsts < 1 || top_temporal < 1 || max_terminal_groups < 1)
    throw ContractViolation("top-n counts must be at least 1");
  double sum = 0;
  for (double r : split) {
    if (r < 0) throw ContractViolation("split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ContractViolation("split ratios must sum to 1");
  if (scorer.kind != "lexical" && scorer.kind != "remote") throw ContractViolation("unknown scorer " + scorer.kind);
  if (scorer.kind == "remote" && scorer.endpoint.empty()) throw ContractViolation("remote scorer needs an endpoint");
  if (!(ppr_alpha > 0 && ppr_alpha < 1)) throw ContractViolation("ppr_alpha must be in (0,1)");
  if (model.layers < 1) throw ContractViolation("at least one layer is required");
  if (model.te_dim < 2 || model.te_dim % 2) throw ContractViolation("te_dim must be even");
  if (train.batch_size < 1) throw ContractViolation("batch size must be positive");
}

PipelineConfig config_from_json(const json& j, const std::filesystem::path& base) {
  check_keys(j,
             {"items", "facts", "benchmark", "output_dir", "word_vectors", "scorer", "top_facts", "top_gsts",
              "top_temporal", "max_terminal_groups", "split", "seed", "workers", "ppr_alpha", "model", "train",
              "generator"},
             "config");
  PipelineConfig c;
  std::string s;
  auto path = [&](const char* key, std::filesystem::path& out) {
    if (!j.contains(key)) return;
    read(j, key, s);
    out = s;
  };
  path("items", c.items);
  path("facts", c.facts);
  path("benchmark", c.benchmark);
  path("output_dir", c.output_dir);
  path("word_vectors", c.word_vectors);
  if (j.contains("scorer")) {
    const auto& sc = j["scorer"];
    check_keys(sc, {"kind", "endpoint", "timeout_ms", "fallback"}, "scorer");
    read(sc, "kind", c.scorer.kind);
    read(sc, "endpoint", c.scorer.endpoint);
    read(sc, "timeout_ms", c.scorer.timeout_ms);
    read(sc, "fallback", c.scorer.fallback);
  }
  read(j, "top_facts", c.top_facts);
  read(j, "top_gsts", c.top_gsts);
  read(j, "top_temporal", c.top_temporal);
  read(j, "max_terminal_groups", c.max_terminal_groups);
  read(j, "split", c.split);
  read(j, "seed", c.seed);
  read(j, "workers", c.workers);
  read(j, "ppr_alpha", c.ppr_alpha);
  if (j.contains("model")) {
    const auto& m = j["model"];
    check_keys(m,
               {"embed_dim", "hidden", "te_dim", "layers", "te_epoch", "lstm_dropout", "linear_dropout",
                "fact_dropout", "train_words", "train_entities", "embed_init", "ablate"},
               "model");
    read(m, "embed_dim", c.model.embed_dim);
    read(m, "hidden", c.model.hidden);
    read(m, "te_dim", c.model.te_dim);
    read(m, "layers", c.model.layers);
    read(m, "te_epoch", c.model.te_epoch);
    read(m, "lstm_dropout", c.model.lstm_dropout);
    read(m, "linear_dropout", c.model.linear_dropout);
    read(m, "fact_dropout", c.model.fact_dropout);
    read(m, "train_words", c.model.train_words);
    read(m, "train_entities", c.model.train_entities);
    read(m, "embed_init", c.model.embed_init);
    std::vector<std::string> ablate;
    read(m, "ablate", ablate);
    for (const auto& a : ablate) c.model.ablation.set(a);
  }
  if (j.contains("train")) {
    const auto& t = j["train"];
    check_keys(t, {"epochs", "batch_size", "learning_rate", "clip_norm", "select_on_dev"}, "train");
    read(t, "epochs", c.train.epochs);
    read(t, "batch_size", c.train.batch_size);
    read(t, "learning_rate", c.train.learning_rate);
    read(t, "clip_norm", c.train.clip_norm);
    read(t, "select_on_dev", c.train.select_on_dev);
  }
  if (j.contains("generator")) {
    const auto& g = j["generator"];
    check_keys(g,
               {"persons", "teams", "schools", "awards", "cities", "positions", "questions", "explicit_share",
                "implicit_share", "temporal_answer_share", "ordinal_share", "two_hop_fraction", "far_fraction"},
               "generator");
    read(g, "persons", c.generator.persons);
    read(g, "teams", c.generator.teams);
    read(g, "schools", c.generator.schools);
    read(g, "awards", c.generator.awards);
    read(g, "cities", c.generator.cities);
    read(g, "positions", c.generator.positions);
    read(g, "questions", c.generator.questions);
    read(g, "explicit_share", c.generator.explicit_share);
    read(g, "implicit_share", c.generator.implicit_share);
    read(g, "temporal_answer_share", c.generator.temporal_answer_share);
    read(g, "ordinal_share", c.generator.ordinal_share);
    read(g, "two_hop_fraction", c.generator.two_hop_fraction);
    read(g, "far_fraction", c.generator.far_fraction);
  }
  c.items = resolve(base, c.items);
  c.facts = resolve(base, c.facts);
  c.benchmark = resolve(base, c.benchmark);
  c.output_dir = resolve(base, c.output_dir);
  c.word_vectors = resolve(base, c.word_vectors);
  c.train.seed = c.seed;
  c.validate();
  return c;
}

PipelineConfig desk_config() {
  PipelineConfig c;
  c.top_temporal = 10;
  c.model.embed_dim = 64;
  c.model.hidden = 64;
  c.model.te_dim = 64;
  c.model.layers = 2;
  c.train.epochs = 20;
  c.train.learning_rate = 1e-2;
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid config JSON: ") + e.what(), 0);
  }
  return config_from_json(j, path.parent_path());
}

nlohmann::ordered_json config_to_json(const PipelineConfig& c) {
  nlohmann::ordered_json j;
  j["items"] = c.items.string();
  j["facts"] = c.facts.string();
  j["benchmark"] = c.benchmark.string();
  j["output_dir"] = c.output_dir.string();
  if (!c.word_vectors.empty()) j["word_vectors"] = c.word_vectors.string();
  j["scorer"] = {{"kind", c.scorer.kind}, {"endpoint", c.scorer.endpoint}, {"timeout_ms", c.scorer.timeout_ms},
                 {"fallback", c.scorer.fallback}};
  j["top_facts"] = c.top_facts;
  j["top_gsts"] = c.top_gsts;
  j["top_temporal"] = c.top_temporal;
  j["max_terminal_groups"] = c.max_terminal_groups;
  j["split"] = c.split;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["ppr_alpha"] = c.ppr_alpha;
  j["model"] = {{"embed_dim", c.model.embed_dim},
                {"hidden", c.model.hidden},
                {"te_dim", c.model.te_dim},
                {"layers", c.model.layers},
                {"te_epoch", c.model.te_epoch},
                {"lstm_dropout", c.model.lstm_dropout},
                {"linear_dropout", c.model.linear_dropout},
                {"fact_dropout", c.model.fact_dropout},
                {"train_words", c.model.train_words},
                {"train_entities", c.model.train_entities},
                {"embed_init", c.model.embed_init},
                {"ablate", c.model.ablation.names()}};
  j["train"] = {{"epochs", c.train.epochs},
                {"batch_size", c.train.batch_size},
                {"learning_rate", c.train.learning_rate},
                {"clip_norm", c.train.clip_norm},
                {"select_on_dev", c.train.select_on_dev}};
  const auto& g = c.generator;
  j["generator"] = {{"persons", g.persons},
                    {"teams", g.teams},
                    {"schools", g.schools},
                    {"awards", g.awards},
                    {"cities", g.cities},
                    {"positions", g.positions},
                    {"questions", g.questions},
                    {"explicit_share", g.explicit_share},
                    {"implicit_share", g.implicit_share},
                    {"temporal_answer_share", g.temporal_answer_share},
                    {"ordinal_share", g.ordinal_share},
                    {"two_hop_fraction", g.two_hop_fraction},
                    {"far_fraction", g.far_fraction}};
  return j;
}

}  // namespace tempqa::pipeline
