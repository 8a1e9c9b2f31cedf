#include "tempqa/pipeline/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "tempqa/errors.hpp"
#include "tempqa/graph/answer_graph.hpp"
#include "tempqa/kg/io.hpp"
#include "tempqa/numeric/layers.hpp"
#include "tempqa/relevance/remote.hpp"
#include "tempqa/rgcn/relational_graph.hpp"

namespace tempqa::pipeline {
namespace {

using nlohmann::ordered_json;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NotFoundError("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const ordered_json& j) { write_text(path, j.dump(2) + "\n"); }

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

std::vector<const Stage1Result*> results_of(const std::vector<PreparedQuestion>& prepared,
                                            const std::function<bool(const PreparedQuestion&)>& keep) {
  std::vector<const Stage1Result*> out;
  for (const auto& p : prepared)
    if (p.stage1 && keep(p)) out.push_back(&*p.stage1);
  return out;
}

std::size_t failures(const std::vector<PreparedQuestion>& prepared) {
  std::size_t n = 0;
  for (const auto& p : prepared) n += p.stage1 ? 0 : 1;
  return n;
}

}  // namespace

Workspace::Workspace(PipelineConfig config) : config_(std::move(config)) {
  config_.validate();
  kg_ = kg::load_kg(config_.items, config_.facts);
  questions_ = load_benchmark(config_.benchmark);
  split_ = split_dataset(questions_.size(), config_.split, config_.seed);
  detector_ = std::make_unique<question::GazetteerDetector>(kg_);
  analyzer_ = std::make_unique<question::QuestionAnalyzer>(std::vector<const question::EntityDetector*>{detector_.get()});
  encoder_ = relevance::make_kg_encoder(kg_);
  auto lexical = std::make_shared<relevance::LexicalScorer>(encoder_);
  if (config_.scorer.kind == "remote") {
    const auto timeout = std::chrono::milliseconds(config_.scorer.timeout_ms);
    std::shared_ptr<const relevance::RelevanceScorer> remote;
    try {
      remote = std::make_shared<relevance::RemoteScorer>(relevance::open_channel(config_.scorer.endpoint, timeout),
                                                         timeout);
    } catch (const ScoringError& e) {
      if (!config_.scorer.fallback) throw;
      spdlog::warn("scorer endpoint unavailable ({}); using the lexical scorer", e.what());
    }
    if (!remote)
      scorer_ = lexical;
    else if (config_.scorer.fallback)
      scorer_ = std::make_shared<relevance::FallbackScorer>(remote, lexical);
    else
      scorer_ = remote;
  } else {
    scorer_ = lexical;
  }
}

std::vector<PreparedQuestion> Workspace::prepare(const std::vector<std::size_t>& indices) const {
  std::vector<std::size_t> missing;
  for (std::size_t i : indices)
    if (!cache_.count(i)) missing.push_back(i);
  std::vector<PreparedQuestion> fresh(missing.size());
  const Stage1Options options{static_cast<std::size_t>(config_.top_facts), static_cast<std::size_t>(config_.top_gsts),
                              static_cast<std::size_t>(config_.top_temporal),
                              static_cast<std::size_t>(config_.max_terminal_groups)};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < missing.size(); k = next++) {
      auto& p = fresh[k];
      p.index = missing[k];
      const auto& q = questions_.at(p.index);
      p.gold = resolve_answers(q.answers, kg_);
      try {
        p.stage1 = run_stage1(q.text, p.gold, kg_, *analyzer_, *scorer_, *encoder_, options);
      } catch (const std::exception& e) {
        p.error = e.what();
        spdlog::error("stage 1 failed for question {}: {}", q.id, e.what());
      }
    }
  };
  unsigned threads = config_.workers > 0 ? static_cast<unsigned>(config_.workers) : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(missing.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& p : fresh) cache_.emplace(p.index, std::move(p));
  std::vector<PreparedQuestion> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(cache_.at(i));
  return out;
}

std::optional<rgcn::QAExample> Workspace::example(const PreparedQuestion& q) const {
  if (!q.stage1 || q.stage1->answer_graph.empty()) return std::nullopt;
  auto rg = rgcn::build_relational_graph(q.stage1->answer_graph, kg_);
  std::set<int> gold;
  for (const auto& a : q.gold)
    if (auto n = rg.node(a)) gold.insert(*n);
  return rgcn::make_example(questions_.at(q.index).id, q.stage1->analysis, std::move(rg), std::move(gold),
                            config_.ppr_alpha);
}

ordered_json stage_report_json(const StageReport& r) {
  ordered_json j;
  j["questions"] = r.questions;
  j["rows"] = ordered_json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"stage", row.name}, {"recall", row.recall}, {"mean_candidates", row.mean_candidates}});
  return j;
}

ordered_json metrics_json(const std::optional<rgcn::Metrics>& m) {
  if (!m) return nullptr;
  return {{"questions", m->questions}, {"p_at_1", m->p_at_1}, {"mrr", m->mrr}, {"hit_at_5", m->hit_at_5}};
}

std::string format_stage_report(const std::string& title, const StageReport& r) {
  std::ostringstream out;
  out << title << " (" << r.questions << " questions)\n";
  char line[160];
  std::snprintf(line, sizeof line, "  %-36s %8s %12s\n", "Step in Stage 1", "Recall", "#Candidates");
  out << line;
  for (const auto& row : r.rows) {
    std::snprintf(line, sizeof line, "  %-36s %8s %12s\n", row.name.c_str(), fixed(row.recall, 3).c_str(),
                  fixed(row.mean_candidates, 1).c_str());
    out << line;
  }
  return out.str();
}

std::string format_metrics(const std::string& title, const std::optional<rgcn::Metrics>& m) {
  std::ostringstream out;
  out << title << '\n';
  if (!m) {
    out << "  no questions; metrics absent\n";
    return out.str();
  }
  out << "  questions " << m->questions << "\n  P@1   " << fixed(m->p_at_1, 3) << "\n  MRR   " << fixed(m->mrr, 3)
      << "\n  Hit@5 " << fixed(m->hit_at_5, 3) << '\n';
  return out.str();
}

void write_predictions(const std::vector<PredictionRecord>& records, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const auto& r : records) {
    ordered_json j;
    j["id"] = r.id;
    j["ranking"] = ordered_json::array();
    for (const auto& [item, p] : r.ranking) j["ranking"].push_back({item, p});
    out << j.dump() << '\n';
  }
  write_text(path, out.str());
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot read predictions " + path.string());
  std::vector<PredictionRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      PredictionRecord r;
      r.id = j.at("id").get<std::string>();
      for (const auto& e : j.at("ranking")) r.ranking.emplace_back(e.at(0).get<std::string>(), e.at(1).get<double>());
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad prediction record: ") + e.what(), n);
    }
  }
  return out;
}

std::optional<rgcn::Metrics> evaluate_predictions(const std::vector<PredictionRecord>& records, const Workspace& ws) {
  std::map<std::string, const BenchmarkQuestion*> by_id;
  for (const auto& q : ws.questions()) by_id[q.id] = &q;
  std::vector<std::vector<std::string>> rankings;
  std::vector<std::set<std::string>> gold;
  for (const auto& r : records) {
    auto it = by_id.find(r.id);
    if (it == by_id.end()) throw NotFoundError("prediction for unknown question " + r.id);
    std::vector<std::string> items;
    for (const auto& [item, p] : r.ranking) items.push_back(item);
    rankings.push_back(std::move(items));
    gold.push_back(resolve_answers(it->second->answers, ws.kg()));
  }
  return rgcn::evaluate(rankings, gold);
}

ordered_json build_graphs(const Workspace& ws, const RunOptions& options) {
  const auto& cfg = ws.config();
  std::filesystem::create_directories(cfg.output_dir);
  const auto prepared = ws.prepare(all_indices(ws.questions().size()));
  const auto& split = ws.split().named(options.split);
  const std::set<std::size_t> in_split(split.begin(), split.end());

  const auto all = stage_recall(results_of(prepared, [](const PreparedQuestion&) { return true; }));
  const auto near = stage_recall(results_of(prepared, [&](const PreparedQuestion& p) {
    const int hops = ws.questions()[p.index].hops;
    return hops > 0 && hops <= 2;
  }));
  const auto part = stage_recall(results_of(prepared, [&](const PreparedQuestion& p) { return in_split.count(p.index); }));

  ordered_json j;
  j["all"] = stage_report_json(all);
  j["within_two_hops"] = stage_report_json(near);
  j["split"] = options.split;
  j["split_report"] = stage_report_json(part);
  j["failures"] = failures(prepared);
  write_json(cfg.output_dir / "stage_report.json", j);
  write_text(cfg.output_dir / "stage_report.txt",
             format_stage_report("All questions", all) + "\n" +
                 format_stage_report("Questions with answers within two hops", near) + "\n" +
                 format_stage_report("Split " + options.split, part));

  if (options.dump_graphs) {
    const auto dir = cfg.output_dir / "graphs";
    std::filesystem::create_directories(dir);
    for (const auto& p : prepared) {
      if (!p.stage1) continue;
      std::ostringstream out;
      graph::dump_graph(p.stage1->answer_graph, ws.kg(), out, p.stage1->tree_edges);
      write_text(dir / (ws.questions()[p.index].id + ".jsonl"), out.str());
    }
  }
  return j;
}

namespace {

std::vector<rgcn::QAExample> examples_for(const Workspace& ws, const std::vector<std::size_t>& indices) {
  std::vector<rgcn::QAExample> out;
  for (const auto& p : ws.prepare(indices))
    if (auto ex = ws.example(p)) out.push_back(std::move(*ex));
  return out;
}

}  // namespace

rgcn::TrainReport train_model(const Workspace& ws, rgcn::Model& model) {
  const auto& cfg = ws.config();
  std::filesystem::create_directories(cfg.output_dir);
  const auto train = examples_for(ws, ws.split().train);
  const auto dev = examples_for(ws, ws.split().dev);
  model.register_vocabulary(train);
  const auto report = rgcn::train(model, train, dev, cfg.train, [](const rgcn::EpochStats& s) {
    spdlog::info("epoch {} loss {:.6f} dev P@1 {:.3f}", s.epoch, s.loss, s.dev_p_at_1);
  });
  numeric::save_checkpoint(model.params(), cfg.output_dir / "model.ckpt");
  ordered_json log;
  log["examples"] = report.examples;
  log["best_epoch"] = report.best_epoch;
  log["epochs"] = ordered_json::array();
  for (const auto& e : report.epochs) log["epochs"].push_back({{"epoch", e.epoch}, {"loss", e.loss}, {"dev_p_at_1", e.dev_p_at_1}});
  write_json(cfg.output_dir / "train_log.json", log);
  return report;
}

std::vector<PredictionRecord> predict_split(const Workspace& ws, rgcn::Model& model, const std::string& split) {
  std::vector<PredictionRecord> out;
  for (const auto& p : ws.prepare(ws.split().named(split))) {
    PredictionRecord r;
    r.id = ws.questions()[p.index].id;
    if (auto ex = ws.example(p))
      for (const auto& [node, prob] : rgcn::rank_nodes(model, *ex)) r.ranking.emplace_back(ex->graph.nodes[node].item, prob);
    out.push_back(std::move(r));
  }
  return out;
}

ordered_json run_pipeline(const Workspace& ws, const RunOptions& options) {
  const auto& cfg = ws.config();
  auto stage = build_graphs(ws, options);
  rgcn::Model model(cfg.model, cfg.seed);
  if (!cfg.word_vectors.empty()) model.words().load_text(cfg.word_vectors);
  const auto train = train_model(ws, model);
  const auto predictions = predict_split(ws, model, options.split);
  write_predictions(predictions, cfg.output_dir / "predictions.jsonl");
  const auto metrics = evaluate_predictions(predictions, ws);

  ordered_json j;
  j["config"] = config_to_json(cfg);
  for (const char* key : {"items", "facts", "benchmark", "word_vectors"})
    if (j["config"].contains(key)) j["config"][key] = std::filesystem::path(j["config"][key].get<std::string>()).filename().string();
  j["config"].erase("output_dir");
  j["stage1"] = stage;
  j["train"] = {{"examples", train.examples}, {"best_epoch", train.best_epoch}, {"epochs", train.epochs.size()}};
  j["split"] = options.split;
  j["metrics"] = metrics_json(metrics);
  write_json(cfg.output_dir / "report.json", j);
  std::string text;
  std::ifstream stage_text(cfg.output_dir / "stage_report.txt");
  text.assign(std::istreambuf_iterator<char>(stage_text), {});
  text += "\n" + format_metrics("Answer prediction on split " + options.split, metrics);
  write_text(cfg.output_dir / "report.txt", text);
  return j;
}

}  // namespace tempqa::pipeline
