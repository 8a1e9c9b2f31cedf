// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ppr_oracle.hpp"
#include "tempqa/graph/steiner.hpp"
#include "tempqa/numeric/gradcheck.hpp"
#include "tempqa/numeric/ppr.hpp"
#include "tempqa/numeric/time_encoding.hpp"
#include "tempqa/pipeline/runner.hpp"
#include "tempqa/pipeline/synthetic.hpp"
#include "tempqa/question/analysis.hpp"
#include "tempqa/rgcn/metrics.hpp"
#include "tempqa/rgcn/model.hpp"
#include "tempqa/rgcn/train.hpp"

using namespace tempqa;
using numeric::Rng;
using numeric::Tape;
using numeric::Tensor;
using numeric::Var;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

bool same_cost(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

std::vector<testing::SteinerInstance> steiner_instances() {
  Rng rng(20240101);
  std::vector<testing::SteinerInstance> out;
  for (int i = 0; i < 100; ++i) out.push_back(testing::random_steiner_instance(rng, 12, 20, 3, 3));
  return out;
}

// 1
Outcome gst_exactness() {
  int ok = 0;
  double solver_time = 0;
  for (const auto& in : steiner_instances()) {
    const auto oracle = testing::all_group_steiner_trees(in.graph, in.groups);
    const auto t0 = std::chrono::steady_clock::now();
    const auto got = graph::steiner_topk(in.graph, in.groups, 1);
    solver_time += seconds_since(t0);
    if (oracle.empty() ? got.empty()
                       : (got.size() == 1 && same_cost(got[0].cost, oracle[0].cost) &&
                          graph::is_group_steiner_tree(in.graph, got[0].edges, in.groups, got[0].nodes.front())))
      ++ok;
  }
  return {ok == 100 && solver_time < 10.0,
          std::to_string(ok) + "/100 minimum costs match, solver time " + num("%.3f", solver_time) + " s"};
}

// 2
Outcome gst_topk() {
  int ok = 0;
  for (const auto& in : steiner_instances()) {
    const auto oracle = testing::all_group_steiner_trees(in.graph, in.groups);
    const auto got = graph::steiner_topk(in.graph, in.groups, 5);
    bool good = got.size() == std::min<std::size_t>(5, oracle.size());
    std::set<std::vector<int>> distinct;
    for (std::size_t i = 0; good && i < got.size(); ++i) {
      good = same_cost(got[i].cost, oracle[i].cost) && (i == 0 || got[i].cost >= got[i - 1].cost) &&
             graph::is_group_steiner_tree(in.graph, got[i].edges, in.groups, got[i].nodes.front());
      distinct.insert(got[i].edges);
    }
    if (good && distinct.size() == got.size()) ++ok;
  }
  return {ok == 100, std::to_string(ok) + "/100 top-5 cost sequences match"};
}

// 3
Outcome shortest_path_equality() {
  Rng rng(33);
  int kgs_ok = 0, pairs = 0;
  for (int i = 0; i < 50; ++i) {
    const auto g = testing::random_kg(rng, 50);
    std::vector<std::string> entities;
    for (const auto& [id, item] : g.items())
      if (item.kind == kg::ItemKind::entity) entities.push_back(id);
    bool good = true;
    for (int k = 0; k < 6; ++k) {
      const auto& a = entities[rng.uniform_index(entities.size())];
      const auto& b = entities[rng.uniform_index(entities.size())];
      std::set<std::vector<kg::FactId>> got;
      for (const auto& p : kg::shortest_paths(a, b, g)) got.insert(p.facts);
      good = good && got == testing::brute_force_shortest_paths(a, b, g);
      ++pairs;
    }
    kgs_ok += good;
  }
  return {kgs_ok == 50, std::to_string(kgs_ok) + "/50 KGs exact over " + std::to_string(pairs) + " entity pairs"};
}

// 4
Outcome time_encoding() {
  const Tensor e = numeric::position_encode(2, 4);
  double formula_err = 0, printed_err = 0;
  const double printed[] = {0.9093, -0.4161, 0.0200, 0.9998};
  for (int j = 0; j < 4; ++j) {
    const int i = j / 2;
    const double angle = 2.0 / std::pow(10000.0, 2.0 * i / 4);
    formula_err = std::max(formula_err, std::abs(e[j] - (j % 2 ? std::cos(angle) : std::sin(angle))));
    printed_err = std::max(printed_err, std::abs(e[j] - printed[j]));
  }
  std::vector<std::vector<double>> codes;
  for (int y = 1900; y < 2100; ++y)
    for (int m = 1; m <= 12; ++m) {
      static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
      const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
      const int n = days[m - 1] + (m == 2 && leap);
      for (int d = 1; d <= n; ++d) codes.push_back(numeric::time_encode(kg::Timestamp::of_day(y, m, d), 100).data);
    }
  const std::size_t total = codes.size();
  std::sort(codes.begin(), codes.end());
  const std::size_t unique = static_cast<std::size_t>(std::unique(codes.begin(), codes.end()) - codes.begin());
  return {formula_err <= 1e-9 && printed_err <= 5e-5 && unique == total,
          "max deviation from the formula " + num("%.1e", formula_err) + ", from the printed 4-digit values " +
              num("%.1e", printed_err) + "; " + std::to_string(unique) + "/" + std::to_string(total) +
              " distinct daily codes"};
}

rgcn::ModelConfig small_model(int layers = 2) {
  rgcn::ModelConfig c;
  c.embed_dim = 6;
  c.hidden = 5;
  c.te_dim = 6;
  c.layers = layers;
  c.lstm_dropout = c.linear_dropout = c.fact_dropout = 0;
  return c;
}

struct ObamaExample {
  kg::KnowledgeGraph kg = testing::obama_kg();
  question::GazetteerDetector gaz{kg};
  question::QuestionAnalyzer analyzer{{&gaz}};
  rgcn::QAExample ex;

  ObamaExample() {
    std::vector<relevance::ScoredFact> scored;
    for (const char* f : {"f_potus", "f_spouse", "f_child_malia", "f_malia_school", "f_malia_dob"})
      scored.push_back(relevance::ScoredFact::of(f, 0.5));
    auto g = rgcn::build_relational_graph(graph::induce_graph(scored, kg), kg);
    std::set<int> gold{*g.node("t2009-01-20")};
    ex = rgcn::make_example("q", analyzer.analyze("When did Barack Obama become president?"), std::move(g), gold);
  }
};

// 5
Outcome gradient_checks() {
  ObamaExample o;
  const auto& ex = o.ex;
  rgcn::Model model(small_model(), 21);
  model.register_vocabulary({ex});
  auto params = model.params().all();
  const Tensor probe = Tensor::column({0.4, -0.7, 0.2, 0.9, -0.3});
  auto probe_of = [&](Tape& t, Var v) { return numeric::dot(v, t.constant(probe)); };

  std::vector<std::pair<std::string, std::function<Var(Tape&)>>> ops;
  Rng rng(4);
  numeric::ParameterStore store;
  auto d1 = numeric::Dense::create(store, "ffn.1", 4, 5, rng);
  auto d2 = numeric::Dense::create(store, "ffn.2", 5, 1, rng);
  auto lstm = numeric::Lstm::create(store, "lstm", 4, 5, rng);
  auto& x = store.create("x", 4, 1, rng);
  for (auto& v : d1.b->value.data) v = rng.uniform(-0.3, 0.3);
  for (auto& v : lstm.b->value.data) v += rng.uniform(-0.3, 0.3);
  auto layer_params = store.all();

  struct Check {
    std::string name;
    std::function<Var(Tape&)> f;
    std::vector<numeric::Parameter*> params;
  };
  std::vector<Check> checks = {
      {"ffn", [&](Tape& t) { return d2(t, numeric::relu(d1(t, t.param(x)))); }, layer_params},
      {"lstm encoder",
       [&](Tape& t) {
         const Var a = t.param(x);
         const Var b = t.constant(Tensor::column({0.5, -0.1, 0.3, 0.8}));
         return probe_of(t, lstm.encode(t, {a, b, numeric::scale(a, -0.5)}));
       },
       layer_params},
      {"question encoder",
       [&](Tape& t) {
         rgcn::Model::Pass p(t);
         return probe_of(t, model.init_question(p, ex.qa));
       },
       params},
      {"tee",
       [&](Tape& t) {
         rgcn::Model::Pass p(t);
         std::vector<Var> h;
         for (const auto& n : ex.graph.nodes) h.push_back(model.init_entity(p, n));
         std::vector<Var> facts;
         for (const auto& f : ex.graph.temporal_facts) facts.push_back(model.encode_fact(p, f, h));
         return probe_of(t, model.encode_tee(p, facts));
       },
       params},
      {"atr",
       [&](Tape& t) {
         rgcn::Model::Pass p(t);
         auto w = model.atr(p, model.init_question(p, ex.qa), ex.graph, ex.graph.out_edges[*ex.graph.node("obama")]);
         std::vector<double> c;
         for (std::size_t i = 0; i < w.size(); ++i) c.push_back(std::sin(1.0 + static_cast<double>(i)));
         return numeric::dot(numeric::concat(w), t.constant(Tensor::column(c)));
       },
       params},
      {"entity update",
       [&](Tape& t) {
         rgcn::Model::Pass p(t);
         const Var hq = model.init_question(p, ex.qa);
         const Var he = model.init_entity(p, ex.graph.nodes[0]);
         const Var msg = model.psi(p, 1, "child", model.init_entity(p, ex.graph.nodes[1]), 0.4);
         return probe_of(t, model.update_entity(p, 1, he, hq, t.constant(probe), msg));
       },
       params},
      {"classifier",
       [&](Tape& t) {
         rgcn::Model::Pass p(t);
         return model.classify(p, model.init_entity(p, ex.graph.nodes[0]));
       },
       params},
      {"full model loss",
       [&](Tape& t) {
         rgcn::Model::Pass p(t);
         return rgcn::example_loss(model, p, ex);
       },
       params},
  };
  bool pass = true;
  std::string detail;
  for (const auto& c : checks) {
    const auto r = numeric::backprop_check(c.f, c.params, 1e-5);
    pass = pass && r.max_relative_error < 1e-4;
    detail += (detail.empty() ? "" : ", ") + c.name + " " + num("%.1e", r.max_relative_error);
  }
  return {pass, "max relative error: " + detail};
}

// 6
Outcome ppr_linear_solve() {
  Rng rng(61);
  double max_err = 0, max_mass = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_index(10));
    std::vector<std::vector<int>> out(n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (rng.bernoulli(0.3)) out[u].push_back(v);
    std::vector<int> seeds = {static_cast<int>(rng.uniform_index(n))};
    if (rng.bernoulli(0.5)) seeds.push_back(static_cast<int>(rng.uniform_index(n)));
    const auto r = numeric::ppr(out, seeds, 0.15);
    const auto o = testing::ppr_oracle(out, seeds, 0.15);
    double mass = 0;
    for (int i = 0; i < n; ++i) {
      max_err = std::max(max_err, std::abs(r.scores[i] - o[i]));
      mass += r.scores[i];
    }
    max_mass = std::max(max_mass, std::abs(mass - 1));
  }
  return {max_err <= 1e-8 && max_mass <= 1e-10,
          "100 graphs, max deviation " + num("%.1e", max_err) + ", max mass error " + num("%.1e", max_mass)};
}

// 7
Outcome atr_normalization() {
  Rng rng(71);
  rgcn::Model model(small_model(), 3);
  const char* relations[] = {"educated at", "member of sports team", "spouse", "child", "award received"};
  double worst = 0;
  std::size_t nodes_checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    rgcn::RelationalGraph g;
    const int n = 2 + static_cast<int>(rng.uniform_index(12));
    for (int i = 0; i < n; ++i) {
      g.index["n" + std::to_string(i)] = i;
      g.nodes.push_back({"n" + std::to_string(i), kg::ItemKind::entity, std::nullopt});
    }
    g.out_edges.assign(n, {});
    g.in_edges.assign(n, {});
    const int m = 1 + static_cast<int>(rng.uniform_index(40));
    for (int e = 0; e < m; ++e) {
      rgcn::RelEdge edge;
      edge.src = static_cast<int>(rng.uniform_index(n));
      edge.dst = static_cast<int>(rng.uniform_index(n));
      edge.relation = relations[rng.uniform_index(5)];
      edge.fact = "f" + std::to_string(e);
      for (int k = static_cast<int>(rng.uniform_index(3)); k > 0; --k)
        edge.times.push_back(kg::Timestamp::of_day(1900 + static_cast<int>(rng.uniform_index(150)),
                                                   1 + static_cast<int>(rng.uniform_index(12)),
                                                   1 + static_cast<int>(rng.uniform_index(28))));
      g.out_edges[edge.src].push_back(e);
      g.in_edges[edge.dst].push_back(e);
      g.edges.push_back(std::move(edge));
    }
    Tape t;
    rgcn::Model::Pass p(t);
    Tensor hq(5, 1);
    for (auto& v : hq.data) v = rng.uniform(-3, 3);
    const Var h_q = t.constant(hq);
    for (int v = 0; v < n; ++v) {
      if (g.out_edges[v].empty()) continue;
      double sum = 0;
      for (Var w : model.atr(p, h_q, g, g.out_edges[v])) sum += w.value()[0];
      worst = std::max(worst, std::abs(sum - 1));
      ++nodes_checked;
    }
  }
  return {worst <= 1e-12, std::to_string(nodes_checked) + " nodes, max |sum - 1| = " + num("%.1e", worst)};
}

// 8
Outcome metric_definitions() {
  struct Case {
    std::vector<std::string> ranking;
    std::set<std::string> gold;
    double p1, rr, hit5;
  };
  const std::vector<Case> cases = {
      {{"a", "b"}, {"b"}, 0, 0.5, 1},
      {{"a", "b", "c"}, {"a"}, 1, 1, 1},
      {{"a", "b", "c"}, {"z"}, 0, 0, 0},
      {{"a", "b", "c", "d", "e", "f"}, {"f"}, 0, 1.0 / 6, 0},
      {{"a", "b", "c", "d", "e", "f"}, {"e"}, 0, 0.2, 1},
      {{}, {"a"}, 0, 0, 0},
      {{"a"}, {"a", "b"}, 1, 1, 1},
      {{"x", "a", "b"}, {"a", "b"}, 0, 0.5, 1},
      {{"x", "y", "b", "a"}, {"a", "b"}, 0, 1.0 / 3, 1},
      {{"x", "y", "z", "w", "v", "u", "t", "a"}, {"a"}, 0, 0.125, 0},
      {{"a", "b", "c", "d"}, {"d"}, 0, 0.25, 1},
      {{"b", "a"}, {"b"}, 1, 1, 1},
      {{"c", "b", "a"}, {"a", "z"}, 0, 1.0 / 3, 1},
      {{"p", "q", "r", "s", "t", "u", "v", "w", "x", "y"}, {"y"}, 0, 0.1, 0},
      {{"p", "q", "r", "s", "t", "u", "v", "w", "x", "y"}, {"t", "y"}, 0, 0.2, 1},
      {{"only"}, {"other"}, 0, 0, 0},
      {{"a", "b", "c", "d", "e"}, {"c", "e"}, 0, 1.0 / 3, 1},
      {{"g", "h"}, {"g", "h"}, 1, 1, 1},
      {{"a", "b", "c", "d", "e", "f", "g"}, {"g"}, 0, 1.0 / 7, 0},
      {{"m", "n"}, {"n", "m", "o"}, 1, 1, 1},
  };
  int exact = 0;
  std::vector<std::vector<std::string>> rankings;
  std::vector<std::set<std::string>> golds;
  double p1 = 0, rr = 0, hit5 = 0;
  for (const auto& c : cases) {
    const auto s = rgcn::score_ranking(c.ranking, c.gold);
    exact += s.p_at_1 == c.p1 && s.reciprocal_rank == c.rr && s.hit_at_5 == c.hit5;
    rankings.push_back(c.ranking);
    golds.push_back(c.gold);
    p1 += c.p1;
    rr += c.rr;
    hit5 += c.hit5;
  }
  const auto m = rgcn::evaluate(rankings, golds);
  const double n = static_cast<double>(cases.size());
  const bool averages = m && m->questions == cases.size() && std::abs(m->p_at_1 - p1 / n) <= 1e-15 &&
                        std::abs(m->mrr - rr / n) <= 1e-15 && std::abs(m->hit_at_5 - hit5 / n) <= 1e-15;
  return {exact == 20 && averages && !rgcn::evaluate({}, {}),
          std::to_string(exact) + "/20 rankings exact, averages " + (averages ? "match" : "differ")};
}

// 9
Outcome tagger_table() {
  using question::Category;
  const std::vector<std::pair<const char*, Category>> rows = {
      {"who won oscar for best actress 1986?", Category::explicit_},
      {"which movie did jaco van dormael direct in 2009?", Category::explicit_},
      {"what currency is used in germany 2012?", Category::explicit_},
      {"who was king of france during the ninth crusade?", Category::implicit},
      {"what did thomas jefferson do before he was president?", Category::implicit},
      {"what club did cristiano ronaldo play for after manchester united?", Category::implicit},
      {"what was the first film julie andrews starred in?", Category::ordinal},
      {"what was the second position held by pierre de coubertin?", Category::ordinal},
      {"who is elizabeth taylor's last husband?", Category::ordinal},
      {"what year did lakers win their first championship?", Category::temporal_answer},
      {"when was james cagney's spouse born?", Category::temporal_answer},
      {"when was the last time the orioles won the world series?", Category::temporal_answer},
  };
  int ok = 0;
  for (const auto& [q, c] : rows) ok += question::tag_categories(q)[static_cast<int>(c)] == 1;
  const auto dual =
      question::tag_categories("what was the first film julie andrews starred in after her divorce with tony walton?");
  const bool both =
      dual[static_cast<int>(Category::implicit)] == 1 && dual[static_cast<int>(Category::ordinal)] == 1;
  return {ok == 12 && both,
          std::to_string(ok) + "/12 sample questions tagged, dual example " + (both ? "IMPLICIT+ORDINAL" : "missed")};
}

// Shared state of the end-to-end criteria.
struct Benchmark {
  std::filesystem::path work;
  pipeline::PipelineConfig config;
  nlohmann::ordered_json report;
  double seconds = 0;
  bool ran = false;
  std::string error;

  pipeline::PipelineConfig config_for(const std::string& out) const {
    auto c = config;
    c.output_dir = work / out;
    return c;
  }

  void run_once() {
    if (ran || !error.empty()) return;
    try {
      std::filesystem::create_directories(work);
      config = pipeline::desk_config();
      const auto corpus = pipeline::generate_synthetic(config.generator, config.seed);
      pipeline::write_corpus(corpus, work / "corpus");
      config.items = work / "corpus" / "items.jsonl";
      config.facts = work / "corpus" / "facts.jsonl";
      config.benchmark = work / "corpus" / "questions.jsonl";
      const auto t0 = std::chrono::steady_clock::now();
      pipeline::Workspace ws(config_for("run1"));
      report = pipeline::run_pipeline(ws, {"test", false});
      seconds = seconds_since(t0);
      ran = true;
    } catch (const std::exception& e) {
      error = e.what();
    }
  }
};

// 10
Outcome end_to_end(Benchmark& b) {
  b.run_once();
  if (!b.ran) return {false, "run failed: " + b.error};
  auto recall = [](const nlohmann::ordered_json& rows) {
    std::vector<double> r;
    for (const auto& row : rows) r.push_back(row.at("recall").get<double>());
    return r;
  };
  const auto near = recall(b.report.at("stage1").at("within_two_hops").at("rows"));
  const auto all = recall(b.report.at("stage1").at("all").at("rows"));
  const double final_recall = near.back();
  const auto& metrics = b.report.at("metrics");
  const double p1 = metrics.is_null() ? 0.0 : metrics.at("p_at_1").get<double>();
  // Filter steps (1, 3) may lose recall, adding steps (2, 4, 5, 6) may not.
  bool shape = true;
  for (const auto* r : {&near, &all}) {
    const auto& v = *r;
    shape = shape && v[1] <= v[0] && v[2] >= v[1] && v[3] <= v[2] && v[4] >= v[3] && v[5] >= v[4] && v[6] >= v[5];
  }
  const bool pass = final_recall >= 0.95 && p1 >= 0.80 && b.seconds < 1800 && shape;
  std::string rows;
  for (double v : near) rows += (rows.empty() ? "" : " ") + num("%.3f", v);
  return {pass, "within-2-hop recall by step [" + rows + "], final " + num("%.3f", final_recall) +
                    " (>= 0.95); test P@1 " + num("%.3f", p1) + " (>= 0.80); MRR " +
                    num("%.3f", metrics.is_null() ? 0.0 : metrics.at("mrr").get<double>()) + "; run time " +
                    num("%.0f", b.seconds) + " s (< 1800); recall shape " + (shape ? "ok" : "violated")};
}

// 11
Outcome determinism(Benchmark& b) {
  b.run_once();
  if (!b.ran) return {false, "first run failed: " + b.error};
  try {
    pipeline::Workspace ws(b.config_for("run2"));
    pipeline::run_pipeline(ws, {"test", false});
  } catch (const std::exception& e) {
    return {false, std::string("second run failed: ") + e.what()};
  }
  const char* files[] = {"stage_report.json", "stage_report.txt", "model.ckpt",  "train_log.json",
                         "predictions.jsonl", "report.json",      "report.txt"};
  std::string differing;
  for (const char* f : files) {
    const auto a = slurp(b.work / "run1" / f);
    if (a.empty() || a != slurp(b.work / "run2" / f)) differing += std::string(differing.empty() ? "" : ", ") + f;
  }
  return {differing.empty(), differing.empty() ? "7/7 output files byte-identical across two runs"
                                               : "differing: " + differing};
}

// 12
Outcome atr_ablation(Benchmark& b) {
  b.run_once();
  if (!b.ran) return {false, "run failed: " + b.error};
  auto cfg = b.config_for("run1");
  pipeline::Workspace ws(cfg);
  const auto trained = pipeline::read_predictions(cfg.output_dir / "predictions.jsonl");
  auto ablated_cfg = cfg.model;
  ablated_cfg.ablation.atr = true;
  rgcn::Model ablated(ablated_cfg, cfg.seed);
  numeric::load_checkpoint(ablated.params(), cfg.output_dir / "model.ckpt");
  const auto without = pipeline::predict_split(ws, ablated, "test");
  std::size_t changed_top = 0, changed_any = 0;
  for (std::size_t i = 0; i < trained.size() && i < without.size(); ++i) {
    changed_any += trained[i].ranking != without[i].ranking;
    const bool a = trained[i].ranking.empty(), z = without[i].ranking.empty();
    if (a != z || (!a && trained[i].ranking[0].first != without[i].ranking[0].first)) ++changed_top;
  }
  const auto m = pipeline::evaluate_predictions(without, ws);
  return {changed_any > 0 && trained.size() == without.size(),
          "with ATR replaced by uniform weights, " + std::to_string(changed_any) + "/" +
              std::to_string(trained.size()) + " test rankings change, " + std::to_string(changed_top) +
              " top answers change; P@1 " + num("%.3f", m ? m->p_at_1 : 0.0)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-12"};
  std::vector<int> only;
  std::string work = (std::filesystem::temp_directory_path() / "tempqa_acceptance").string();
  app.add_option("--only", only, "criteria to run (default all)")->check(CLI::Range(1, 12));
  app.add_option("--work-dir", work, "directory for the end-to-end runs");
  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::warn);

  Benchmark bench;
  bench.work = work;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"GST exactness", gst_exactness},
      {"top-k GST", gst_topk},
      {"shortest paths", shortest_path_equality},
      {"time encoding", time_encoding},
      {"gradient checks", gradient_checks},
      {"PPR", ppr_linear_solve},
      {"ATR normalization", atr_normalization},
      {"metrics", metric_definitions},
      {"tagger", tagger_table},
      {"end-to-end synthetic benchmark", [&] { return end_to_end(bench); }},
      {"determinism", [&] { return determinism(bench); }},
      {"ATR ablation", [&] { return atr_ablation(bench); }},
  };
  int failures = 0;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), i) == only.end()) continue;
    const auto& [name, run] = criteria[i - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << "  " << name << " -- " << o.detail << " ["
              << num("%.1f", seconds_since(t0)) << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
