#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tempqa/errors.hpp"
#include "tempqa/pipeline/benchmark.hpp"
#include "tempqa/pipeline/config.hpp"
#include "tempqa/pipeline/runner.hpp"
#include "tempqa/pipeline/split.hpp"
#include "tempqa/pipeline/synthetic.hpp"

using namespace tempqa;
using namespace tempqa::pipeline;
using nlohmann::json;

namespace {

namespace P = predicates;

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("tempqa_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

GeneratorConfig small_world() {
  GeneratorConfig g;
  g.persons = 40;
  g.teams = 12;
  g.schools = 8;
  g.awards = 8;
  g.cities = 6;
  g.positions = 5;
  g.questions = 120;
  return g;
}

// Brute-force evaluation of a constraint record over every fact of the KG.
class ConstraintOracle {
 public:
  explicit ConstraintOracle(const kg::KnowledgeGraph& kg) : kg_(kg) {}

  std::set<std::string> answers(const json& c) const {
    const std::string kind = c.at("kind");
    const std::string s = c.at("subject");
    const std::string p = c.at("predicate");
    std::set<std::string> out;
    if (kind == "overlap" || kind == "start_in") {
      const int y = c.at("year");
      for (const auto* f : matching(s, p))
        if (kind == "overlap" ? covers(*f, y) : year_of(*f, P::start) == y) out.insert(f->object);
    } else if (kind == "chain_overlap") {
      const int y = c.at("year");
      for (const auto* link : matching(s, c.at("via")))
        for (const auto* f : matching(link->object, p))
          if (covers(*f, y)) out.insert(f->object);
    } else if (kind == "during" || kind == "after") {
      for (const auto* anchor : matching(s, c.at("anchor_predicate"))) {
        if (anchor->object != c.at("anchor_object").get<std::string>()) continue;
        const auto [a0, a1] = span(*anchor);
        for (const auto* f : matching(s, p)) {
          const auto [b0, b1] = span(*f);
          if (kind == "during" ? (b0 <= a1 && a0 <= b1) : b0 > a1) out.insert(f->object);
        }
      }
    } else if (kind == "when") {
      for (const auto* f : matching(s, p)) {
        if (c.contains("object") && f->object != c.at("object").get<std::string>()) continue;
        if (!c.contains("qualifier")) {
          out.insert(f->object);
          continue;
        }
        for (const auto& q : f->qualifiers)
          if (q.predicate == c.at("qualifier").get<std::string>()) out.insert(q.object);
      }
    } else if (kind == "chain_when") {
      std::set<std::string> frontier{s};
      for (const auto& via : c.at("via")) {
        std::set<std::string> next;
        for (const auto& e : frontier)
          for (const auto* f : matching(e, via)) next.insert(f->object);
        frontier = next;
      }
      for (const auto& e : frontier)
        for (const auto* f : matching(e, p)) out.insert(f->object);
    } else if (kind == "ordinal") {
      auto facts = matching(s, p);
      if (facts.empty()) return out;
      auto earlier = [&](const kg::Fact* a, const kg::Fact* b) { return span(*a).first < span(*b).first; };
      const int rank = c.at("rank");
      out.insert((rank > 0 ? *std::min_element(facts.begin(), facts.end(), earlier)
                           : *std::max_element(facts.begin(), facts.end(), earlier))
                     ->object);
    } else {
      throw std::runtime_error("unknown constraint " + kind);
    }
    return out;
  }

 private:
  std::vector<const kg::Fact*> matching(const std::string& subject, const std::string& predicate) const {
    std::vector<const kg::Fact*> out;
    for (const auto& [id, f] : kg_.facts())
      if (f.subject == subject && f.predicate == predicate) out.push_back(&f);
    return out;
  }
  std::optional<int> year_of(const kg::Fact& f, const char* qualifier) const {
    for (const auto& q : f.qualifiers)
      if (q.predicate == qualifier) return kg_.item(q.object).time->year;
    return std::nullopt;
  }
  std::pair<int, int> span(const kg::Fact& f) const {
    if (auto y = year_of(f, P::point)) return {*y, *y};
    return {year_of(f, P::start).value(), year_of(f, P::end).value_or(year_of(f, P::start).value())};
  }
  bool covers(const kg::Fact& f, int y) const {
    const auto [a, b] = span(f);
    return a <= y && y <= b;
  }

  const kg::KnowledgeGraph& kg_;
};

}  // namespace

TEST_CASE("synthetic generator is deterministic") {
  const auto a = generate_synthetic(small_world(), 7);
  const auto b = generate_synthetic(small_world(), 7);
  const auto da = scratch_dir("gen_a"), db = scratch_dir("gen_b");
  write_corpus(a, da);
  write_corpus(b, db);
  for (const char* f : {"items.jsonl", "facts.jsonl", "questions.jsonl"}) {
    CHECK(!slurp(da / f).empty());
    CHECK(slurp(da / f) == slurp(db / f));
  }
  const auto c = generate_synthetic(small_world(), 8);
  CHECK(c.questions != a.questions);
  std::filesystem::remove_all(da);
  std::filesystem::remove_all(db);
}

TEST_CASE("synthetic questions follow the requested category shares") {
  auto cfg = small_world();
  cfg.questions = 150;
  cfg.explicit_share = 0.25;
  cfg.implicit_share = 0.25;
  cfg.temporal_answer_share = 0.35;
  cfg.ordinal_share = 0.15;
  const auto corpus = generate_synthetic(cfg, 3);
  REQUIRE(corpus.questions.size() == 150);
  std::map<std::string, int> counts;
  for (const auto& q : corpus.questions) {
    REQUIRE(q.categories.size() == 1);
    ++counts[q.categories[0]];
  }
  CHECK(std::abs(counts["explicit"] - 150 * 0.25) <= 1);
  CHECK(std::abs(counts["implicit"] - 150 * 0.25) <= 1);
  CHECK(std::abs(counts["temporal_answer"] - 150 * 0.35) <= 1);
  CHECK(std::abs(counts["ordinal"] - 150 * 0.15) <= 1);

  std::set<std::string> texts;
  for (const auto& q : corpus.questions) texts.insert(q.text);
  CHECK(texts.size() == corpus.questions.size());
}

TEST_CASE("every synthetic answer set equals an exhaustive constraint search") {
  const auto corpus = generate_synthetic(small_world(), 11);
  ConstraintOracle oracle(corpus.kg);
  std::set<std::string> kinds;
  for (const auto& q : corpus.questions) {
    INFO(q.id << " " << q.text);
    kinds.insert(q.constraint.at("kind").get<std::string>());
    const std::set<std::string> expected(q.answers.begin(), q.answers.end());
    CHECK(oracle.answers(q.constraint) == expected);
    for (const auto& a : q.answers) CHECK(corpus.kg.has_item(a));
  }
  for (const char* k : {"overlap", "start_in", "chain_overlap", "during", "after", "when", "chain_when", "ordinal"})
    CHECK(kinds.count(k));
}

TEST_CASE("synthetic hop distances") {
  auto cfg = small_world();
  cfg.questions = 200;
  const auto corpus = generate_synthetic(cfg, 5);
  int within_two = 0;
  for (const auto& q : corpus.questions) {
    CHECK(q.hops >= 1);
    CHECK(q.hops <= 3);
    within_two += q.hops <= 2;
  }
  CHECK(within_two >= std::lround((1 - cfg.far_fraction) * cfg.questions));
}

TEST_CASE("generator rejects tiny worlds") {
  GeneratorConfig cfg;
  cfg.persons = 5;
  cfg.teams = 2;
  cfg.schools = 2;
  cfg.awards = 2;
  cfg.cities = 1;
  cfg.positions = 1;
  CHECK_THROWS_AS(generate_synthetic(cfg, 1), ContractViolation);
}

TEST_CASE("dataset splitter") {
  for (std::size_t n : {0u, 1u, 7u, 100u, 1001u}) {
    const auto s = split_dataset(n, {0.6, 0.2, 0.2}, 42);
    std::vector<std::size_t> all;
    for (const auto* part : {&s.train, &s.dev, &s.test}) {
      CHECK(std::is_sorted(part->begin(), part->end()));
      all.insert(all.end(), part->begin(), part->end());
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(n);
    for (std::size_t i = 0; i < n; ++i) expected[i] = i;
    CHECK(all == expected);
    const auto sizes = apportion(static_cast<int>(n), {0.6, 0.2, 0.2});
    CHECK(s.train.size() == static_cast<std::size_t>(sizes[0]));
    CHECK(s.dev.size() == static_cast<std::size_t>(sizes[1]));
    CHECK(s.test.size() == static_cast<std::size_t>(sizes[2]));
  }
  const auto s = split_dataset(1000, {0.6, 0.2, 0.2}, 42);
  CHECK(s.train.size() == 600);
  CHECK(s.dev.size() == 200);
  CHECK(s.test.size() == 200);
  CHECK(split_dataset(1000, {0.6, 0.2, 0.2}, 42).test == s.test);
  CHECK(split_dataset(1000, {0.6, 0.2, 0.2}, 43).test != s.test);
  CHECK(&s.named("dev") == &s.dev);
  CHECK_THROWS_AS(s.named("validation"), ContractViolation);
  CHECK(apportion(10, {1, 1, 1}) == std::vector<int>{4, 3, 3});
}

TEST_CASE("benchmark files") {
  std::istringstream in(
      R"({"id":"q1","question":"When was Malia born?","answers":["1998-07-04"],"categories":["temporal_answer"]})"
      "\n\n"
      R"({"id":"q2","question":"Who?","answers":["malia"]})"
      "\n");
  const auto qs = load_benchmark(in);
  REQUIRE(qs.size() == 2);
  CHECK(qs[0].hops == 0);
  CHECK(qs[1].constraint.is_null());
  std::ostringstream out;
  dump_benchmark(qs, out);
  std::istringstream again(out.str());
  CHECK(load_benchmark(again) == qs);

  auto bad = [](const std::string& text) {
    std::istringstream s(text);
    return load_benchmark(s);
  };
  CHECK_THROWS_AS(bad(R"({"id":"q1","question":"x","answers":[]})"), ParseError);
  CHECK_THROWS_AS(bad(R"({"id":"q1","question":"x"})"), ParseError);
  CHECK_THROWS_AS(bad("{not json"), ParseError);
  CHECK_THROWS_AS(bad(R"({"id":"q1","question":"x","answers":["a"]})"
                      "\n"
                      R"({"id":"q1","question":"y","answers":["b"]})"),
                  ParseError);

  kg::KnowledgeGraph g;
  g.add_item({"malia", "Malia", kg::ItemKind::entity, {}, std::nullopt});
  g.add_item({"t1998", "4 July 1998", kg::ItemKind::timestamp, {}, kg::Timestamp::of_day(1998, 7, 4)});
  CHECK(resolve_answers({"1998-07-04", "malia", "unknown"}, g) == std::set<kg::ItemId>{"malia", "t1998"});
}

TEST_CASE("config documents") {
  const auto c = config_from_json(json::parse(R"({"top_facts":10,"model":{"layers":2,"ablate":["atr"]},
                                                  "train":{"epochs":3},"items":"kg/items.jsonl"})"),
                                  "/data");
  CHECK(c.top_facts == 10);
  CHECK(c.model.layers == 2);
  CHECK(c.model.ablation.atr);
  CHECK(c.train.epochs == 3);
  CHECK(c.items == std::filesystem::path("/data/kg/items.jsonl"));
  CHECK(c.top_gsts == 25);

  const auto round = config_from_json(json::parse(config_to_json(c).dump()));
  CHECK(config_to_json(round) == config_to_json(c));

  CHECK_THROWS_AS(config_from_json(json::parse(R"({"top_fact":10})")), ParseError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"model":{"layers":"two"}})")), ParseError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"model":{"ablate":["attention"]}})")), std::exception);
  CHECK_THROWS_AS(config_from_json(json::parse("[1,2]")), ParseError);

  PipelineConfig bad;
  bad.split = {0.5, 0.2, 0.2};
  CHECK_THROWS_AS(bad.validate(), ContractViolation);
  bad = PipelineConfig{};
  bad.top_gsts = 0;
  CHECK_THROWS_AS(bad.validate(), ContractViolation);
  CHECK_NOTHROW(desk_config().validate());
}

TEST_CASE("metrics of an empty split are absent") {
  CHECK(metrics_json(std::nullopt).is_null());
  CHECK(format_metrics("dev", std::nullopt).find("absent") != std::string::npos);
  rgcn::Metrics zero;
  CHECK(!metrics_json(zero).is_null());
}

TEST_CASE("small end-to-end run") {
  const auto dir = scratch_dir("run");
  auto gen = small_world();
  gen.questions = 40;
  write_corpus(generate_synthetic(gen, 2), dir);

  auto cfg = desk_config();
  cfg.items = dir / "items.jsonl";
  cfg.facts = dir / "facts.jsonl";
  cfg.benchmark = dir / "questions.jsonl";
  cfg.split = {0.6, 0.2, 0.2};
  cfg.model.embed_dim = cfg.model.hidden = cfg.model.te_dim = 8;
  cfg.model.layers = 1;
  cfg.train.epochs = 2;
  cfg.workers = 2;

  std::string first_report;
  for (int round = 0; round < 2; ++round) {
    cfg.output_dir = dir / ("out" + std::to_string(round));
    Workspace ws(cfg);
    const auto report = run_pipeline(ws, {"test", round == 0});
    for (const char* f : {"stage_report.json", "stage_report.txt", "model.ckpt", "train_log.json",
                          "predictions.jsonl", "report.json", "report.txt"})
      CHECK(std::filesystem::exists(cfg.output_dir / f));
    if (round == 0) {
      first_report = slurp(cfg.output_dir / "report.json");
      CHECK(std::filesystem::exists(cfg.output_dir / "graphs"));
      const auto j = json::parse(first_report);
      const auto& rows = j.at("stage1").at("all").at("rows");
      REQUIRE(rows.size() == kStageCount);
      for (std::size_t i = 0; i < kStageCount; ++i) CHECK(rows[i].at("stage") == kStageNames[i]);
      CHECK(j.at("metrics").at("questions").get<int>() == 8);

      const auto prepared = ws.prepare(ws.split().train);
      for (const auto& pq : prepared) {
        if (!pq.stage1) continue;
        const auto& g = pq.stage1->gold_present;
        // Filtering steps never gain gold, adding steps never lose it.
        CHECK((!g[1] || g[0]));
        CHECK((!g[3] || g[2]));
        CHECK((!g[1] || g[2]));
        CHECK((!g[3] || g[4]));
        CHECK((!g[4] || g[5]));
        CHECK((!g[5] || g[6]));
      }
      const auto records = read_predictions(cfg.output_dir / "predictions.jsonl");
      CHECK(records.size() == ws.split().test.size());
      const auto m = evaluate_predictions(records, ws);
      REQUIRE(m);
      CHECK(m->p_at_1 == j.at("metrics").at("p_at_1").get<double>());
    } else {
      CHECK(slurp(cfg.output_dir / "report.json") == first_report);
      CHECK(slurp(cfg.output_dir / "model.ckpt") == slurp(dir / "out0" / "model.ckpt"));
      CHECK(slurp(cfg.output_dir / "predictions.jsonl") == slurp(dir / "out0" / "predictions.jsonl"));
    }
  }
  std::filesystem::remove_all(dir);
}
