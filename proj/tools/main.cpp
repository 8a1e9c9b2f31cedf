// Command-line driver for the two-stage temporal question answering pipeline.
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "tempqa/errors.hpp"
#include "tempqa/numeric/layers.hpp"
#include "tempqa/pipeline/config.hpp"
#include "tempqa/pipeline/runner.hpp"
#include "tempqa/pipeline/synthetic.hpp"

using namespace tempqa;
using namespace tempqa::pipeline;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string split = "test";
  std::string scorer;
  std::vector<std::string> ablate;
  bool dump_graphs = false;
  int workers = -1;
  std::optional<int> epochs;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "pipeline config JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "override the config seed");
  cmd->add_option("--split", f.split, "train, dev or test")->check(CLI::IsMember({"train", "dev", "test"}));
  cmd->add_option("--scorer", f.scorer, "lexical, or a remote endpoint cmd:<command> / tcp:<host>:<port>");
  cmd->add_option("--ablate", f.ablate, "disable a model component (repeatable)")
      ->check(CLI::IsMember({"tce", "tse", "tee", "te", "atr"}));
  cmd->add_option("--workers", f.workers, "Stage-1 worker threads (0 = all cores)");
  cmd->add_option("--epochs", f.epochs, "override the number of training epochs");
}

PipelineConfig resolve_config(const CommonFlags& f) {
  auto c = load_config(f.config);
  if (f.seed) {
    c.seed = *f.seed;
    c.train.seed = *f.seed;
  }
  if (!f.scorer.empty()) {
    if (f.scorer == "lexical") {
      c.scorer.kind = "lexical";
    } else {
      c.scorer.kind = "remote";
      c.scorer.endpoint = f.scorer;
    }
  }
  for (const auto& a : f.ablate) c.model.ablation.set(a);
  if (f.workers >= 0) c.workers = f.workers;
  if (f.epochs) c.train.epochs = *f.epochs;
  c.validate();
  return c;
}

rgcn::Model load_model(const PipelineConfig& c) {
  rgcn::Model model(c.model, c.seed);
  numeric::load_checkpoint(model.params(), c.output_dir / "model.ckpt");
  return model;
}

void print_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot read " + path.string());
  std::cout << in.rdbuf();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal question answering over knowledge graphs"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "log progress");

  std::string out_dir;
  std::uint64_t gen_seed = 42;
  std::string gen_config;
  auto* generate = app.add_subcommand("generate", "write a synthetic KG, benchmark and config");
  generate->add_option("--out", out_dir, "output directory")->required();
  generate->add_option("--seed", gen_seed, "generator seed");
  generate->add_option("--config", gen_config, "config JSON whose generator section to use")
      ->check(CLI::ExistingFile);

  CommonFlags flags;
  auto* build = app.add_subcommand("build-graph", "run Stage 1 and write the stage recall report");
  add_common(build, flags);
  build->add_flag("--dump-graphs", flags.dump_graphs, "write answer graphs under graphs/");
  auto* train = app.add_subcommand("train", "train the answer model on the train split");
  add_common(train, flags);
  auto* predict = app.add_subcommand("predict", "rank answers for a split with the trained model");
  add_common(predict, flags);
  auto* evaluate = app.add_subcommand("evaluate", "score predictions.jsonl against the benchmark");
  add_common(evaluate, flags);
  auto* report = app.add_subcommand("report", "print the stage report and answer metrics");
  add_common(report, flags);
  auto* run = app.add_subcommand("run", "Stage 1, training, prediction and evaluation");
  add_common(run, flags);
  run->add_flag("--dump-graphs", flags.dump_graphs, "write answer graphs under graphs/");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(verbose ? spdlog::level::info : spdlog::level::warn);

  const char* stage = "setup";
  try {
    if (generate->parsed()) {
      stage = "generate";
      auto cfg = desk_config();
      if (!gen_config.empty()) cfg.generator = load_config(gen_config).generator;
      cfg.seed = gen_seed;
      const auto corpus = generate_synthetic(cfg.generator, gen_seed);
      std::filesystem::create_directories(out_dir);
      write_corpus(corpus, out_dir);
      std::ofstream(std::filesystem::path(out_dir) / "config.json") << config_to_json(cfg).dump(2) << "\n";
      std::cout << "wrote " << corpus.kg.items().size() << " items, " << corpus.kg.facts().size() << " facts and "
                << corpus.questions.size() << " questions to " << out_dir << "\n";
      return 0;
    }

    const auto config = resolve_config(flags);
    RunOptions options{flags.split, flags.dump_graphs};
    stage = "load";
    Workspace ws(config);
    std::filesystem::create_directories(config.output_dir);

    if (build->parsed()) {
      stage = "build-graph";
      build_graphs(ws, options);
      print_file(config.output_dir / "stage_report.txt");
    } else if (train->parsed()) {
      stage = "train";
      rgcn::Model model(config.model, config.seed);
      if (!config.word_vectors.empty()) model.words().load_text(config.word_vectors);
      const auto r = train_model(ws, model);
      std::cout << "trained on " << r.examples << " examples, best epoch " << r.best_epoch << "\n";
    } else if (predict->parsed()) {
      stage = "predict";
      auto model = load_model(config);
      const auto records = predict_split(ws, model, flags.split);
      write_predictions(records, config.output_dir / "predictions.jsonl");
      std::cout << "wrote " << records.size() << " predictions\n";
    } else if (evaluate->parsed()) {
      stage = "evaluate";
      const auto records = read_predictions(config.output_dir / "predictions.jsonl");
      std::cout << format_metrics("Answer prediction", evaluate_predictions(records, ws));
    } else if (report->parsed()) {
      stage = "report";
      print_file(config.output_dir / "stage_report.txt");
      const auto records = read_predictions(config.output_dir / "predictions.jsonl");
      std::cout << "\n" << format_metrics("Answer prediction on split " + flags.split, evaluate_predictions(records, ws));
    } else if (run->parsed()) {
      stage = "run";
      const auto start = std::chrono::steady_clock::now();
      run_pipeline(ws, options);
      print_file(config.output_dir / "report.txt");
      const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
      spdlog::info("run took {:.1f} s", took.count());
    }
  } catch (const std::exception& e) {
    std::cerr << "error [" << stage << "]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
