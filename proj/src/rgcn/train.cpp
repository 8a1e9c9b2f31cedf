#include "tempqa/rgcn/train.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tempqa/errors.hpp"

namespace tempqa::rgcn {

numeric::Var example_loss(Model& model, Model::Pass& pass, const QAExample& ex) {
  auto logits = model.forward(pass, ex);
  if (logits.empty()) throw ContractViolation("example " + ex.id + " has an empty graph");
  std::vector<numeric::Var> terms;
  terms.reserve(logits.size());
  for (int v = 0; v < static_cast<int>(logits.size()); ++v)
    terms.push_back(numeric::bce_with_logit(logits[v], ex.gold.count(v) ? 1.0 : 0.0));
  return numeric::mean_n(terms);
}

TrainReport train(Model& model, const std::vector<QAExample>& examples, const std::vector<QAExample>& dev,
                  const TrainOptions& options, const std::function<void(const EpochStats&)>& on_epoch) {
  std::vector<const QAExample*> usable;
  for (const auto& ex : examples)
    if (!ex.gold.empty() && !ex.graph.nodes.empty()) usable.push_back(&ex);
  TrainReport report;
  report.examples = usable.size();
  if (options.epochs <= 0) return report;
  if (usable.empty()) throw ContractViolation("no training example has a gold answer in its graph");
  if (options.batch_size < 1) throw ContractViolation("batch size must be positive");

  auto& store = model.params();
  numeric::Adam adam({options.learning_rate, 0.9, 0.999, 1e-8, options.clip_norm});
  numeric::Rng order_rng(options.seed);
  numeric::Rng dropout_rng(options.seed ^ 0x64726f70ULL);

  const bool select = options.select_on_dev && !dev.empty();
  double best = select ? precision_at_1(model, dev) : -1;
  std::map<std::string, numeric::Tensor> best_values;
  if (select)
    for (const auto& [name, p] : store.map()) best_values[name] = p.value;

  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    order_rng.shuffle(usable);
    double total = 0;
    for (std::size_t start = 0; start < usable.size(); start += static_cast<std::size_t>(options.batch_size)) {
      const std::size_t end = std::min(usable.size(), start + static_cast<std::size_t>(options.batch_size));
      store.zero_grad();
      for (std::size_t i = start; i < end; ++i) {
        numeric::Tape tape;
        Model::Pass pass(tape, &dropout_rng);
        numeric::Var loss = example_loss(model, pass, *usable[i]);
        const double value = loss.value()[0];
        if (!std::isfinite(value))
          throw NumericError("non-finite loss on question " + usable[i]->id + " in epoch " + std::to_string(epoch));
        total += value;
        tape.backward(numeric::scale(loss, 1.0 / static_cast<double>(end - start)));
      }
      adam.step(store);
    }
    EpochStats stats{epoch, total / static_cast<double>(usable.size()), -1};
    if (select) {
      stats.dev_p_at_1 = precision_at_1(model, dev);
      if (stats.dev_p_at_1 > best) {
        best = stats.dev_p_at_1;
        report.best_epoch = epoch;
        for (const auto& [name, p] : store.map()) best_values[name] = p.value;
      }
    } else {
      report.best_epoch = epoch;
    }
    report.epochs.push_back(stats);
    if (on_epoch) on_epoch(stats);
  }
  if (select)
    for (auto& [name, value] : best_values) store.get(name).value = value;
  return report;
}

std::vector<std::pair<int, double>> rank_nodes(Model& model, const QAExample& ex) {
  const auto probs = model.probabilities(ex);
  std::vector<std::pair<int, double>> out;
  for (int v = 0; v < static_cast<int>(probs.size()); ++v) out.emplace_back(v, probs[v]);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

double precision_at_1(Model& model, const std::vector<QAExample>& examples) {
  if (examples.empty()) return 0;
  double hits = 0;
  for (const auto& ex : examples) {
    if (ex.graph.nodes.empty()) continue;
    const auto ranking = rank_nodes(model, ex);
    if (ex.gold.count(ranking.front().first)) hits += 1;
  }
  return hits / static_cast<double>(examples.size());
}

}  // namespace tempqa::rgcn
