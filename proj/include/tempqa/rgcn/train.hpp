#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tempqa/rgcn/model.hpp"

namespace tempqa::rgcn {

struct TrainOptions {
  int epochs = 100;
  int batch_size = 25;
  double learning_rate = 1e-3;
  double clip_norm = 1.0;
  std::uint64_t seed = 42;
  // With dev examples, the parameters of the epoch with the best dev P@1
  // (earliest on ties) are kept.
  bool select_on_dev = true;
};

struct EpochStats {
  int epoch = 0;
  double loss = 0;            // mean per-question loss
  double dev_p_at_1 = -1;     // -1 without dev examples
};

struct TrainReport {
  std::vector<EpochStats> epochs;
  int best_epoch = 0;  // 0 = initial parameters
  std::size_t examples = 0;
};

// Mean binary cross-entropy over the example's nodes.
numeric::Var example_loss(Model& model, Model::Pass& pass, const QAExample& ex);

// Mini-batch Adam on examples whose gold set is nonempty. NumericError with
// the question id and epoch when a loss is not finite. ContractViolation
// without any trainable example (unless epochs == 0).
TrainReport train(Model& model, const std::vector<QAExample>& examples, const std::vector<QAExample>& dev,
                  const TrainOptions& options, const std::function<void(const EpochStats&)>& on_epoch = {});

// (node index, probability), probability descending, ties by node index.
std::vector<std::pair<int, double>> rank_nodes(Model& model, const QAExample& ex);

// P@1 over examples (questions with empty gold count as misses).
double precision_at_1(Model& model, const std::vector<QAExample>& examples);

}  // namespace tempqa::rgcn
