#include "tempqa/pipeline/split.hpp"

#include <algorithm>
#include <cmath>

#include "tempqa/errors.hpp"
#include "tempqa/numeric/rng.hpp"

namespace tempqa::pipeline {

const std::vector<std::size_t>& DatasetSplit::named(const std::string& name) const {
  if (name == "train") return train;
  if (name == "dev") return dev;
  if (name == "test") return test;
  throw ContractViolation("unknown split '" + name + "'");
}

std::vector<int> apportion(int total, const std::vector<double>& shares) {
  double sum = 0;
  for (double s : shares) {
    if (s < 0) throw ContractViolation("shares must be non-negative");
    sum += s;
  }
  if (sum <= 0) throw ContractViolation("shares must not all be zero");
  std::vector<int> counts(shares.size());
  std::vector<std::pair<double, int>> remainders;
  int assigned = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    const double exact = total * shares[i] / sum;
    counts[i] = static_cast<int>(std::floor(exact));
    assigned += counts[i];
    remainders.emplace_back(-(exact - counts[i]), static_cast<int>(i));
  }
  std::sort(remainders.begin(), remainders.end());
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++counts[remainders[k % remainders.size()].second];
  return counts;
}

DatasetSplit split_dataset(std::size_t n, const std::array<double, 3>& ratios, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  numeric::Rng rng(seed);
  rng.shuffle(order);
  const auto counts = apportion(static_cast<int>(n), {ratios[0], ratios[1], ratios[2]});
  DatasetSplit s;
  auto a = order.begin();
  auto b = a + counts[0];
  auto c = b + counts[1];
  s.train.assign(a, b);
  s.dev.assign(b, c);
  s.test.assign(c, order.end());
  for (auto* part : {&s.train, &s.dev, &s.test}) std::sort(part->begin(), part->end());
  return s;
}

}  // namespace tempqa::pipeline
