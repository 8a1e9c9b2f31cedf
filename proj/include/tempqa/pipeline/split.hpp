#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tempqa::pipeline {

struct DatasetSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> dev;
  std::vector<std::size_t> test;

  // "train" | "dev" | "test"; ContractViolation otherwise.
  const std::vector<std::size_t>& named(const std::string& name) const;
};

// Largest-remainder rounding of total * share / sum(shares).
std::vector<int> apportion(int total, const std::vector<double>& shares);

// Seeded shuffle of [0, n) cut at the apportioned sizes. Each part is sorted.
DatasetSplit split_dataset(std::size_t n, const std::array<double, 3>& ratios, std::uint64_t seed);

}  // namespace tempqa::pipeline
