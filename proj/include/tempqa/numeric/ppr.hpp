#pragma once

#include <vector>

namespace tempqa::numeric {

struct PprResult {
  std::vector<double> scores;  // sums to 1
  double residual = 0;         // L1 change of the last iteration
  int iterations = 0;
};

// Personalized PageRank by power iteration on a directed graph given as
// out-neighbour lists (uniform edge weights). Each step keeps mass alpha at
// the uniform seed distribution s and moves 1 - alpha along out-edges; the
// mass of nodes without out-edges returns to s. Stops when the L1 change
// drops below tol. Seeds must be nonempty and in range.
PprResult ppr(const std::vector<std::vector<int>>& out_edges, const std::vector<int>& seeds, double alpha = 0.15,
              double tol = 1e-12, int max_iterations = 10000);

}  // namespace tempqa::numeric
