#pragma once

// Personalized PageRank as the solution of the linear system it defines:
// (I - (1 - alpha) P^T) x = alpha s with dangling rows of P set to s.

#include <set>
#include <vector>

#include <Eigen/Dense>

namespace tempqa::testing {

inline std::vector<double> ppr_oracle(const std::vector<std::vector<int>>& out, const std::vector<int>& seeds, double alpha) {
  const int n = static_cast<int>(out.size());
  std::set<int> uniq(seeds.begin(), seeds.end());
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  for (int v : uniq) s[v] = 1.0 / static_cast<double>(uniq.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    if (out[u].empty()) {
      p.row(u) = s.transpose();
      continue;
    }
    for (int v : out[u]) p(u, v) += 1.0 / static_cast<double>(out[u].size());
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - (1 - alpha) * p.transpose();
  Eigen::VectorXd x = a.fullPivLu().solve(alpha * s);
  return {x.data(), x.data() + n};
}

}  // namespace tempqa::testing
