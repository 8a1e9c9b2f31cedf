#include "tempqa/numeric/ppr.hpp"

#include <cmath>
#include <set>

#include "tempqa/errors.hpp"

namespace tempqa::numeric {

PprResult ppr(const std::vector<std::vector<int>>& out_edges, const std::vector<int>& seeds, double alpha, double tol,
              int max_iterations) {
  const std::size_t n = out_edges.size();
  if (seeds.empty()) throw ContractViolation("ppr needs at least one seed");
  if (!(alpha > 0 && alpha < 1)) throw ContractViolation("alpha must be in (0,1)");
  std::set<int> uniq(seeds.begin(), seeds.end());
  std::vector<double> s(n, 0.0);
  for (int v : uniq) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw ContractViolation("seed out of range");
    s[v] = 1.0 / static_cast<double>(uniq.size());
  }
  PprResult r;
  r.scores = s;
  std::vector<double> next(n);
  for (r.iterations = 1; r.iterations <= max_iterations; ++r.iterations) {
    double dangling = 0;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      if (out_edges[u].empty()) {
        dangling += r.scores[u];
        continue;
      }
      const double share = r.scores[u] / static_cast<double>(out_edges[u].size());
      for (int v : out_edges[u]) next[v] += share;
    }
    double total = 0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] = alpha * s[v] + (1 - alpha) * (next[v] + dangling * s[v]);
      total += next[v];
    }
    r.residual = 0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] /= total;  // guards against drift; total is 1 up to rounding
      r.residual += std::abs(next[v] - r.scores[v]);
    }
    r.scores.swap(next);
    if (r.residual < tol) break;
  }
  return r;
}

}  // namespace tempqa::numeric
