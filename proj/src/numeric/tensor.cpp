#include "tempqa/numeric/tensor.hpp"

#include <cmath>

namespace tempqa::numeric {

Tensor Tensor::column(std::vector<double> values) {
  Tensor t;
  t.rows = static_cast<int>(values.size());
  t.cols = 1;
  t.data = std::move(values);
  return t;
}

bool Tensor::all_finite() const {
  for (double v : data)
    if (!std::isfinite(v)) return false;
  return true;
}

std::string Tensor::shape() const { return std::to_string(rows) + "x" + std::to_string(cols); }

}  // namespace tempqa::numeric
