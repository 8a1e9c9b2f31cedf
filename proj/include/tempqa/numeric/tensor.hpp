#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tempqa::numeric {

// Dense row-major matrix of doubles; column vectors have cols == 1.
struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int r, int c, double fill = 0.0) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}
  static Tensor column(std::vector<double> values);

  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  double& operator[](std::size_t i) { return data[i]; }
  double operator[](std::size_t i) const { return data[i]; }
  std::size_t size() const { return data.size(); }
  bool same_shape(const Tensor& o) const { return rows == o.rows && cols == o.cols; }
  bool all_finite() const;
  std::string shape() const;

  bool operator==(const Tensor&) const = default;
};

}  // namespace tempqa::numeric
