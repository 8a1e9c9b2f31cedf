#include "tempqa/numeric/time_encoding.hpp"

#include <cmath>

#include "tempqa/errors.hpp"

namespace tempqa::numeric {

Tensor position_encode(double k, int d) {
  if (d < 2 || d % 2 != 0) throw ContractViolation("time encoding dimension must be even and >= 2");
  Tensor out(d, 1);
  for (int i = 0; i < d / 2; ++i) {
    const double angle = k / std::pow(10000.0, 2.0 * i / d);
    out[2 * i] = std::sin(angle);
    out[2 * i + 1] = std::cos(angle);
  }
  return out;
}

Tensor time_encode(const kg::Timestamp& ts, int d, int epoch) {
  Tensor out = position_encode(ts.year - epoch, d);
  auto add = [&](int k) {
    const Tensor p = position_encode(k, d);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += p[i];
  };
  if (ts.month) add(ts.month);
  if (ts.day) add(kDayOffset + ts.day);
  return out;
}

}  // namespace tempqa::numeric
