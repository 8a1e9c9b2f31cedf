#pragma once

#include <functional>
#include <vector>

#include "tempqa/numeric/autodiff.hpp"

namespace tempqa::numeric {

struct GradCheckResult {
  double max_relative_error = 0;
  std::size_t checked = 0;
};

// Compares reverse-mode gradients of the scalar `f` with central differences
// over every entry of `params`. Relative error per entry is
// |a - n| / max(|a|, |n|, 1e-6). NumericError on non-finite values.
GradCheckResult backprop_check(const std::function<Var(Tape&)>& f, const std::vector<Parameter*>& params,
                               double epsilon = 1e-5);

}  // namespace tempqa::numeric
