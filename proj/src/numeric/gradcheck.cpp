#include "tempqa/numeric/gradcheck.hpp"

#include <cmath>

#include "tempqa/errors.hpp"

namespace tempqa::numeric {
namespace {

double evaluate(const std::function<Var(Tape&)>& f) {
  Tape t;
  const double v = f(t).value()[0];
  if (!std::isfinite(v)) throw NumericError("non-finite function value");
  return v;
}

}  // namespace

GradCheckResult backprop_check(const std::function<Var(Tape&)>& f, const std::vector<Parameter*>& params,
                               double epsilon) {
  if (!(epsilon > 0)) throw ContractViolation("epsilon must be positive");
  for (auto* p : params) p->grad = Tensor(p->value.rows, p->value.cols);
  {
    Tape t;
    Var loss = f(t);
    if (!loss.value().all_finite()) throw NumericError("non-finite function value");
    t.backward(loss);
  }
  GradCheckResult r;
  for (auto* p : params) {
    if (!p->grad.all_finite()) throw NumericError("non-finite gradient for " + p->name);
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const double orig = p->value[i];
      p->value[i] = orig + epsilon;
      const double up = evaluate(f);
      p->value[i] = orig - epsilon;
      const double down = evaluate(f);
      p->value[i] = orig;
      const double numeric = (up - down) / (2 * epsilon);
      const double analytic = p->grad[i];
      const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
      r.max_relative_error = std::max(r.max_relative_error, std::abs(analytic - numeric) / denom);
      ++r.checked;
    }
  }
  return r;
}

}  // namespace tempqa::numeric
