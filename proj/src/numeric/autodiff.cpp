#include "tempqa/numeric/autodiff.hpp"

#include <cmath>

#include "tempqa/errors.hpp"

namespace tempqa::numeric {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ContractViolation(what);
}

void add_into(Tensor& dst, const Tensor& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

Tape& tape_of(Var a) {
  require(a.tape != nullptr, "variable without tape");
  return *a.tape;
}

}  // namespace

const Tensor& Var::value() const { return tape->value(id); }
const Tensor& Var::grad() const { return tape->grad(id); }

Var Tape::record(Tensor value, std::vector<int> inputs,
                 std::function<void(Tape&, const Tensor&, const std::vector<int>&)> backward) {
  Node n;
  n.grad = Tensor(value.rows, value.cols);
  n.value = std::move(value);
  n.inputs = std::move(inputs);
  n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return {this, static_cast<int>(nodes_.size() - 1)};
}

Var Tape::constant(Tensor t) { return record(std::move(t), {}, nullptr); }

Var Tape::param(Parameter& p) {
  if (!p.grad.same_shape(p.value)) p.grad = Tensor(p.value.rows, p.value.cols);
  Parameter* ptr = &p;
  return record(p.value, {}, [ptr](Tape&, const Tensor& g, const std::vector<int>&) { add_into(ptr->grad, g); });
}

void Tape::backward(Var loss) {
  require(loss.tape == this, "loss from another tape");
  require(value(loss.id).size() == 1, "loss must be a scalar");
  for (auto& n : nodes_) std::fill(n.grad.data.begin(), n.grad.data.end(), 0.0);
  nodes_[loss.id].grad[0] = 1.0;
  for (int i = loss.id; i >= 0; --i) {
    auto& n = nodes_[i];
    if (n.backward) n.backward(*this, n.grad, n.inputs);
  }
}

Var matvec(Var w, Var x) {
  const auto& W = w.value();
  const auto& X = x.value();
  require(X.cols == 1 && W.cols == X.rows, "matvec shape mismatch");
  Tensor out(W.rows, 1);
  for (int r = 0; r < W.rows; ++r) {
    double s = 0;
    const double* row = &W.data[static_cast<std::size_t>(r) * W.cols];
    for (int c = 0; c < W.cols; ++c) s += row[c] * X.data[c];
    out.data[r] = s;
  }
  return tape_of(w).record(std::move(out), {w.id, x.id}, [](Tape& t, const Tensor& g, const std::vector<int>& in) {
    const Tensor& W = t.value(in[0]);
    const Tensor& X = t.value(in[1]);
    Tensor& gW = t.grad_mut(in[0]);
    Tensor& gX = t.grad_mut(in[1]);
    for (int r = 0; r < W.rows; ++r) {
      const double gr = g.data[r];
      if (gr == 0.0) continue;
      const std::size_t base = static_cast<std::size_t>(r) * W.cols;
      for (int c = 0; c < W.cols; ++c) {
        gW.data[base + c] += gr * X.data[c];
        gX.data[c] += gr * W.data[base + c];
      }
    }
  });
}

Var affine(Var w, Var x, Var b) {
  require(b.value().cols == 1 && b.value().rows == w.value().rows, "affine bias shape mismatch");
  return add(matvec(w, x), b);
}

Var add(Var a, Var b) {
  require(a.value().same_shape(b.value()), "add shape mismatch");
  Tensor out = a.value();
  add_into(out, b.value());
  return tape_of(a).record(std::move(out), {a.id, b.id}, [](Tape& t, const Tensor& g, const std::vector<int>& in) {
    add_into(t.grad_mut(in[0]), g);
    add_into(t.grad_mut(in[1]), g);
  });
}

Var add_n(const std::vector<Var>& xs) {
  require(!xs.empty(), "add_n of nothing");
  Tensor out = xs[0].value();
  std::vector<int> ids{xs[0].id};
  for (std::size_t i = 1; i < xs.size(); ++i) {
    require(xs[i].value().same_shape(out), "add_n shape mismatch");
    add_into(out, xs[i].value());
    ids.push_back(xs[i].id);
  }
  return tape_of(xs[0]).record(std::move(out), ids, [](Tape& t, const Tensor& g, const std::vector<int>& in) {
    for (int id : in) add_into(t.grad_mut(id), g);
  });
}

Var sub(Var a, Var b) { return add(a, scale(b, -1.0)); }

Var mul(Var a, Var b) {
  require(a.value().same_shape(b.value()), "mul shape mismatch");
  Tensor out = a.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b.value()[i];
  return tape_of(a).record(std::move(out), {a.id, b.id}, [](Tape& t, const Tensor& g, const std::vector<int>& in) {
    const Tensor& A = t.value(in[0]);
    const Tensor& B = t.value(in[1]);
    Tensor& gA = t.grad_mut(in[0]);
    Tensor& gB = t.grad_mut(in[1]);
    for (std::size_t i = 0; i < g.size(); ++i) {
      gA[i] += g[i] * B[i];
      gB[i] += g[i] * A[i];
    }
  });
}

Var scale(Var a, double s) {
  Tensor out = a.value();
  for (auto& v : out.data) v *= s;
  return tape_of(a).record(std::move(out), {a.id}, [s](Tape& t, const Tensor& g, const std::vector<int>& in) {
    Tensor& gA = t.grad_mut(in[0]);
    for (std::size_t i = 0; i < g.size(); ++i) gA[i] += s * g[i];
  });
}

Var scale_by(Var s, Var a) {
  require(s.value().size() == 1, "scale_by needs a 1x1 factor");
  const double k = s.value()[0];
  Tensor out = a.value();
  for (auto& v : out.data) v *= k;
  return tape_of(a).record(std::move(out), {s.id, a.id}, [](Tape& t, const Tensor& g, const std::vector<int>& in) {
    const double k = t.value(in[0])[0];
    const Tensor& A = t.value(in[1]);
    Tensor& gA = t.grad_mut(in[1]);
    double gs = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      gA[i] += k * g[i];
      gs += g[i] * A[i];
    }
    t.grad_mut(in[0])[0] += gs;
  });
}

Var concat(const std::vector<Var>& xs) {
  require(!xs.empty(), "concat of nothing");
  std::vector<double> values;
  std::vector<int> ids;
  for (const auto& x : xs) {
    require(x.value().cols == 1, "concat takes column vectors");
    values.insert(values.end(), x.value().data.begin(), x.value().data.end());
    ids.push_back(x.id);
  }
  return tape_of(xs[0]).record(Tensor::column(std::move(values)), ids,
                               [](Tape& t, const Tensor& g, const std::vector<int>& in) {
                                 std::size_t off = 0;
                                 for (int id : in) {
                                   Tensor& gi = t.grad_mut(id);
                                   for (std::size_t i = 0; i < gi.size(); ++i) gi[i] += g[off + i];
                                   off += gi.size();
                                 }
                               });
}

Var slice(Var a, int begin, int end) {
  const auto& A = a.value();
  require(A.cols == 1 && 0 <= begin && begin <= end && end <= A.rows, "bad slice");
  std::vector<double> values(A.data.begin() + begin, A.data.begin() + end);
  return tape_of(a).record(Tensor::column(std::move(values)), {a.id},
                           [begin](Tape& t, const Tensor& g, const std::vector<int>& in) {
                             Tensor& gA = t.grad_mut(in[0]);
                             for (std::size_t i = 0; i < g.size(); ++i) gA[begin + i] += g[i];
                           });
}

namespace {

template <class F, class D>
Var unary(Var a, F f, D dfdy) {
  Tensor out = a.value();
  for (auto& v : out.data) v = f(v);
  return tape_of(a).record(std::move(out), {a.id}, [dfdy](Tape& t, const Tensor& g, const std::vector<int>& in) {
    const Tensor& X = t.value(in[0]);
    Tensor& gA = t.grad_mut(in[0]);
    for (std::size_t i = 0; i < g.size(); ++i) gA[i] += g[i] * dfdy(X[i]);
  });
}

}  // namespace

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Var tanh(Var a) {
  return unary(
      a, [](double x) { return std::tanh(x); },
      [](double x) {
        const double y = std::tanh(x);
        return 1.0 - y * y;
      });
}

Var sigmoid(Var a) {
  return unary(
      a, [](double x) { return sigmoid(x); },
      [](double x) {
        const double y = sigmoid(x);
        return y * (1.0 - y);
      });
}

Var relu(Var a) {
  return unary(
      a, [](double x) { return x > 0 ? x : 0.0; }, [](double x) { return x > 0 ? 1.0 : 0.0; });
}

Var dot(Var a, Var b) {
  require(a.value().same_shape(b.value()), "dot shape mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.value().size(); ++i) s += a.value()[i] * b.value()[i];
  return tape_of(a).record(Tensor::column({s}), {a.id, b.id}, [](Tape& t, const Tensor& g, const std::vector<int>& in) {
    const Tensor& A = t.value(in[0]);
    const Tensor& B = t.value(in[1]);
    Tensor& gA = t.grad_mut(in[0]);
    Tensor& gB = t.grad_mut(in[1]);
    for (std::size_t i = 0; i < A.size(); ++i) {
      gA[i] += g[0] * B[i];
      gB[i] += g[0] * A[i];
    }
  });
}

std::vector<double> softmax(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  const double m = *std::max_element(xs.begin(), xs.end());
  std::vector<double> out(xs.size());
  double z = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) z += out[i] = std::exp(xs[i] - m);
  for (auto& v : out) v /= z;
  return out;
}

Var softmax(Var a) {
  require(a.value().cols == 1 && a.value().rows > 0, "softmax takes a nonempty column vector");
  Tensor out = Tensor::column(softmax(a.value().data));
  return tape_of(a).record(std::move(out), {a.id}, [](Tape& t, const Tensor& g, const std::vector<int>& in) {
    // y depends on this node's own value; recompute from the input
    const auto y = softmax(t.value(in[0]).data);
    double s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += g[i] * y[i];
    Tensor& gA = t.grad_mut(in[0]);
    for (std::size_t i = 0; i < y.size(); ++i) gA[i] += y[i] * (g[i] - s);
  });
}

Var sum(Var a) {
  double s = 0;
  for (double v : a.value().data) s += v;
  return tape_of(a).record(Tensor::column({s}), {a.id}, [](Tape& t, const Tensor& g, const std::vector<int>& in) {
    for (auto& v : t.grad_mut(in[0]).data) v += g[0];
  });
}

Var mean_n(const std::vector<Var>& xs) { return scale(add_n(xs), 1.0 / static_cast<double>(xs.size())); }

Var bce_with_logit(Var logit, double label) {
  require(logit.value().size() == 1, "bce needs a 1x1 logit");
  const double z = logit.value()[0];
  // softplus(z) - y z
  const double loss = std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - label * z;
  return tape_of(logit).record(Tensor::column({loss}), {logit.id},
                               [label](Tape& t, const Tensor& g, const std::vector<int>& in) {
                                 const double z = t.value(in[0])[0];
                                 t.grad_mut(in[0])[0] += g[0] * (sigmoid(z) - label);
                               });
}

Var dropout(Var a, double p, Rng& rng) {
  if (p <= 0.0) return a;
  require(p < 1.0, "dropout rate must be below 1");
  Tensor mask(a.value().rows, a.value().cols);
  for (auto& m : mask.data) m = rng.bernoulli(p) ? 0.0 : 1.0 / (1.0 - p);
  return mul(a, tape_of(a).constant(std::move(mask)));
}

}  // namespace tempqa::numeric
