#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tempqa/numeric/rng.hpp"
#include "tempqa/numeric/tensor.hpp"

namespace tempqa::numeric {

struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;
};

class Tape;

// Handle to a value recorded on a tape.
struct Var {
  Tape* tape = nullptr;
  int id = -1;

  const Tensor& value() const;
  const Tensor& grad() const;
  int rows() const { return value().rows; }
};

// Reverse-mode recorder. Values are immutable once recorded; backward()
// accumulates gradients into the tape and into every Parameter read through
// param().
class Tape {
 public:
  Var constant(Tensor t);
  Var param(Parameter& p);
  void backward(Var loss);  // loss must be 1x1

  const Tensor& value(int id) const { return nodes_[id].value; }
  const Tensor& grad(int id) const { return nodes_[id].grad; }

  // Records a node computed from `inputs`; `backward` receives the node's
  // output gradient and adds into the inputs' gradients.
  Var record(Tensor value, std::vector<int> inputs,
             std::function<void(Tape&, const Tensor& out_grad, const std::vector<int>& inputs)> backward);
  Tensor& grad_mut(int id) { return nodes_[id].grad; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    std::vector<int> inputs;
    std::function<void(Tape&, const Tensor&, const std::vector<int>&)> backward;
    Parameter* param = nullptr;
  };
  std::vector<Node> nodes_;
};

// All operations check shapes and throw ContractViolation on mismatch.
Var affine(Var w, Var x, Var b);  // w x + b; w: m x n, x: n x 1, b: m x 1
Var matvec(Var w, Var x);
Var add(Var a, Var b);
Var add_n(const std::vector<Var>& xs);  // nonempty, equal shapes
Var sub(Var a, Var b);
Var mul(Var a, Var b);  // elementwise
Var scale(Var a, double s);
Var scale_by(Var s, Var a);  // s is 1x1
Var concat(const std::vector<Var>& xs);  // column vectors, stacked
Var slice(Var a, int begin, int end);    // rows [begin, end) of a column vector
Var tanh(Var a);
Var sigmoid(Var a);
Var relu(Var a);
Var dot(Var a, Var b);  // 1x1
Var softmax(Var a);     // column vector
Var sum(Var a);         // 1x1
Var mean_n(const std::vector<Var>& xs);
// Binary cross-entropy on a 1x1 logit, computed stably from the logit.
Var bce_with_logit(Var logit, double label);
// Inverted dropout: zeroes entries with probability p and rescales the rest.
// Identity when p == 0.
Var dropout(Var a, double p, Rng& rng);

// Plain evaluations.
double sigmoid(double x);
std::vector<double> softmax(const std::vector<double>& xs);

}  // namespace tempqa::numeric
