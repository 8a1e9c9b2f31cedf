#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tempqa/numeric/autodiff.hpp"

namespace tempqa::numeric {

// Named parameters in name order. References stay valid across inserts.
class ParameterStore {
 public:
  // Xavier-uniform weights; `zero` gives an all-zero tensor.
  Parameter& create(const std::string& name, int rows, int cols, Rng& rng, bool zero = false);
  Parameter& get(const std::string& name);
  const Parameter& get(const std::string& name) const;
  bool has(const std::string& name) const { return params_.count(name) > 0; }
  void zero_grad();
  std::vector<Parameter*> all();
  std::size_t size() const { return params_.size(); }
  std::size_t scalar_count() const;
  const std::map<std::string, Parameter>& map() const { return params_; }

 private:
  std::map<std::string, Parameter> params_;
};

// y = W x + b (no activation).
struct Dense {
  Parameter* w = nullptr;
  Parameter* b = nullptr;

  static Dense create(ParameterStore& store, const std::string& name, int in, int out, Rng& rng);
  Var operator()(Tape& t, Var x) const;
  int in() const { return w->value.cols; }
  int out() const { return w->value.rows; }
};

// Standard LSTM cell (input, forget, cell, output gates; forget bias 1).
struct Lstm {
  Parameter* wx = nullptr;  // 4h x in
  Parameter* wh = nullptr;  // 4h x h
  Parameter* b = nullptr;   // 4h x 1
  int hidden = 0;

  static Lstm create(ParameterStore& store, const std::string& name, int in, int hidden, Rng& rng);
  // One step from (h, c); returns the new (h, c).
  std::pair<Var, Var> step(Tape& t, Var x, Var h, Var c) const;
  // Final hidden state; zeros for an empty sequence. `dropout` applies to inputs.
  Var encode(Tape& t, const std::vector<Var>& seq, double dropout = 0.0, Rng* rng = nullptr) const;
};

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double clip_norm = 1.0;  // global gradient norm clip; <= 0 disables
};

class Adam {
 public:
  explicit Adam(AdamOptions opt = {}) : opt_(opt) {}
  void step(ParameterStore& store);

 private:
  AdamOptions opt_;
  std::map<std::string, std::pair<Tensor, Tensor>> moments_;
  long t_ = 0;
};

// Text checkpoint: header line "tempqa-checkpoint 1", then per parameter a
// line "<name> <rows> <cols>" followed by one line of hexfloat values.
// Loading restores bit-identical values.
void save_checkpoint(const ParameterStore& store, std::ostream& out);
void save_checkpoint(const ParameterStore& store, const std::filesystem::path& path);
// Replaces values of existing parameters (shapes must match) and creates
// missing ones. ParseError on malformed input.
void load_checkpoint(ParameterStore& store, std::istream& in);
void load_checkpoint(ParameterStore& store, const std::filesystem::path& path);

}  // namespace tempqa::numeric
