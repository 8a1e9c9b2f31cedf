#include "tempqa/numeric/layers.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tempqa/errors.hpp"

namespace tempqa::numeric {

Parameter& ParameterStore::create(const std::string& name, int rows, int cols, Rng& rng, bool zero) {
  if (params_.count(name)) throw ConflictError("parameter " + name + " exists");
  Parameter p{name, Tensor(rows, cols), Tensor(rows, cols)};
  if (!zero) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    for (auto& v : p.value.data) v = rng.uniform(-limit, limit);
  }
  return params_.emplace(name, std::move(p)).first->second;
}

Parameter& ParameterStore::get(const std::string& name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw NotFoundError("no parameter " + name);
  return it->second;
}

const Parameter& ParameterStore::get(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw NotFoundError("no parameter " + name);
  return it->second;
}

void ParameterStore::zero_grad() {
  for (auto& [n, p] : params_) {
    if (!p.grad.same_shape(p.value)) p.grad = Tensor(p.value.rows, p.value.cols);
    std::fill(p.grad.data.begin(), p.grad.data.end(), 0.0);
  }
}

std::vector<Parameter*> ParameterStore::all() {
  std::vector<Parameter*> out;
  for (auto& [n, p] : params_) out.push_back(&p);
  return out;
}

std::size_t ParameterStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& [k, p] : params_) n += p.value.size();
  return n;
}

Dense Dense::create(ParameterStore& store, const std::string& name, int in, int out, Rng& rng) {
  Dense d;
  d.w = &store.create(name + ".w", out, in, rng);
  d.b = &store.create(name + ".b", out, 1, rng, true);
  return d;
}

Var Dense::operator()(Tape& t, Var x) const { return affine(t.param(*w), x, t.param(*b)); }

Lstm Lstm::create(ParameterStore& store, const std::string& name, int in, int hidden, Rng& rng) {
  Lstm l;
  l.hidden = hidden;
  l.wx = &store.create(name + ".wx", 4 * hidden, in, rng);
  l.wh = &store.create(name + ".wh", 4 * hidden, hidden, rng);
  l.b = &store.create(name + ".b", 4 * hidden, 1, rng, true);
  for (int i = hidden; i < 2 * hidden; ++i) l.b->value[static_cast<std::size_t>(i)] = 1.0;
  return l;
}

std::pair<Var, Var> Lstm::step(Tape& t, Var x, Var h, Var c) const {
  Var z = add(affine(t.param(*wx), x, t.param(*b)), matvec(t.param(*wh), h));
  Var i = sigmoid(slice(z, 0, hidden));
  Var f = sigmoid(slice(z, hidden, 2 * hidden));
  Var g = tanh(slice(z, 2 * hidden, 3 * hidden));
  Var o = sigmoid(slice(z, 3 * hidden, 4 * hidden));
  Var c2 = add(mul(f, c), mul(i, g));
  Var h2 = mul(o, tanh(c2));
  return {h2, c2};
}

Var Lstm::encode(Tape& t, const std::vector<Var>& seq, double drop, Rng* rng) const {
  Var h = t.constant(Tensor(hidden, 1));
  Var c = t.constant(Tensor(hidden, 1));
  for (Var x : seq) {
    if (drop > 0 && rng) x = dropout(x, drop, *rng);
    std::tie(h, c) = step(t, x, h, c);
  }
  return h;
}

void Adam::step(ParameterStore& store) {
  ++t_;
  double norm2 = 0;
  for (const auto& [name, p] : store.map())
    for (double g : p.grad.data) norm2 += g * g;
  if (!std::isfinite(norm2)) throw NumericError("non-finite gradient");
  const double norm = std::sqrt(norm2);
  const double factor = (opt_.clip_norm > 0 && norm > opt_.clip_norm) ? opt_.clip_norm / norm : 1.0;
  const double bc1 = 1.0 - std::pow(opt_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(opt_.beta2, static_cast<double>(t_));
  for (auto* p : store.all()) {
    auto& [m, v] = moments_[p->name];
    if (!m.same_shape(p->value)) {
      m = Tensor(p->value.rows, p->value.cols);
      v = Tensor(p->value.rows, p->value.cols);
    }
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const double g = p->grad[i] * factor;
      m[i] = opt_.beta1 * m[i] + (1 - opt_.beta1) * g;
      v[i] = opt_.beta2 * v[i] + (1 - opt_.beta2) * g * g;
      p->value[i] -= opt_.lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + opt_.eps);
    }
  }
}

void save_checkpoint(const ParameterStore& store, std::ostream& out) {
  out << "tempqa-checkpoint 1\n";
  char buf[64];
  for (const auto& [name, p] : store.map()) {
    out << name << ' ' << p.value.rows << ' ' << p.value.cols << '\n';
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%a", p.value[i]);
      out << (i ? " " : "") << buf;
    }
    out << '\n';
  }
}

void save_checkpoint(const ParameterStore& store, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw NotFoundError("cannot write " + path.string());
  save_checkpoint(store, out);
}

void load_checkpoint(ParameterStore& store, std::istream& in) {
  std::string line;
  std::size_t n = 1;
  if (!std::getline(in, line) || line != "tempqa-checkpoint 1") throw ParseError("not a checkpoint", n);
  Rng unused(0);
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    std::istringstream head(line);
    std::string name;
    int rows = 0, cols = 0;
    if (!(head >> name >> rows >> cols) || rows < 0 || cols < 0) throw ParseError("bad parameter header", n);
    std::string values;
    if (!std::getline(in, values)) throw ParseError("missing values", n + 1);
    ++n;
    Tensor t(rows, cols);
    const char* p = values.c_str();
    for (std::size_t i = 0; i < t.size(); ++i) {
      char* end = nullptr;
      t[i] = std::strtod(p, &end);
      if (end == p) throw ParseError("bad value in " + name, n);
      p = end;
    }
    if (store.has(name)) {
      auto& param = store.get(name);
      if (!param.value.same_shape(t)) throw ParseError("shape mismatch for " + name, n);
      param.value = std::move(t);
    } else {
      auto& param = store.create(name, rows, cols, unused, true);
      param.value = std::move(t);
    }
  }
}

void load_checkpoint(ParameterStore& store, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot read " + path.string());
  load_checkpoint(store, in);
}

}  // namespace tempqa::numeric
