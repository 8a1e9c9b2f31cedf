#include "tempqa/rgcn/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "tempqa/errors.hpp"
#include "tempqa/numeric/ppr.hpp"
#include "tempqa/numeric/time_encoding.hpp"
#include "tempqa/question/tokenize.hpp"

namespace tempqa::rgcn {

using numeric::Tensor;
using numeric::Var;

void Ablation::set(const std::string& name) {
  if (name == "tce")
    tce = true;
  else if (name == "tse")
    tse = true;
  else if (name == "tee")
    tee = true;
  else if (name == "te")
    te = true;
  else if (name == "atr")
    atr = true;
  else
    throw ContractViolation("unknown ablation '" + name + "'");
}

std::vector<std::string> Ablation::names() const {
  std::vector<std::string> out;
  if (tce) out.push_back("tce");
  if (tse) out.push_back("tse");
  if (tee) out.push_back("tee");
  if (te) out.push_back("te");
  if (atr) out.push_back("atr");
  return out;
}

QAExample make_example(std::string id, question::QuestionAnalysis qa, RelationalGraph graph, std::set<int> gold,
                       double alpha) {
  QAExample ex;
  ex.id = std::move(id);
  for (const auto& e : qa.entities)
    if (auto n = graph.node(e)) ex.question_nodes.push_back(*n);
  std::sort(ex.question_nodes.begin(), ex.question_nodes.end());
  if (!graph.nodes.empty()) {
    std::vector<int> seeds = ex.question_nodes;
    if (seeds.empty())
      for (int i = 0; i < static_cast<int>(graph.size()); ++i) seeds.push_back(i);
    ex.ppr = numeric::ppr(adjacency(graph), seeds, alpha).scores;
  }
  ex.qa = std::move(qa);
  ex.graph = std::move(graph);
  ex.gold = std::move(gold);
  return ex;
}

std::optional<kg::Timestamp> token_time(const std::string& token) {
  const bool digits_only = std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); });
  if (digits_only && token.size() != 4) return std::nullopt;
  if (!digits_only && token.find_first_of("-/") == std::string::npos) return std::nullopt;
  auto ts = kg::parse_timestamp(token);
  if (!ts || ts->year < 1000 || ts->year > 2099) return std::nullopt;
  return ts;
}

Var Model::Pass::param(numeric::Parameter& p) {
  auto it = params.find(&p);
  if (it != params.end()) return it->second;
  return params.emplace(&p, tape.param(p)).first->second;
}

Model::Model(ModelConfig config, std::uint64_t seed)
    : config_(config),
      words_("word", config.embed_dim, seed ^ 0x776f7264ULL, config.embed_init),
      entities_("entity", config.hidden, seed ^ 0x656e7469ULL, config.embed_init),
      seed_(seed) {
  if (config.layers < 1) throw ContractViolation("at least one layer is required");
  if (config.te_dim % 2 != 0) throw ContractViolation("time encoding dimension must be even");
  const int h = config.hidden;
  const int w = config.embed_dim;
  const int t = config.te_dim;
  numeric::Rng rng(seed);
  question_lstm_ = numeric::Lstm::create(store_, "question.lstm", w, h, rng);
  question_ffn_ = numeric::Dense::create(store_, "question.ffn", question::kCategoryCount + question::kSignalCount + h,
                                         h, rng);
  question_time_ = numeric::Dense::create(store_, "question.time", t, w, rng);
  timestamp_proj_ = numeric::Dense::create(store_, "timestamp.proj", t, h, rng);
  tee_lstm_ = numeric::Lstm::create(store_, "tee.lstm", h + w + t, h, rng);
  atr_proj_ = &store_.create("atr.proj", w + t, h, rng);
  for (int l = 1; l <= config.layers; ++l) {
    const std::string s = std::to_string(l);
    question_update_.push_back(numeric::Dense::create(store_, "question.update." + s, h, h, rng));
    psi_wr_.push_back(&store_.create("psi." + s + ".wr", h, w, rng));
    psi_wh_.push_back(&store_.create("psi." + s + ".wh", h, h, rng));
    psi_b_.push_back(&store_.create("psi." + s + ".b", h, 1, rng, true));
    entity_update_.push_back(numeric::Dense::create(store_, "entity.update." + s, 4 * h, h, rng));
  }
  classifier_ = numeric::Dense::create(store_, "classifier", h, 1, rng);
}

void Model::register_vocabulary(const std::vector<QAExample>& examples) {
  for (const auto& ex : examples) {
    if (config_.train_words) {
      for (const auto& tok : ex.qa.tokens)
        if (!token_time(tok)) words_.register_key(store_, tok);
      for (const auto& e : ex.graph.edges)
        for (const auto& tok : question::token_texts(e.relation)) words_.register_key(store_, tok);
    }
    if (config_.train_entities)
      for (const auto& n : ex.graph.nodes)
        if (n.kind != kg::ItemKind::timestamp) entities_.register_key(store_, n.item);
  }
}

Tensor Model::time_encoding(const kg::Timestamp& ts) const {
  if (config_.ablation.te) return Tensor(config_.te_dim, 1);
  return numeric::time_encode(ts, config_.te_dim, config_.te_epoch);
}

Tensor Model::edge_time_encoding(const std::vector<kg::Timestamp>& times, const std::string& relation) const {
  if (config_.ablation.te) return Tensor(config_.te_dim, 1);
  if (times.empty()) {
    numeric::Rng rng(numeric::stable_hash(relation, seed_ ^ 0x7465ULL));
    Tensor out(config_.te_dim, 1);
    for (auto& v : out.data) v = rng.uniform(-1, 1);
    return out;
  }
  Tensor out(config_.te_dim, 1);
  for (const auto& ts : times) {
    const Tensor e = numeric::time_encode(ts, config_.te_dim, config_.te_epoch);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += e[i];
  }
  return out;
}

Var Model::zeros(Pass& p, int n) const { return p.tape.constant(Tensor(n, 1)); }

Var Model::maybe_dropout(Pass& p, Var x, double rate) const {
  if (!p.dropout || rate <= 0) return x;
  return numeric::dropout(x, rate, *p.dropout);
}

Var Model::word(Pass& p, const std::string& token) {
  const auto name = words_.param_name(token);
  if (store_.has(name)) return p.param(store_.get(name));
  return p.tape.constant(words_.initial(token));
}

Var Model::relation(Pass& p, const std::string& label) {
  if (auto it = p.relations.find(label); it != p.relations.end()) return it->second;
  std::vector<Var> parts;
  for (const auto& tok : question::token_texts(label)) parts.push_back(word(p, tok));
  Var x = parts.empty() ? zeros(p, config_.embed_dim) : numeric::mean_n(parts);
  return p.relations.emplace(label, x).first->second;
}

Var Model::init_question(Pass& p, const question::QuestionAnalysis& qa) {
  if (qa.tokens.empty()) throw ContractViolation("question has no tokens");
  std::vector<Var> seq;
  for (const auto& tok : qa.tokens) {
    if (auto ts = token_time(tok))
      seq.push_back(question_time_(p.tape, p.tape.constant(time_encoding(*ts))));
    else
      seq.push_back(word(p, tok));
  }
  Tensor bits(question::kCategoryCount + question::kSignalCount, 1);
  if (!config_.ablation.tce)
    for (int i = 0; i < question::kCategoryCount; ++i) bits[i] = qa.categories[i];
  if (!config_.ablation.tse)
    for (int i = 0; i < question::kSignalCount; ++i) bits[question::kCategoryCount + i] = qa.signals[i];
  Var words = question_lstm_.encode(p.tape, seq, p.dropout ? config_.lstm_dropout : 0.0, p.dropout);
  Var in = numeric::concat({p.tape.constant(bits), words});
  in = maybe_dropout(p, in, config_.linear_dropout);
  return numeric::relu(question_ffn_(p.tape, in));
}

Var Model::update_question(Pass& p, int layer, const std::vector<Var>& entity_states) {
  if (entity_states.empty()) throw ContractViolation("question update needs entity states");
  std::vector<Var> states;
  for (Var h : entity_states) states.push_back(maybe_dropout(p, h, config_.linear_dropout));
  Var total = states.size() == 1 ? states[0] : numeric::add_n(states);
  const auto& ffn = question_update_.at(layer - 1);
  return numeric::relu(affine(p.param(*ffn.w), total, p.param(*ffn.b)));
}

Var Model::init_entity(Pass& p, const RelNode& node) {
  if (node.kind == kg::ItemKind::timestamp && node.time) {
    return affine(p.param(*timestamp_proj_.w), p.tape.constant(time_encoding(*node.time)),
                  p.param(*timestamp_proj_.b));
  }
  const auto name = entities_.param_name(node.item);
  if (store_.has(name)) return p.param(store_.get(name));
  return p.tape.constant(entities_.initial(node.item));
}

Var Model::encode_fact(Pass& p, const TemporalFact& f, const std::vector<Var>& states) {
  std::vector<Var> members;
  for (int m : f.members) members.push_back(states.at(m));
  std::vector<Var> rels;
  for (const auto& r : f.relations) rels.push_back(relation(p, r));
  Tensor te(config_.te_dim, 1);
  for (const auto& ts : f.times) {
    const Tensor e = time_encoding(ts);
    for (std::size_t i = 0; i < te.size(); ++i) te[i] += e[i];
  }
  Var m = members.empty() ? zeros(p, config_.hidden) : numeric::mean_n(members);
  Var r = rels.empty() ? zeros(p, config_.embed_dim) : numeric::mean_n(rels);
  return numeric::concat({m, r, p.tape.constant(std::move(te))});
}

Var Model::encode_tee(Pass& p, const std::vector<Var>& fact_encodings) {
  if (fact_encodings.empty()) return zeros(p, config_.hidden);
  Var h = zeros(p, config_.hidden);
  Var c = zeros(p, config_.hidden);
  Var wx = p.param(*tee_lstm_.wx), wh = p.param(*tee_lstm_.wh), b = p.param(*tee_lstm_.b);
  const int hd = tee_lstm_.hidden;
  for (Var x : fact_encodings) {
    auto it = p.inputs.find(x.id);
    if (it == p.inputs.end()) it = p.inputs.emplace(x.id, affine(wx, x, b)).first;
    Var z = numeric::add(it->second, matvec(wh, h));
    Var i = numeric::sigmoid(numeric::slice(z, 0, hd));
    Var f = numeric::sigmoid(numeric::slice(z, hd, 2 * hd));
    Var g = numeric::tanh(numeric::slice(z, 2 * hd, 3 * hd));
    Var o = numeric::sigmoid(numeric::slice(z, 3 * hd, 4 * hd));
    c = numeric::add(numeric::mul(f, c), numeric::mul(i, g));
    h = numeric::mul(o, numeric::tanh(c));
  }
  return h;
}

std::vector<Var> Model::atr(Pass& p, Var h_q, const RelationalGraph& g, const std::vector<int>& edges) {
  std::vector<Var> out;
  if (edges.empty()) return out;
  if (config_.ablation.atr) {
    Var w = p.tape.constant(Tensor(1, 1, 1.0 / static_cast<double>(edges.size())));
    out.assign(edges.size(), w);
    return out;
  }
  auto it = p.queries.find(h_q.id);
  if (it == p.queries.end()) it = p.queries.emplace(h_q.id, matvec(p.param(*atr_proj_), h_q)).first;
  Var proj = it->second;
  Var proj_r = numeric::slice(proj, 0, config_.embed_dim);
  Var proj_t = numeric::slice(proj, config_.embed_dim, config_.embed_dim + config_.te_dim);
  std::vector<Var> logits;
  for (int e : edges) {
    const auto& edge = g.edges.at(e);
    Var te = p.tape.constant(edge_time_encoding(edge.times, edge.relation));
    logits.push_back(numeric::add(numeric::dot(relation(p, edge.relation), proj_r), numeric::dot(te, proj_t)));
  }
  Var weights = numeric::softmax(logits.size() == 1 ? logits[0] : numeric::concat(logits));
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) out.push_back(numeric::slice(weights, i, i + 1));
  return out;
}

Var Model::psi(Pass& p, int layer, const std::string& rel, Var h, double ppr) {
  const int l = layer - 1;
  auto r = p.psi_relations.find({l, rel});
  if (r == p.psi_relations.end())
    r = p.psi_relations.emplace(std::pair{l, rel}, affine(p.param(*psi_wr_.at(l)), relation(p, rel), p.param(*psi_b_.at(l)))).first;
  auto s = p.psi_states.find({l, h.id});
  if (s == p.psi_states.end()) s = p.psi_states.emplace(std::pair{l, h.id}, matvec(p.param(*psi_wh_.at(l)), h)).first;
  Var pre = numeric::add(r->second, s->second);
  return numeric::scale(numeric::relu(pre), ppr);
}

Var Model::update_entity(Pass& p, int layer, Var h_e, Var h_q, Var tee, Var aggregate) {
  Var in = numeric::concat({h_e, h_q, tee, aggregate});
  in = maybe_dropout(p, in, config_.linear_dropout);
  const auto& ffn = entity_update_.at(layer - 1);
  return numeric::relu(affine(p.param(*ffn.w), in, p.param(*ffn.b)));
}

Var Model::classify(Pass& p, Var h) { return affine(p.param(*classifier_.w), h, p.param(*classifier_.b)); }

std::vector<Var> Model::forward(Pass& p, const QAExample& ex) {
  const auto& g = ex.graph;
  const int n = static_cast<int>(g.size());
  if (n == 0) return {};
  if (static_cast<int>(ex.ppr.size()) != n) throw ContractViolation("example without PageRank scores");
  const int hd = config_.hidden;

  std::set<kg::FactId> dropped;
  if (p.dropout && config_.fact_dropout > 0) {
    std::set<kg::FactId> facts;
    for (const auto& e : g.edges) facts.insert(e.fact);
    for (const auto& f : facts)
      if (p.dropout->bernoulli(config_.fact_dropout)) dropped.insert(f);
  }
  std::vector<std::vector<int>> out_edges(n);
  for (int s = 0; s < n; ++s)
    for (int e : g.out_edges[s])
      if (!dropped.count(g.edges[e].fact)) out_edges[s].push_back(e);

  Var h_q = init_question(p, ex.qa);
  std::vector<Var> h;
  h.reserve(n);
  for (const auto& node : g.nodes) h.push_back(init_entity(p, node));

  for (int l = 1; l <= config_.layers; ++l) {
    std::vector<Var> tee(n);
    if (config_.ablation.tee) {
      Var z = zeros(p, hd);
      std::fill(tee.begin(), tee.end(), z);
    } else {
      std::vector<Var> facts;
      facts.reserve(g.temporal_facts.size());
      for (const auto& f : g.temporal_facts)
        facts.push_back(maybe_dropout(p, encode_fact(p, f, h), config_.lstm_dropout));
      for (int v = 0; v < n; ++v) {
        std::vector<Var> seq;
        for (int fi : g.node_facts[v])
          if (!dropped.count(g.temporal_facts[fi].id)) seq.push_back(facts[fi]);
        tee[v] = encode_tee(p, seq);
      }
    }

    std::vector<std::vector<Var>> incoming(n);
    for (int s = 0; s < n; ++s) {
      if (out_edges[s].empty() || ex.ppr[s] == 0.0) continue;
      auto weights = atr(p, h_q, g, out_edges[s]);
      for (std::size_t k = 0; k < out_edges[s].size(); ++k) {
        const auto& edge = g.edges[out_edges[s][k]];
        incoming[edge.dst].push_back(numeric::scale_by(weights[k], psi(p, l, edge.relation, h[s], ex.ppr[s])));
      }
    }

    std::vector<Var> next(n);
    for (int v = 0; v < n; ++v) {
      Var agg = incoming[v].empty() ? zeros(p, hd)
                                    : (incoming[v].size() == 1 ? incoming[v][0] : numeric::add_n(incoming[v]));
      next[v] = update_entity(p, l, h[v], h_q, tee[v], agg);
    }
    if (!ex.question_nodes.empty()) {
      std::vector<Var> qs;
      for (int v : ex.question_nodes) qs.push_back(h[v]);
      h_q = update_question(p, l, qs);
    }
    h = std::move(next);
  }

  std::vector<Var> logits;
  logits.reserve(n);
  for (int v = 0; v < n; ++v) logits.push_back(classify(p, h[v]));
  return logits;
}

std::vector<double> Model::probabilities(const QAExample& ex) {
  numeric::Tape tape;
  Pass p(tape);
  std::vector<double> out;
  for (Var logit : forward(p, ex)) out.push_back(numeric::sigmoid(logit.value()[0]));
  return out;
}

}  // namespace tempqa::rgcn
