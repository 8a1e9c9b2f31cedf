#include "tempqa/rgcn/embeddings.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tempqa/errors.hpp"

namespace tempqa::rgcn {

EmbeddingTable::EmbeddingTable(std::string prefix, int dim, std::uint64_t salt, double init_scale)
    : prefix_(std::move(prefix)), dim_(dim), salt_(salt), init_scale_(init_scale) {
  if (dim <= 0) throw ContractViolation("embedding dimension must be positive");
  if (init_scale_ <= 0) init_scale_ = 1.0 / std::sqrt(static_cast<double>(dim));
}

void EmbeddingTable::load_text(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    numeric::Tensor row(dim_, 1);
    std::string tok;
    int i = 0;
    while (ss >> tok) {
      if (i >= dim_) throw ParseError("too many values for '" + key + "'", n);
      char* end = nullptr;
      row[i] = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size() || !std::isfinite(row[i])) throw ParseError("bad value '" + tok + "'", n);
      ++i;
    }
    if (i != dim_) throw ParseError("expected " + std::to_string(dim_) + " values for '" + key + "'", n);
    pretrained_[key] = std::move(row);
  }
}

void EmbeddingTable::load_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot read embeddings " + path.string());
  load_text(in);
}

const numeric::Tensor& EmbeddingTable::initial(const std::string& key) const {
  if (auto it = pretrained_.find(key); it != pretrained_.end()) return it->second;
  auto [it, inserted] = cache_.try_emplace(key);
  if (inserted) {
    numeric::Rng rng(numeric::stable_hash(key, salt_));
    it->second = numeric::Tensor(dim_, 1);
    const double scale = init_scale_;
    for (auto& v : it->second.data) v = rng.normal() * scale;
  }
  return it->second;
}

void EmbeddingTable::register_key(numeric::ParameterStore& store, const std::string& key) const {
  const auto name = param_name(key);
  if (store.has(name)) return;
  numeric::Rng unused(0);
  store.create(name, dim_, 1, unused, true).value = initial(key);
}

}  // namespace tempqa::rgcn
