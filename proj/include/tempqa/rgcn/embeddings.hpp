#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tempqa/numeric/autodiff.hpp"
#include "tempqa/numeric/layers.hpp"

namespace tempqa::rgcn {

// Key -> vector table backed by a ParameterStore. Registered keys are
// trainable parameters "<prefix>.<key>"; other keys resolve to a pretrained
// row when one was loaded, else to a seeded random vector derived from the
// key (cached). Seeded rows have entries N(0, 1/dim).
class EmbeddingTable {
 public:
  // Seeded rows are N(0, init_scale^2); init_scale <= 0 means 1/sqrt(dim).
  EmbeddingTable(std::string prefix, int dim, std::uint64_t salt, double init_scale = 0);

  int dim() const { return dim_; }
  const std::string& prefix() const { return prefix_; }
  std::string param_name(const std::string& key) const { return prefix_ + "." + key; }

  // Text format: one row per line, "<key> v1 ... v_dim", separated by spaces;
  // blank lines and lines starting with '#' are skipped. ParseError on a
  // wrong column count or bad number.
  void load_text(std::istream& in);
  void load_text(const std::filesystem::path& path);
  std::size_t pretrained_size() const { return pretrained_.size(); }

  // Initial value for `key`: pretrained row or seeded vector.
  const numeric::Tensor& initial(const std::string& key) const;

  // Creates the trainable row if missing.
  void register_key(numeric::ParameterStore& store, const std::string& key) const;

 private:
  std::string prefix_;
  int dim_;
  std::uint64_t salt_;
  double init_scale_;
  std::map<std::string, numeric::Tensor> pretrained_;
  mutable std::map<std::string, numeric::Tensor> cache_;
};

}  // namespace tempqa::rgcn
