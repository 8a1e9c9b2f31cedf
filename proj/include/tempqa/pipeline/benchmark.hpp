#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tempqa/kg/knowledge_graph.hpp"

namespace tempqa::pipeline {

// One JSON object per line:
//   {"id":"q1","question":"...","answers":["E12","1998-05-02"],
//    "categories":["explicit"],"hops":1,"constraint":{...}}
// `answers` holds item ids or ISO timestamp values; `categories`, `hops`
// and `constraint` are optional.
struct BenchmarkQuestion {
  std::string id;
  std::string text;
  std::vector<std::string> answers;
  std::vector<std::string> categories;  // explicit | implicit | temporal_answer | ordinal
  int hops = 0;                         // 0 = unknown
  nlohmann::json constraint;            // null when absent

  bool operator==(const BenchmarkQuestion&) const = default;
};

// ParseError on malformed lines, empty answers or duplicate ids.
std::vector<BenchmarkQuestion> load_benchmark(std::istream& in);
std::vector<BenchmarkQuestion> load_benchmark(const std::filesystem::path& path);
void dump_benchmark(const std::vector<BenchmarkQuestion>& questions, std::ostream& out);
void dump_benchmark(const std::vector<BenchmarkQuestion>& questions, const std::filesystem::path& path);

// Item ids for the answers: ids present in the KG are kept, other answers
// parsing as timestamps map to timestamp items with an equal value.
std::set<kg::ItemId> resolve_answers(const std::vector<std::string>& answers, const kg::KnowledgeGraph& kg);

}  // namespace tempqa::pipeline
