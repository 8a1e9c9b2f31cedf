#include "tempqa/pipeline/benchmark.hpp"

#include <fstream>

#include "tempqa/errors.hpp"

namespace tempqa::pipeline {

std::vector<BenchmarkQuestion> load_benchmark(std::istream& in) {
  std::vector<BenchmarkQuestion> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), n);
    }
    try {
      BenchmarkQuestion q;
      q.id = j.at("id").get<std::string>();
      q.text = j.at("question").get<std::string>();
      q.answers = j.at("answers").get<std::vector<std::string>>();
      if (j.contains("categories")) q.categories = j["categories"].get<std::vector<std::string>>();
      if (j.contains("hops")) q.hops = j["hops"].get<int>();
      if (j.contains("constraint")) q.constraint = j["constraint"];
      if (q.answers.empty()) throw ParseError("question " + q.id + " has no answers", n);
      if (!ids.insert(q.id).second) throw ParseError("duplicate question id " + q.id, n);
      out.push_back(std::move(q));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad question record: ") + e.what(), n);
    }
  }
  return out;
}

std::vector<BenchmarkQuestion> load_benchmark(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot read benchmark " + path.string());
  return load_benchmark(in);
}

void dump_benchmark(const std::vector<BenchmarkQuestion>& questions, std::ostream& out) {
  for (const auto& q : questions) {
    nlohmann::ordered_json j;
    j["id"] = q.id;
    j["question"] = q.text;
    j["answers"] = q.answers;
    if (!q.categories.empty()) j["categories"] = q.categories;
    if (q.hops) j["hops"] = q.hops;
    if (!q.constraint.is_null()) j["constraint"] = q.constraint;
    out << j.dump() << '\n';
  }
}

void dump_benchmark(const std::vector<BenchmarkQuestion>& questions, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw NotFoundError("cannot write " + path.string());
  dump_benchmark(questions, out);
}

std::set<kg::ItemId> resolve_answers(const std::vector<std::string>& answers, const kg::KnowledgeGraph& kg) {
  std::set<kg::ItemId> out;
  for (const auto& a : answers) {
    if (kg.has_item(a)) {
      out.insert(a);
      continue;
    }
    auto ts = kg::parse_timestamp(a);
    if (!ts) continue;
    for (const auto& [id, item] : kg.items())
      if (item.kind == kg::ItemKind::timestamp && item.time == ts) out.insert(id);
  }
  return out;
}

}  // namespace tempqa::pipeline
