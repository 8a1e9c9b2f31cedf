#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "tempqa/kg/knowledge_graph.hpp"
#include "tempqa/pipeline/benchmark.hpp"

namespace tempqa::pipeline {

struct GeneratorConfig {
  int persons = 100;
  int teams = 30;
  int schools = 20;
  int awards = 20;
  int cities = 20;
  int positions = 10;
  int questions = 1000;
  // Category proportions (normalized).
  double explicit_share = 0.3;
  double implicit_share = 0.2;
  double temporal_answer_share = 0.3;
  double ordinal_share = 0.2;
  // Share of questions whose answer is two facts away from the question
  // entity, and share three facts away. The rest are one fact away.
  double two_hop_fraction = 0.1;
  double far_fraction = 0.02;
};

struct SyntheticCorpus {
  kg::KnowledgeGraph kg;
  std::vector<BenchmarkQuestion> questions;
};

// Seeded world of persons with team, school, position, award, spouse, birth
// and child facts, plus templated questions. Each question carries its
// categories, hop distance and a constraint record from which the answers
// follow by exhaustive search over the KG:
//   {"kind":"overlap","subject":s,"predicate":p,"year":y}
//   {"kind":"start_in","subject":s,"predicate":p,"year":y}
//   {"kind":"chain_overlap","subject":s,"via":p1,"predicate":p,"year":y}
//   {"kind":"during","subject":s,"predicate":p,"anchor_predicate":a,"anchor_object":o}
//   {"kind":"after","subject":s,"predicate":p,"anchor_predicate":a,"anchor_object":o}
//   {"kind":"when","subject":s,"predicate":p,"object":o?,"qualifier":q?}
//   {"kind":"chain_when","subject":s,"via":[p1,...],"predicate":p}
//   {"kind":"ordinal","subject":s,"predicate":p,"rank":1|-1}
// ContractViolation for fewer than 20 entities or 10 persons, or when the
// world cannot support the requested questions.
SyntheticCorpus generate_synthetic(const GeneratorConfig& config, std::uint64_t seed);

// Writes items.jsonl, facts.jsonl and questions.jsonl into `dir`.
void write_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& dir);

// Predicate ids used by the generator.
namespace predicates {
inline constexpr const char* team = "P_team";
inline constexpr const char* school = "P_school";
inline constexpr const char* spouse = "P_spouse";
inline constexpr const char* award = "P_award";
inline constexpr const char* position = "P_position";
inline constexpr const char* birth_date = "P_birth_date";
inline constexpr const char* birth_place = "P_birth_place";
inline constexpr const char* child = "P_child";
inline constexpr const char* start = "P_start";
inline constexpr const char* end = "P_end";
inline constexpr const char* point = "P_point";
}  // namespace predicates

}  // namespace tempqa::pipeline
