#include "tempqa/kg/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "tempqa/errors.hpp"

namespace tempqa::kg {
namespace {

using nlohmann::json;

std::string require_string(const json& rec, const char* key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_string()) throw ParseError(std::string("missing string field '") + key + "'", line);
  return it->get<std::string>();
}

Item parse_item(const json& rec, std::size_t line) {
  Item item;
  item.id = require_string(rec, "id", line);
  item.label = require_string(rec, "label", line);
  auto kind = parse_item_kind(require_string(rec, "kind", line));
  if (!kind) throw ParseError("unknown item kind", line);
  item.kind = *kind;
  if (auto it = rec.find("aliases"); it != rec.end()) {
    if (!it->is_array()) throw ParseError("'aliases' must be an array", line);
    for (const auto& a : *it) {
      if (!a.is_string()) throw ParseError("alias must be a string", line);
      item.aliases.insert(a.get<std::string>());
    }
  }
  if (auto it = rec.find("time"); it != rec.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("'time' must be a string", line);
    auto ts = parse_timestamp(it->get<std::string>());
    if (!ts) throw ParseError("unparseable time '" + it->get<std::string>() + "'", line);
    item.time = ts;
  }
  if (item.kind == ItemKind::timestamp && !item.time) throw ParseError("timestamp item without 'time'", line);
  return item;
}

Fact parse_fact(const json& rec, std::size_t line) {
  Fact f;
  f.id = require_string(rec, "id", line);
  f.subject = require_string(rec, "s", line);
  f.predicate = require_string(rec, "p", line);
  f.object = require_string(rec, "o", line);
  if (auto it = rec.find("q"); it != rec.end()) {
    if (!it->is_array()) throw ParseError("'q' must be an array", line);
    for (const auto& pair : *it) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
        throw ParseError("qualifier must be a [predicate, object] pair", line);
      f.qualifiers.push_back({pair[0].get<std::string>(), pair[1].get<std::string>()});
    }
  }
  return f;
}

template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line);
    }
    if (!rec.is_object()) throw ParseError("record is not an object", line);
    fn(rec, line);
  }
}

}  // namespace

KnowledgeGraph load_kg(std::istream& items, std::istream& facts) {
  KnowledgeGraph kg;
  for_each_record(items, [&](const json& rec, std::size_t line) { kg.add_item(parse_item(rec, line)); });
  for_each_record(facts, [&](const json& rec, std::size_t line) {
    try {
      kg.add_fact(parse_fact(rec, line));
    } catch (const NotFoundError& e) {
      throw ParseError(e.what(), line);
    } catch (const ContractViolation& e) {
      throw ParseError(e.what(), line);
    }
  });
  return kg;
}

KnowledgeGraph load_kg(const std::filesystem::path& items, const std::filesystem::path& facts) {
  std::ifstream in_items(items), in_facts(facts);
  if (!in_items) throw NotFoundError("cannot open " + items.string());
  if (!in_facts) throw NotFoundError("cannot open " + facts.string());
  return load_kg(in_items, in_facts);
}

void dump_items(const KnowledgeGraph& kg, std::ostream& out) {
  for (const auto& [id, item] : kg.items()) {
    json rec = json::object();
    rec["id"] = item.id;
    rec["kind"] = std::string(to_string(item.kind));
    rec["label"] = item.label;
    if (!item.aliases.empty()) rec["aliases"] = json(std::vector<std::string>(item.aliases.begin(), item.aliases.end()));
    if (item.time) rec["time"] = to_iso(*item.time);
    out << rec.dump() << '\n';
  }
}

void dump_facts(const KnowledgeGraph& kg, std::ostream& out) {
  for (const auto& [id, f] : kg.facts()) {
    json rec = json::object();
    rec["id"] = f.id;
    rec["s"] = f.subject;
    rec["p"] = f.predicate;
    rec["o"] = f.object;
    if (!f.qualifiers.empty()) {
      json q = json::array();
      for (const auto& qual : f.qualifiers) q.push_back(json::array({qual.predicate, qual.object}));
      rec["q"] = std::move(q);
    }
    out << rec.dump() << '\n';
  }
}

void dump_kg(const KnowledgeGraph& kg, const std::filesystem::path& items, const std::filesystem::path& facts) {
  std::ofstream out_items(items), out_facts(facts);
  if (!out_items || !out_facts) throw NotFoundError("cannot write knowledge graph files");
  dump_items(kg, out_items);
  dump_facts(kg, out_facts);
}

bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
  return a.items() == b.items() && a.facts() == b.facts();
}

}  // namespace tempqa::kg
