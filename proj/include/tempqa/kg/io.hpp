#pragma once

#include <filesystem>
#include <iosfwd>

#include "tempqa/kg/knowledge_graph.hpp"

namespace tempqa::kg {

// Knowledge graphs are stored as two JSON-lines files.
//
// Item file, one object per line:
//   {"id":"Q76","kind":"entity","label":"Barack Obama","aliases":["obama"]}
//   {"id":"T2009-01-20","kind":"timestamp","label":"20-01-2009","time":"2009-01-20"}
// `kind` is one of entity|predicate|literal|type|timestamp; `aliases` is
// optional; `time` (ISO yyyy[-mm[-dd]]) is required for timestamps only.
//
// Fact file, one object per line:
//   {"id":"F1","s":"Q76","p":"P39","o":"Q11696","q":[["P580","T2009-01-20"]]}
// `q` holds ordered [qualifier predicate, qualifier object] pairs; optional.
//
// Blank lines are ignored. JSON string escaping applies to all text.

// Throws ParseError (with 1-based line number) on malformed records and
// ConflictError on duplicate ids.
KnowledgeGraph load_kg(std::istream& items, std::istream& facts);
KnowledgeGraph load_kg(const std::filesystem::path& items, const std::filesystem::path& facts);

// Writes records sorted by id with a fixed key order; load(dump(kg)) == kg.
void dump_items(const KnowledgeGraph& kg, std::ostream& out);
void dump_facts(const KnowledgeGraph& kg, std::ostream& out);
void dump_kg(const KnowledgeGraph& kg, const std::filesystem::path& items, const std::filesystem::path& facts);

bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b);

}  // namespace tempqa::kg
