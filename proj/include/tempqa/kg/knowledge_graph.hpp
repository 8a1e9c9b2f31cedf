#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tempqa/kg/timestamp.hpp"

namespace tempqa::kg {

using ItemId = std::string;
using FactId = std::string;

enum class ItemKind { entity, predicate, literal, type, timestamp };

std::string_view to_string(ItemKind kind);
std::optional<ItemKind> parse_item_kind(std::string_view text);

struct Item {
  ItemId id;
  std::string label;
  ItemKind kind = ItemKind::entity;
  std::set<std::string> aliases;
  std::optional<Timestamp> time;  // present iff kind == timestamp

  bool operator==(const Item&) const = default;
};

struct Qualifier {
  ItemId predicate;
  ItemId object;

  bool operator==(const Qualifier&) const = default;
};

// An n-ary statement: main triple plus ordered qualifier pairs.
struct Fact {
  FactId id;
  ItemId subject;
  ItemId predicate;
  ItemId object;
  std::vector<Qualifier> qualifiers;

  bool operator==(const Fact&) const = default;

  // Every item in the fact, in positional order (subject, predicate, object,
  // then each qualifier predicate/object). May contain repeats.
  std::vector<ItemId> items() const;
};

// Facts sharing items, walked in order. `from`/`to` are the endpoint entities.
struct Path {
  std::vector<FactId> facts;
  ItemId from;
  ItemId to;

  bool operator==(const Path&) const = default;
  auto operator<=>(const Path&) const = default;
};

// Immutable-after-load n-ary knowledge graph with a complete inverted index
// from item id to the ids of every fact the item occurs in.
class KnowledgeGraph {
 public:
  // Throws ConflictError on a duplicate id; ContractViolation when a
  // timestamp item has no time value.
  void add_item(Item item);
  // Throws ConflictError on a duplicate fact id, NotFoundError when a
  // referenced item is missing, ContractViolation when the subject is not an
  // entity.
  void add_fact(Fact fact);

  bool has_item(std::string_view id) const;
  bool has_fact(std::string_view id) const;
  const Item& item(std::string_view id) const;  // NotFoundError
  const Fact& fact(std::string_view id) const;  // NotFoundError

  const std::map<ItemId, Item, std::less<>>& items() const { return items_; }
  const std::map<FactId, Fact, std::less<>>& facts() const { return facts_; }

  // Sorted ids of all facts containing `id` in any position; empty for items
  // without facts. NotFoundError for unknown ids.
  const std::vector<FactId>& facts_of(std::string_view id) const;

  std::size_t fact_count(std::string_view id) const { return facts_of(id).size(); }

  bool is_temporal(const Fact& f) const;

  // Earliest timestamp among the main and qualifier objects, if any.
  std::optional<Timestamp> earliest_time(const Fact& f) const;

 private:
  std::map<ItemId, Item, std::less<>> items_;
  std::map<FactId, Fact, std::less<>> facts_;
  std::unordered_map<ItemId, std::vector<FactId>> index_;
};

// True iff the main object or any qualifier object is a timestamp item.
bool is_temporal_fact(const Fact& f, const KnowledgeGraph& kg);

std::vector<FactId> facts_of(std::string_view entity, const KnowledgeGraph& kg);

// Temporal facts of `entity` (hops = 1), plus, for hops = 2, temporal facts of
// every entity that shares a fact with `entity`. Sorted by id.
std::vector<FactId> temporal_facts_of(std::string_view entity, const KnowledgeGraph& kg, int hops);

struct PathOptions {
  // Enumeration stops after this many distinct paths (lexicographic order).
  std::size_t max_paths = 10000;
};

// All minimum-length fact paths between two entities. Two items are adjacent
// when they co-occur in a fact; intermediate junction items must be entities.
// Length counts facts. Empty for e1 == e2 or disconnected pairs. Results are
// distinct fact-id sequences in lexicographic order.
std::vector<Path> shortest_paths(std::string_view e1, std::string_view e2, const KnowledgeGraph& kg,
                                 const PathOptions& options = {});

// "subject predicate object and qpred qobj ... ." with timestamps rendered in
// display form.
std::string verbalize_fact(const Fact& f, const KnowledgeGraph& kg);

// Fact verbalizations joined with a single space, in path order.
std::string verbalize_path(const Path& p, const KnowledgeGraph& kg);

// Display text for an item: labels for ordinary items, display dates for
// timestamps.
std::string render_item(const Item& item);

}  // namespace tempqa::kg
