#include "tempqa/kg/knowledge_graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_set>

#include "tempqa/errors.hpp"

namespace tempqa::kg {

std::string_view to_string(ItemKind kind) {
  switch (kind) {
    case ItemKind::entity:
      return "entity";
    case ItemKind::predicate:
      return "predicate";
    case ItemKind::literal:
      return "literal";
    case ItemKind::type:
      return "type";
    case ItemKind::timestamp:
      return "timestamp";
  }
  return "entity";
}

std::optional<ItemKind> parse_item_kind(std::string_view text) {
  if (text == "entity") return ItemKind::entity;
  if (text == "predicate") return ItemKind::predicate;
  if (text == "literal") return ItemKind::literal;
  if (text == "type") return ItemKind::type;
  if (text == "timestamp") return ItemKind::timestamp;
  return std::nullopt;
}

std::vector<ItemId> Fact::items() const {
  std::vector<ItemId> out{subject, predicate, object};
  for (const auto& q : qualifiers) {
    out.push_back(q.predicate);
    out.push_back(q.object);
  }
  return out;
}

void KnowledgeGraph::add_item(Item item) {
  if (item.kind == ItemKind::timestamp && !item.time)
    throw ContractViolation("timestamp item '" + item.id + "' has no time value");
  if (item.kind != ItemKind::timestamp) item.time.reset();
  if ((item.kind == ItemKind::entity || item.kind == ItemKind::predicate) && !item.label.empty())
    item.aliases.insert(item.label);
  const ItemId id = item.id;
  if (!items_.emplace(id, std::move(item)).second) throw ConflictError("duplicate item id '" + id + "'");
  index_.try_emplace(id);
}

void KnowledgeGraph::add_fact(Fact fact) {
  if (facts_.count(fact.id)) throw ConflictError("duplicate fact id '" + fact.id + "'");
  for (const auto& id : fact.items())
    if (!items_.count(id)) throw NotFoundError("fact '" + fact.id + "' references unknown item '" + id + "'");
  if (items_.find(fact.subject)->second.kind != ItemKind::entity)
    throw ContractViolation("fact '" + fact.id + "' has a non-entity subject");

  auto ids = fact.items();
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (const auto& id : ids) {
    auto& bucket = index_[id];
    bucket.insert(std::upper_bound(bucket.begin(), bucket.end(), fact.id), fact.id);
  }
  const FactId id = fact.id;
  facts_.emplace(id, std::move(fact));
}

bool KnowledgeGraph::has_item(std::string_view id) const { return items_.find(id) != items_.end(); }

bool KnowledgeGraph::has_fact(std::string_view id) const { return facts_.find(id) != facts_.end(); }

const Item& KnowledgeGraph::item(std::string_view id) const {
  auto it = items_.find(id);
  if (it == items_.end()) throw NotFoundError("unknown item '" + std::string(id) + "'");
  return it->second;
}

const Fact& KnowledgeGraph::fact(std::string_view id) const {
  auto it = facts_.find(id);
  if (it == facts_.end()) throw NotFoundError("unknown fact '" + std::string(id) + "'");
  return it->second;
}

const std::vector<FactId>& KnowledgeGraph::facts_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw NotFoundError("unknown item '" + std::string(id) + "'");
  return it->second;
}

bool KnowledgeGraph::is_temporal(const Fact& f) const {
  if (item(f.object).kind == ItemKind::timestamp) return true;
  return std::any_of(f.qualifiers.begin(), f.qualifiers.end(),
                     [&](const Qualifier& q) { return item(q.object).kind == ItemKind::timestamp; });
}

std::optional<Timestamp> KnowledgeGraph::earliest_time(const Fact& f) const {
  std::optional<Timestamp> best;
  auto consider = [&](const ItemId& id) {
    const auto& it = item(id);
    if (it.kind == ItemKind::timestamp && (!best || *it.time < *best)) best = it.time;
  };
  consider(f.object);
  for (const auto& q : f.qualifiers) consider(q.object);
  return best;
}

bool is_temporal_fact(const Fact& f, const KnowledgeGraph& kg) { return kg.is_temporal(f); }

std::vector<FactId> facts_of(std::string_view entity, const KnowledgeGraph& kg) { return kg.facts_of(entity); }

std::vector<FactId> temporal_facts_of(std::string_view entity, const KnowledgeGraph& kg, int hops) {
  if (hops != 1 && hops != 2) throw ContractViolation("hops must be 1 or 2");
  std::set<FactId> out;
  std::set<ItemId> frontier{std::string(entity)};
  if (hops == 2) {
    for (const auto& fid : kg.facts_of(entity))
      for (const auto& id : kg.fact(fid).items())
        if (kg.item(id).kind == ItemKind::entity) frontier.insert(id);
  }
  for (const auto& e : frontier)
    for (const auto& fid : kg.facts_of(e))
      if (kg.is_temporal(kg.fact(fid))) out.insert(fid);
  return {out.begin(), out.end()};
}

std::vector<Path> shortest_paths(std::string_view e1, std::string_view e2, const KnowledgeGraph& kg,
                                 const PathOptions& options) {
  kg.item(e1);
  kg.item(e2);
  if (e1 == e2) return {};
  const ItemId source(e1), target(e2);

  auto traversable = [&](const ItemId& id) {
    return id == source || id == target || kg.item(id).kind == ItemKind::entity;
  };

  // Distances to the target, completed for every level up to the source's.
  std::unordered_map<ItemId, int> dist{{target, 0}};
  std::deque<ItemId> queue{target};
  int found = -1;
  while (!queue.empty()) {
    ItemId x = queue.front();
    queue.pop_front();
    const int d = dist[x];
    if (found >= 0 && d >= found) break;
    for (const auto& fid : kg.facts_of(x)) {
      for (const auto& y : kg.fact(fid).items()) {
        if (y == x || !traversable(y) || dist.count(y)) continue;
        dist[y] = d + 1;
        if (y == source) found = d + 1;
        queue.push_back(y);
      }
    }
  }
  if (found < 0) return {};

  std::vector<Path> out;
  std::vector<FactId> prefix;
  // Walk from the source, carrying the set of items the prefix may end on, so
  // each distinct fact sequence is produced once and in lexicographic order.
  std::function<void(const std::vector<ItemId>&, int)> walk = [&](const std::vector<ItemId>& at, int level) {
    std::set<FactId> candidates;
    for (const auto& x : at)
      for (const auto& fid : kg.facts_of(x)) candidates.insert(fid);
    for (const auto& fid : candidates) {
      if (out.size() >= options.max_paths) return;
      std::set<ItemId> next;
      for (const auto& y : kg.fact(fid).items()) {
        if (!traversable(y)) continue;
        auto it = dist.find(y);
        if (it != dist.end() && it->second == level - 1) next.insert(y);
      }
      if (next.empty()) continue;
      prefix.push_back(fid);
      if (level - 1 == 0)
        out.push_back(Path{prefix, source, target});
      else
        walk(std::vector<ItemId>(next.begin(), next.end()), level - 1);
      prefix.pop_back();
    }
  };
  walk({source}, found);
  return out;
}

std::string render_item(const Item& item) {
  if (item.kind == ItemKind::timestamp && item.time) return to_display(*item.time);
  return item.label;
}

std::string verbalize_fact(const Fact& f, const KnowledgeGraph& kg) {
  std::string out = render_item(kg.item(f.subject));
  out += ' ';
  out += render_item(kg.item(f.predicate));
  out += ' ';
  out += render_item(kg.item(f.object));
  for (const auto& q : f.qualifiers) {
    out += " and ";
    out += render_item(kg.item(q.predicate));
    out += ' ';
    out += render_item(kg.item(q.object));
  }
  out += '.';
  return out;
}

std::string verbalize_path(const Path& p, const KnowledgeGraph& kg) {
  if (p.facts.empty()) throw ContractViolation("cannot verbalize an empty path");
  std::string out;
  for (const auto& fid : p.facts) {
    if (!out.empty()) out += ' ';
    out += verbalize_fact(kg.fact(fid), kg);
  }
  return out;
}

}  // namespace tempqa::kg
