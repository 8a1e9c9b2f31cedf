#include "tempqa/pipeline/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "tempqa/errors.hpp"
#include "tempqa/kg/io.hpp"
#include "tempqa/numeric/rng.hpp"
#include "tempqa/pipeline/split.hpp"

namespace tempqa::pipeline {
namespace {

namespace P = predicates;
using nlohmann::json;

const char* kCities[] = {"Springfield", "Riverton",  "Lakewood", "Fairview",  "Oakdale",  "Brookfield", "Ashford",
                         "Milltown",    "Greenport", "Westbury", "Kingsley",  "Northam",  "Easton",     "Harlow",
                         "Redcliff",    "Stonebridge", "Marlow", "Pinecrest", "Bayside",  "Cedarville", "Dunmore",
                         "Elmwood",     "Foxborough", "Glenview", "Hillsdale", "Ironwood", "Juniper",    "Kerrville"};
const char* kMascots[] = {"Ravens", "Tigers", "Wolves",  "Falcons", "Bears",  "Hawks",   "Lions",   "Sharks",
                          "Eagles", "Comets", "Rockets", "Pirates", "Giants", "Knights", "Rangers", "Titans"};
const char* kFirst[] = {"Alice",  "Bruno",  "Clara",  "Dmitri", "Elena",  "Felix",  "Greta",  "Hugo",
                        "Irene",  "Jonas",  "Katja",  "Lionel", "Marta",  "Nikolai", "Olga",  "Pablo",
                        "Quentin", "Rosa",  "Stefan", "Tamara", "Ulrich", "Vera",   "Walter", "Xenia",
                        "Yusuf",  "Zora",   "Anton",  "Bianca", "Carlos", "Dalia"};
const char* kLast[] = {"Moreno",  "Lindqvist", "Okafor", "Petrov",  "Haddad", "Nakamura", "Kowalski", "Brennan",
                       "Ferreira", "Jansen",   "Rossi",  "Schmidt", "Dubois", "Novak",    "Larsen",   "Castillo",
                       "Takahashi", "Mbeki",   "Varga",  "Holm",    "Adeyemi", "Quinn",   "Sorensen", "Ivanova",
                       "Dalton",  "Esposito", "Fischer", "Grant",   "Horvat", "Ibarra"};
const char* kAwardAdj[] = {"Golden", "Silver", "Crystal", "Diamond", "Bronze", "Platinum", "Emerald", "Iron"};
const char* kAwardNoun[] = {"Boot", "Glove", "Star", "Laurel", "Shield", "Medal", "Trophy", "Crown"};
const char* kPositions[] = {"team captain",    "head coach",        "club president", "assistant coach",
                            "general manager", "league commissioner", "scout director", "athletic director",
                            "board chairman",  "youth coordinator",  "sports minister", "team ambassador"};

struct Interval {
  int entity = 0;  // index into entities
  int start = 0;
  int end = 0;
};

struct Person {
  int entity = 0;
  kg::Timestamp birth;
  int city = 0;
  std::vector<Interval> teams;
  std::vector<Interval> schools;
  std::vector<Interval> positions;
  std::vector<std::pair<int, int>> awards;  // (entity, year)
  std::optional<std::pair<int, int>> spouse;  // (person index, year)
  std::vector<int> children;                  // person indices
};

struct World {
  std::vector<kg::Item> entities;
  std::vector<int> cities, teams, schools, awards, positions;
  std::vector<Person> persons;
};

std::string entity_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "E%04d", i);
  return buf;
}

template <std::size_t N>
std::vector<std::string> pool(const char* const (&names)[N]) {
  return {std::begin(names), std::end(names)};
}

class Builder {
 public:
  explicit Builder(numeric::Rng& rng) : rng_(rng) {}

  int pick(int n) { return static_cast<int>(rng_.uniform_index(static_cast<std::uint64_t>(n))); }
  int between(int lo, int hi) { return lo + pick(hi - lo + 1); }

  int add_entity(World& w, const std::string& label) {
    const int i = static_cast<int>(w.entities.size());
    w.entities.push_back({entity_id(i), label, kg::ItemKind::entity, {}, std::nullopt});
    return i;
  }

 private:
  numeric::Rng& rng_;
};

World build_world(const GeneratorConfig& c, numeric::Rng& rng) {
  Builder b(rng);
  World w;
  auto cities = pool(kCities);
  if (c.cities > static_cast<int>(cities.size())) throw ContractViolation("too many cities requested");
  rng.shuffle(cities);
  for (int i = 0; i < c.cities; ++i) w.cities.push_back(b.add_entity(w, cities[i]));

  std::vector<std::string> team_names;
  for (const auto& city : cities)
    for (const char* m : kMascots) team_names.push_back(city + " " + m);
  rng.shuffle(team_names);
  if (c.teams > static_cast<int>(team_names.size())) throw ContractViolation("too many teams requested");
  for (int i = 0; i < c.teams; ++i) w.teams.push_back(b.add_entity(w, team_names[i]));

  std::vector<std::string> school_names;
  for (const auto& city : cities) {
    school_names.push_back(city + " High School");
    school_names.push_back(city + " University");
    school_names.push_back(city + " College");
  }
  rng.shuffle(school_names);
  if (c.schools > static_cast<int>(school_names.size())) throw ContractViolation("too many schools requested");
  for (int i = 0; i < c.schools; ++i) w.schools.push_back(b.add_entity(w, school_names[i]));

  std::vector<std::string> award_names;
  for (const char* a : kAwardAdj)
    for (const char* n : kAwardNoun) award_names.push_back(std::string(a) + " " + n + " Award");
  rng.shuffle(award_names);
  if (c.awards > static_cast<int>(award_names.size())) throw ContractViolation("too many awards requested");
  for (int i = 0; i < c.awards; ++i) w.awards.push_back(b.add_entity(w, award_names[i]));

  auto positions = pool(kPositions);
  if (c.positions > static_cast<int>(positions.size())) throw ContractViolation("too many positions requested");
  for (int i = 0; i < c.positions; ++i) w.positions.push_back(b.add_entity(w, positions[i]));

  std::vector<std::string> person_names;
  for (const char* f : kFirst)
    for (const char* l : kLast) person_names.push_back(std::string(f) + " " + l);
  rng.shuffle(person_names);
  if (c.persons > static_cast<int>(person_names.size())) throw ContractViolation("too many persons requested");

  std::vector<int> births;
  for (int i = 0; i < c.persons; ++i) births.push_back(b.between(1930, 1985));
  std::sort(births.begin(), births.end());
  for (int i = 0; i < c.persons; ++i) {
    Person p;
    p.entity = b.add_entity(w, person_names[i]);
    p.birth = kg::Timestamp::of_day(births[i], b.between(1, 12), b.between(1, 28));
    p.city = w.cities[b.pick(c.cities)];

    const int n_teams = rng.bernoulli(0.25) ? 1 : (rng.bernoulli(0.55) ? 2 : 3);
    int year = births[i] + 18 + b.pick(5);
    for (int k = 0; k < n_teams; ++k) {
      int team = 0;
      do {
        team = w.teams[b.pick(c.teams)];
      } while (!p.teams.empty() && std::any_of(p.teams.begin(), p.teams.end(),
                                               [&](const Interval& s) { return s.entity == team; }));
      const int end = year + b.between(1, 6);
      p.teams.push_back({team, year, end});
      year = end + 1 + b.pick(3);
    }

    const int n_schools = rng.bernoulli(0.5) ? 1 : 2;
    year = births[i] + 13 + b.pick(3);
    for (int k = 0; k < n_schools; ++k) {
      int school = 0;
      do {
        school = w.schools[b.pick(c.schools)];
      } while (!p.schools.empty() && p.schools.back().entity == school);
      const int end = year + b.between(2, 4);
      p.schools.push_back({school, year, end});
      year = end + 1;
    }

    const int n_awards = b.pick(3);
    for (int k = 0; k < n_awards; ++k) {
      int award = 0, ayear = 0;
      for (int tries = 0; tries < 50; ++tries) {
        award = w.awards[b.pick(c.awards)];
        if (rng.bernoulli(0.7)) {
          const auto& s = p.teams[b.pick(static_cast<int>(p.teams.size()))];
          ayear = b.between(s.start, s.end);
        } else {
          ayear = births[i] + 20 + b.pick(21);
        }
        const bool clash = std::any_of(p.awards.begin(), p.awards.end(), [&](const auto& a) {
          return a.first == award || a.second == ayear;
        });
        if (!clash) break;
        award = -1;
      }
      if (award >= 0) p.awards.emplace_back(award, ayear);
    }
    std::sort(p.awards.begin(), p.awards.end(), [](const auto& x, const auto& y) { return x.second < y.second; });

    if (rng.bernoulli(0.7)) {
      const auto& s = p.teams[b.pick(static_cast<int>(p.teams.size()))];
      const int start = b.between(s.start, s.end);
      p.positions.push_back({w.positions[b.pick(c.positions)], start, start + b.between(1, 4)});
    }
    w.persons.push_back(std::move(p));
  }

  // children: parents are 20-45 years older
  for (int i = 0; i < c.persons; ++i) {
    if (!rng.bernoulli(0.5)) continue;
    std::vector<int> parents;
    for (int j = 0; j < c.persons; ++j) {
      const int gap = w.persons[i].birth.year - w.persons[j].birth.year;
      if (gap >= 20 && gap <= 45) parents.push_back(j);
    }
    if (parents.empty()) continue;
    w.persons[parents[b.pick(static_cast<int>(parents.size()))]].children.push_back(i);
  }

  // spouses: close in age, not parent and child
  std::vector<int> order(c.persons);
  for (int i = 0; i < c.persons; ++i) order[i] = i;
  rng.shuffle(order);
  auto related = [&](int a, int b2) {
    const auto& ca = w.persons[a].children;
    const auto& cb = w.persons[b2].children;
    return std::find(ca.begin(), ca.end(), b2) != ca.end() || std::find(cb.begin(), cb.end(), a) != cb.end();
  };
  for (int a : order) {
    if (w.persons[a].spouse || !rng.bernoulli(0.6)) continue;
    std::vector<int> options;
    for (int s = 0; s < c.persons; ++s)
      if (s != a && !w.persons[s].spouse && std::abs(w.persons[s].birth.year - w.persons[a].birth.year) <= 8 &&
          !related(a, s))
        options.push_back(s);
    if (options.empty()) continue;
    const int s = options[b.pick(static_cast<int>(options.size()))];
    const int year = std::max(w.persons[a].birth.year, w.persons[s].birth.year) + 22 + b.pick(16);
    w.persons[a].spouse = {s, year};
    w.persons[s].spouse = {a, year};
  }
  return w;
}

struct Emitter {
  kg::KnowledgeGraph& kg;
  int next_fact = 1;

  std::string time(const kg::Timestamp& ts) {
    const std::string id = "T" + kg::to_iso(ts);
    if (!kg.has_item(id)) kg.add_item({id, kg::to_display(ts), kg::ItemKind::timestamp, {}, ts});
    return id;
  }
  void fact(const std::string& s, const std::string& p, const std::string& o, std::vector<kg::Qualifier> q = {}) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "F%05d", next_fact++);
    kg.add_fact({buf, s, p, o, std::move(q)});
  }
};

void add_predicates(kg::KnowledgeGraph& kg) {
  auto pred = [&](const char* id, const char* label, std::set<std::string> aliases) {
    kg.add_item({id, label, kg::ItemKind::predicate, std::move(aliases), std::nullopt});
  };
  pred(P::team, "member of sports team", {"play for", "played for", "plays for", "playing for", "team"});
  pred(P::school, "educated at", {"attend", "attended", "studied at", "school"});
  pred(P::spouse, "spouse", {"marry", "married", "wife", "husband"});
  pred(P::award, "award received", {"receive", "received", "win", "won"});
  pred(P::position, "position held", {"hold", "held", "served as", "position"});
  pred(P::birth_date, "date of birth", {"born", "birth"});
  pred(P::birth_place, "place of birth", {"born", "birthplace"});
  pred(P::child, "child", {"children", "son", "daughter"});
  pred(P::start, "start time", {"join", "joined", "since"});
  pred(P::end, "end time", {"leave", "left", "until"});
  pred(P::point, "point in time", {});
}

void emit_world(const World& w, kg::KnowledgeGraph& kg) {
  for (const auto& e : w.entities) kg.add_item(e);
  add_predicates(kg);
  Emitter em{kg};
  auto id = [&](int entity) { return w.entities[entity].id; };
  auto interval_facts = [&](const std::string& s, const char* pred, const std::vector<Interval>& list) {
    for (const auto& iv : list)
      em.fact(s, pred, id(iv.entity),
              {{P::start, em.time(kg::Timestamp::of_year(iv.start))}, {P::end, em.time(kg::Timestamp::of_year(iv.end))}});
  };
  for (const auto& p : w.persons) {
    const auto s = id(p.entity);
    em.fact(s, P::birth_date, em.time(p.birth));
    em.fact(s, P::birth_place, id(p.city));
    interval_facts(s, P::school, p.schools);
    interval_facts(s, P::team, p.teams);
    interval_facts(s, P::position, p.positions);
    for (const auto& [award, year] : p.awards)
      em.fact(s, P::award, id(award), {{P::point, em.time(kg::Timestamp::of_year(year))}});
    if (p.spouse)
      em.fact(s, P::spouse, id(w.persons[p.spouse->first].entity),
              {{P::start, em.time(kg::Timestamp::of_year(p.spouse->second))}});
    for (int c : p.children) em.fact(s, P::child, id(w.persons[c].entity));
  }
}

struct Draft {
  std::string text;
  std::set<std::string> answers;
  json constraint;
  int hops = 1;
};

using Template = std::function<std::optional<Draft>(const Person&)>;

class Templates {
 public:
  Templates(const World& w, numeric::Rng& rng) : w_(w), rng_(rng) {}

  std::string id(int entity) const { return w_.entities[entity].id; }
  std::string name(const Person& p) const { return w_.entities[p.entity].label; }
  std::string label(int entity) const { return w_.entities[entity].label; }
  static std::string year_id(int y) { return "T" + kg::to_iso(kg::Timestamp::of_year(y)); }
  int pick(std::size_t n) { return static_cast<int>(rng_.uniform_index(n)); }

  static std::set<std::string> containing(const std::vector<Interval>& list, int year, const World& w) {
    std::set<std::string> out;
    for (const auto& iv : list)
      if (iv.start <= year && year <= iv.end) out.insert(w.entities[iv.entity].id);
    return out;
  }

  std::optional<Draft> in_year(const Person& p, const std::vector<Interval>& list, const char* pred,
                               const std::string& pattern) {
    if (list.empty()) return std::nullopt;
    const auto& iv = list[pick(list.size())];
    const int year = iv.start + pick(static_cast<std::size_t>(iv.end - iv.start + 1));
    Draft d;
    d.text = fill(pattern, name(p), std::to_string(year));
    d.answers = containing(list, year, w_);
    d.constraint = {{"kind", "overlap"}, {"subject", id(p.entity)}, {"predicate", pred}, {"year", year}};
    return d;
  }

  static std::string fill(std::string pattern, const std::string& a, const std::string& b = "") {
    auto replace = [&](const std::string& key, const std::string& v) {
      auto pos = pattern.find(key);
      if (pos != std::string::npos) pattern.replace(pos, key.size(), v);
    };
    replace("{a}", a);
    replace("{b}", b);
    replace("{a}", a);
    return pattern;
  }

  const World& world() const { return w_; }

 private:
  const World& w_;
  numeric::Rng& rng_;
};

std::vector<std::pair<std::string, Template>> explicit_templates(Templates& t) {
  const World& w = t.world();
  return {
      {"team_in_year",
       [&t](const Person& p) { return t.in_year(p, p.teams, P::team, "Which team did {a} play for in {b}?"); }},
      {"school_in_year",
       [&t](const Person& p) { return t.in_year(p, p.schools, P::school, "Which school did {a} attend in {b}?"); }},
      {"position_in_year",
       [&t](const Person& p) {
         return t.in_year(p, p.positions, P::position, "What position did {a} hold in {b}?");
       }},
      {"award_in_year",
       [&t](const Person& p) -> std::optional<Draft> {
         if (p.awards.empty()) return std::nullopt;
         const int year = p.awards[t.pick(p.awards.size())].second;
         Draft d;
         d.text = Templates::fill("What award did {a} receive in {b}?", t.name(p), std::to_string(year));
         for (const auto& a : p.awards)
           if (a.second == year) d.answers.insert(t.id(a.first));
         d.constraint = {{"kind", "overlap"}, {"subject", t.id(p.entity)}, {"predicate", P::award}, {"year", year}};
         return d;
       }},
      {"spouse_in_year",
       [&t, &w](const Person& p) -> std::optional<Draft> {
         if (!p.spouse) return std::nullopt;
         Draft d;
         d.text = Templates::fill("Who did {a} marry in {b}?", t.name(p), std::to_string(p.spouse->second));
         d.answers = {t.id(w.persons[p.spouse->first].entity)};
         d.constraint = {{"kind", "start_in"},
                         {"subject", t.id(p.entity)},
                         {"predicate", P::spouse},
                         {"year", p.spouse->second}};
         return d;
       }},
  };
}

std::optional<Draft> child_team_in_year(Templates& t, const Person& p) {
  const World& w = t.world();
  std::vector<const Person*> kids;
  for (int c : p.children) kids.push_back(&w.persons[c]);
  if (kids.empty()) return std::nullopt;
  const Person& kid = *kids[t.pick(kids.size())];
  const auto& iv = kid.teams[t.pick(kid.teams.size())];
  const int year = iv.start + t.pick(static_cast<std::size_t>(iv.end - iv.start + 1));
  Draft d;
  d.text = Templates::fill("Which team did the child of {a} play for in {b}?", t.name(p), std::to_string(year));
  for (const auto* k : kids) {
    auto s = Templates::containing(k->teams, year, w);
    d.answers.insert(s.begin(), s.end());
  }
  d.constraint = {{"kind", "chain_overlap"},
                  {"subject", t.id(p.entity)},
                  {"via", P::child},
                  {"predicate", P::team},
                  {"year", year}};
  d.hops = 2;
  return d;
}

std::vector<std::pair<std::string, Template>> implicit_templates(Templates& t) {
  const World& w = t.world();
  return {
      {"team_when_award",
       [&t, &w](const Person& p) -> std::optional<Draft> {
         std::vector<std::pair<int, int>> usable;
         for (const auto& a : p.awards)
           if (!Templates::containing(p.teams, a.second, w).empty()) usable.push_back(a);
         if (usable.empty()) return std::nullopt;
         const auto& [award, year] = usable[t.pick(usable.size())];
         Draft d;
         d.text = "Which team did " + t.name(p) + " play for when " + t.name(p) + " received the " + t.label(award) + "?";
         d.answers = Templates::containing(p.teams, year, w);
         d.constraint = {{"kind", "during"},
                         {"subject", t.id(p.entity)},
                         {"predicate", P::team},
                         {"anchor_predicate", P::award},
                         {"anchor_object", t.id(award)}};
         return d;
       }},
      {"position_while_team",
       [&t](const Person& p) -> std::optional<Draft> {
         std::vector<std::pair<Interval, std::set<std::string>>> usable;
         for (const auto& team : p.teams) {
           std::set<std::string> hits;
           for (const auto& pos : p.positions)
             if (pos.start <= team.end && team.start <= pos.end) hits.insert(t.id(pos.entity));
           if (!hits.empty()) usable.emplace_back(team, hits);
         }
         if (usable.empty()) return std::nullopt;
         const auto& [team, hits] = usable[t.pick(usable.size())];
         Draft d;
         d.text = "What position did " + t.name(p) + " hold while playing for the " + t.label(team.entity) + "?";
         d.answers = hits;
         d.constraint = {{"kind", "during"},
                         {"subject", t.id(p.entity)},
                         {"predicate", P::position},
                         {"anchor_predicate", P::team},
                         {"anchor_object", t.id(team.entity)}};
         return d;
       }},
      {"team_after_team",
       [&t](const Person& p) -> std::optional<Draft> {
         if (p.teams.size() < 2) return std::nullopt;
         const auto& first = p.teams[t.pick(p.teams.size() - 1)];
         Draft d;
         d.text = "Which team did " + t.name(p) + " play for after leaving the " + t.label(first.entity) + "?";
         for (const auto& iv : p.teams)
           if (iv.start > first.end) d.answers.insert(t.id(iv.entity));
         d.constraint = {{"kind", "after"},
                         {"subject", t.id(p.entity)},
                         {"predicate", P::team},
                         {"anchor_predicate", P::team},
                         {"anchor_object", t.id(first.entity)}};
         return d;
       }},
  };
}

std::vector<std::pair<std::string, Template>> temporal_answer_templates(Templates& t) {
  const World& w = t.world();
  return {
      {"when_award",
       [&t](const Person& p) -> std::optional<Draft> {
         if (p.awards.empty()) return std::nullopt;
         const auto& [award, year] = p.awards[t.pick(p.awards.size())];
         Draft d;
         d.text = "When did " + t.name(p) + " receive the " + t.label(award) + "?";
         d.answers = {Templates::year_id(year)};
         d.constraint = {{"kind", "when"},
                         {"subject", t.id(p.entity)},
                         {"predicate", P::award},
                         {"object", t.id(award)},
                         {"qualifier", P::point}};
         return d;
       }},
      {"when_born",
       [&t](const Person& p) -> std::optional<Draft> {
         Draft d;
         d.text = "When was " + t.name(p) + " born?";
         d.answers = {"T" + kg::to_iso(p.birth)};
         d.constraint = {{"kind", "when"}, {"subject", t.id(p.entity)}, {"predicate", P::birth_date}};
         return d;
       }},
      {"year_joined",
       [&t](const Person& p) -> std::optional<Draft> {
         const auto& iv = p.teams[t.pick(p.teams.size())];
         Draft d;
         d.text = "What year did " + t.name(p) + " join the " + t.label(iv.entity) + "?";
         for (const auto& s : p.teams)
           if (s.entity == iv.entity) d.answers.insert(Templates::year_id(s.start));
         d.constraint = {{"kind", "when"},
                         {"subject", t.id(p.entity)},
                         {"predicate", P::team},
                         {"object", t.id(iv.entity)},
                         {"qualifier", P::start}};
         return d;
       }},
      {"when_married",
       [&t, &w](const Person& p) -> std::optional<Draft> {
         if (!p.spouse) return std::nullopt;
         const auto& s = w.persons[p.spouse->first];
         Draft d;
         d.text = "When did " + t.name(p) + " marry " + t.name(s) + "?";
         d.answers = {Templates::year_id(p.spouse->second)};
         d.constraint = {{"kind", "when"},
                         {"subject", t.id(p.entity)},
                         {"predicate", P::spouse},
                         {"object", t.id(s.entity)},
                         {"qualifier", P::start}};
         return d;
       }},
  };
}

std::optional<Draft> spouse_born(Templates& t, const Person& p) {
  const World& w = t.world();
  if (!p.spouse) return std::nullopt;
  Draft d;
  d.text = "When was the spouse of " + t.name(p) + " born?";
  d.answers = {"T" + kg::to_iso(w.persons[p.spouse->first].birth)};
  d.constraint = {{"kind", "chain_when"},
                  {"subject", t.id(p.entity)},
                  {"via", json::array({P::spouse})},
                  {"predicate", P::birth_date}};
  d.hops = 2;
  return d;
}

std::optional<Draft> child_spouse_born(Templates& t, const Person& p) {
  const World& w = t.world();
  Draft d;
  for (int c : p.children)
    if (w.persons[c].spouse) d.answers.insert("T" + kg::to_iso(w.persons[w.persons[c].spouse->first].birth));
  if (d.answers.empty()) return std::nullopt;
  d.text = "When was the spouse of the child of " + t.name(p) + " born?";
  d.constraint = {{"kind", "chain_when"},
                  {"subject", t.id(p.entity)},
                  {"via", json::array({P::child, P::spouse})},
                  {"predicate", P::birth_date}};
  d.hops = 3;
  return d;
}

std::optional<Draft> spouse_child_born(Templates& t, const Person& p) {
  const World& w = t.world();
  if (!p.spouse) return std::nullopt;
  Draft d;
  for (int c : w.persons[p.spouse->first].children) d.answers.insert("T" + kg::to_iso(w.persons[c].birth));
  if (d.answers.empty()) return std::nullopt;
  d.text = "When was the child of the spouse of " + t.name(p) + " born?";
  d.constraint = {{"kind", "chain_when"},
                  {"subject", t.id(p.entity)},
                  {"via", json::array({P::spouse, P::child})},
                  {"predicate", P::birth_date}};
  d.hops = 3;
  return d;
}

std::vector<std::pair<std::string, Template>> ordinal_templates(Templates& t) {
  auto ordinal = [&t](const Person& p, const std::vector<Interval>& list, const char* pred, int rank,
                      const std::string& text) -> std::optional<Draft> {
    if (list.size() < 2) return std::nullopt;
    Draft d;
    d.text = text;
    d.answers = {t.id(rank > 0 ? list.front().entity : list.back().entity)};
    d.constraint = {{"kind", "ordinal"}, {"subject", t.id(p.entity)}, {"predicate", pred}, {"rank", rank}};
    return d;
  };
  return {
      {"first_team",
       [&t, ordinal](const Person& p) {
         return ordinal(p, p.teams, P::team, 1, "What was the first team " + t.name(p) + " played for?");
       }},
      {"last_team",
       [&t, ordinal](const Person& p) {
         return ordinal(p, p.teams, P::team, -1, "What was the last team " + t.name(p) + " played for?");
       }},
      {"first_school",
       [&t, ordinal](const Person& p) {
         return ordinal(p, p.schools, P::school, 1, "What was the first school " + t.name(p) + " attended?");
       }},
      {"first_award",
       [&t](const Person& p) -> std::optional<Draft> {
         if (p.awards.size() < 2) return std::nullopt;
         Draft d;
         d.text = "What was the first award " + t.name(p) + " received?";
         d.answers = {t.id(p.awards.front().first)};
         d.constraint = {{"kind", "ordinal"}, {"subject", t.id(p.entity)}, {"predicate", P::award}, {"rank", 1}};
         return d;
       }},
  };
}

}  // namespace

SyntheticCorpus generate_synthetic(const GeneratorConfig& c, std::uint64_t seed) {
  const int entities = c.persons + c.teams + c.schools + c.awards + c.cities + c.positions;
  if (entities < 20 || c.persons < 10 || c.teams < 2 || c.schools < 2 || c.awards < 2 || c.cities < 1 ||
      c.positions < 1)
    throw ContractViolation("synthetic world needs at least 20 entities and 10 persons");
  if (c.questions < 0) throw ContractViolation("question count must be non-negative");

  numeric::Rng rng(seed);
  World w = build_world(c, rng);
  SyntheticCorpus corpus;
  emit_world(w, corpus.kg);

  Templates t(w, rng);
  const auto counts =
      apportion(c.questions, {c.explicit_share, c.implicit_share, c.temporal_answer_share, c.ordinal_share});
  int far = static_cast<int>(std::lround(c.far_fraction * c.questions));
  int two_hop = static_cast<int>(std::lround(c.two_hop_fraction * c.questions));
  far = std::min(far, counts[2]);
  int two_hop_ta = std::min((two_hop + 1) / 2, counts[2] - far);
  int two_hop_ex = std::min(two_hop - two_hop_ta, counts[0]);

  // Each slot lists its templates in order of preference; a template whose
  // distinct questions are used up yields to the next one.
  using Named = std::pair<std::string, Template>;
  struct Slot {
    const char* category;
    std::vector<Named> options;
  };
  std::vector<Slot> slots;
  auto rotated = [](const std::vector<Named>& pool, int start) {
    std::vector<Named> out;
    for (std::size_t k = 0; k < pool.size(); ++k) out.push_back(pool[(start + k) % pool.size()]);
    return out;
  };
  auto fill_category = [&](const char* category, int count, const std::vector<Named>& special, int n_special,
                           const std::vector<Named>& pool) {
    for (int i = 0; i < count; ++i) {
      if (i < n_special)
        slots.push_back({category, special});
      else
        slots.push_back({category, rotated(pool, i - n_special)});
    }
  };
  auto explicit_pool = explicit_templates(t);
  auto implicit_pool = implicit_templates(t);
  auto answer_pool = temporal_answer_templates(t);
  auto ordinal_pool = ordinal_templates(t);
  const std::vector<Named> two_hop_explicit{{"child_team_in_year", [&t](const Person& p) { return child_team_in_year(t, p); }}};
  const std::vector<Named> far_answer{{"child_spouse_born", [&t](const Person& p) { return child_spouse_born(t, p); }},
                                      {"spouse_child_born", [&t](const Person& p) { return spouse_child_born(t, p); }}};
  const std::vector<Named> two_hop_answer{{"spouse_born", [&t](const Person& p) { return spouse_born(t, p); }}};
  fill_category("explicit", counts[0], two_hop_explicit, two_hop_ex, explicit_pool);
  fill_category("implicit", counts[1], {}, 0, implicit_pool);
  for (int i = 0; i < counts[2]; ++i) {
    if (i < far)
      slots.push_back({"temporal_answer", far_answer});
    else if (i < far + two_hop_ta)
      slots.push_back({"temporal_answer", two_hop_answer});
    else
      slots.push_back({"temporal_answer", rotated(answer_pool, i - far - two_hop_ta)});
  }
  fill_category("ordinal", counts[3], {}, 0, ordinal_pool);
  rng.shuffle(slots);

  std::set<std::string> texts;
  int next_id = 1;
  for (const auto& slot : slots) {
    std::optional<Draft> draft;
    std::string name;
    for (const auto& [option, make] : slot.options) {
      for (int tries = 0; tries < 2000 && !draft; ++tries) {
        const Person& p = w.persons[t.pick(w.persons.size())];
        draft = make(p);
        if (draft && (draft->answers.empty() || texts.count(draft->text))) draft.reset();
      }
      if (draft) {
        name = option;
        break;
      }
    }
    if (!draft)
      throw ContractViolation("cannot generate a '" + slot.options.front().first + "' question; enlarge the world");
    texts.insert(draft->text);
    BenchmarkQuestion q;
    char buf[16];
    std::snprintf(buf, sizeof buf, "q%04d", next_id++);
    q.id = buf;
    q.text = draft->text;
    q.answers.assign(draft->answers.begin(), draft->answers.end());
    q.categories = {slot.category};
    q.hops = draft->hops;
    q.constraint = draft->constraint;
    q.constraint["template"] = name;
    corpus.questions.push_back(std::move(q));
  }
  return corpus;
}

void write_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  kg::dump_kg(corpus.kg, dir / "items.jsonl", dir / "facts.jsonl");
  dump_benchmark(corpus.questions, dir / "questions.jsonl");
}

}  // namespace tempqa::pipeline
