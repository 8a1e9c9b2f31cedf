#pragma once

#include <string>
#include <vector>

#include "tempqa/kg/knowledge_graph.hpp"

namespace tempqa::testing {

inline void add_entity(kg::KnowledgeGraph& g, const std::string& id, const std::string& label,
                       std::set<std::string> aliases = {}) {
  g.add_item({id, label, kg::ItemKind::entity, std::move(aliases), std::nullopt});
}

inline void add_predicate(kg::KnowledgeGraph& g, const std::string& id, const std::string& label,
                          std::set<std::string> aliases = {}) {
  g.add_item({id, label, kg::ItemKind::predicate, std::move(aliases), std::nullopt});
}

inline void add_date(kg::KnowledgeGraph& g, const std::string& id, kg::Timestamp ts) {
  g.add_item({id, kg::to_display(ts), kg::ItemKind::timestamp, {}, ts});
}

// Excerpt around Barack Obama: presidency, marriage, children, schools.
inline kg::KnowledgeGraph obama_kg() {
  kg::KnowledgeGraph g;
  add_entity(g, "obama", "Barack Obama", {"obama", "barack obama"});
  add_entity(g, "michelle", "Michelle Obama", {"michelle"});
  add_entity(g, "malia", "Malia Obama", {"malia"});
  add_entity(g, "sasha", "Sasha Obama", {"sasha"});
  add_entity(g, "potus", "President of the United States", {"president", "us president"});
  add_entity(g, "usa", "United States of America", {"usa", "united states"});
  add_entity(g, "harvard", "Harvard University", {"harvard"});
  add_entity(g, "sidwell", "Sidwell Friends School", {"sidwell"});
  add_entity(g, "trinity", "Trinity United Church of Christ");
  add_predicate(g, "position_held", "position held");
  add_predicate(g, "start_date", "start date");
  add_predicate(g, "end_date", "end date");
  add_predicate(g, "spouse", "spouse", {"wife", "husband"});
  add_predicate(g, "place_of_marriage", "place of marriage");
  add_predicate(g, "child", "child", {"children"});
  add_predicate(g, "educated_at", "educated at", {"study", "studied"});
  add_predicate(g, "date_of_birth", "date of birth", {"born"});
  add_predicate(g, "citizenship", "country of citizenship");
  add_predicate(g, "country", "country");
  add_date(g, "t2009-01-20", kg::Timestamp::of_day(2009, 1, 20));
  add_date(g, "t2017-01-20", kg::Timestamp::of_day(2017, 1, 20));
  add_date(g, "t1992-10-03", kg::Timestamp::of_day(1992, 10, 3));
  add_date(g, "t2009-01-05", kg::Timestamp::of_day(2009, 1, 5));
  add_date(g, "t1998-07-04", kg::Timestamp::of_day(1998, 7, 4));
  add_date(g, "t2016", kg::Timestamp::of_year(2016));
  g.add_fact({"f_potus", "obama", "position_held", "potus",
              {{"start_date", "t2009-01-20"}, {"end_date", "t2017-01-20"}}});
  g.add_fact({"f_spouse", "obama", "spouse", "michelle",
              {{"start_date", "t1992-10-03"}, {"place_of_marriage", "trinity"}}});
  g.add_fact({"f_child_malia", "obama", "child", "malia", {}});
  g.add_fact({"f_child_sasha", "obama", "child", "sasha", {}});
  g.add_fact({"f_malia_school", "malia", "educated_at", "sidwell", {{"start_date", "t2009-01-05"}}});
  g.add_fact({"f_malia_harvard", "malia", "educated_at", "harvard", {{"start_date", "t2016"}}});
  g.add_fact({"f_malia_dob", "malia", "date_of_birth", "t1998-07-04", {}});
  g.add_fact({"f_sasha_school", "sasha", "educated_at", "sidwell", {}});
  g.add_fact({"f_obama_usa", "obama", "citizenship", "usa", {}});
  g.add_fact({"f_potus_usa", "potus", "country", "usa", {}});
  return g;
}

}  // namespace tempqa::testing
