#include <doctest.h>

#include "fixtures.hpp"
#include "tempqa/question/analysis.hpp"

using namespace tempqa;
using namespace tempqa::question;

namespace {

bool has(const CategoryBits& bits, Category c) { return bits[static_cast<int>(c)] == 1; }
bool has(const SignalBits& bits, Signal s) { return bits[static_cast<int>(s)] == 1; }

class FixedDetector : public EntityDetector {
 public:
  explicit FixedDetector(std::vector<EntityLink> links) : links_(std::move(links)) {}
  std::vector<EntityLink> detect(const std::vector<Token>&) const override { return links_; }

 private:
  std::vector<EntityLink> links_;
};

}  // namespace

TEST_CASE("tokenizer") {
  CHECK(token_texts("Where did Obama's children study?") ==
        std::vector<std::string>{"where", "did", "obama", "'s", "children", "study"});
  CHECK(token_texts("during 9/11, on 20-01-2009.") == std::vector<std::string>{"during", "9/11", "on", "20-01-2009"});
  CHECK(token_texts("don't stop") == std::vector<std::string>{"don't", "stop"});
}

TEST_CASE("gazetteer entity detection") {
  auto g = testing::obama_kg();
  GazetteerDetector gaz(g);
  auto ids = detect_entities("where did obama's children study when he became president?", {&gaz});
  CHECK(ids == std::vector<kg::ItemId>{"obama", "potus"});
  CHECK(detect_entities("what is the speed of light?", {&gaz}).empty());

  FixedDetector a({{0, 1, "malia"}}), b({{2, 3, "sasha"}});
  CHECK(detect_entities("malia and sasha", {&a, &b}) == std::vector<kg::ItemId>{"malia", "sasha"});
}

TEST_CASE("gazetteer prefers longest match, then more facts") {
  kg::KnowledgeGraph g;
  testing::add_entity(g, "x1", "United");
  testing::add_entity(g, "x2", "United States", {"us"});
  testing::add_entity(g, "y1", "Paris");
  testing::add_entity(g, "y2", "Paris", {"the"});
  testing::add_entity(g, "z", "Z");
  testing::add_predicate(g, "p", "p");
  g.add_fact({"f", "y2", "p", "z", {}});
  GazetteerDetector gaz(g);
  auto links = gaz.detect(tokenize("the united states and paris"));
  REQUIRE(links.size() == 2);
  CHECK(links[0] == EntityLink{1, 3, "x2"});
  CHECK(links[1] == EntityLink{4, 5, "y2"});
}

TEST_CASE("table of sample questions receives the listed categories") {
  struct Row {
    const char* q;
    Category c;
  };
  const Row rows[] = {
      {"who won oscar for best actress 1986?", Category::explicit_},
      {"which movie did jaco van dormael direct in 2009?", Category::explicit_},
      {"what currency is used in germany 2012?", Category::explicit_},
      {"who was king of france during the ninth crusade?", Category::implicit},
      {"what did thomas jefferson do before he was president?", Category::implicit},
      {"what club did cristiano ronaldo play for after manchester united?", Category::implicit},
      {"what was the first film julie andrews starred in?", Category::ordinal},
      {"what was the second position held by pierre de coubertin?", Category::ordinal},
      {"who is elizabeth taylor's last husband?", Category::ordinal},
      {"what year did lakers win their first championship?", Category::temporal_answer},
      {"when was james cagney's spouse born?", Category::temporal_answer},
      {"when was the last time the orioles won the world series?", Category::temporal_answer},
  };
  for (const auto& r : rows) {
    CAPTURE(r.q);
    CHECK(has(tag_categories(r.q), r.c));
  }
  auto dual = tag_categories("what was the first film julie andrews starred in after her divorce with tony walton?");
  CHECK(has(dual, Category::implicit));
  CHECK(has(dual, Category::ordinal));
  // the ordinal inside an event name is not a question ordinal
  CHECK_FALSE(has(tag_categories("who was king of france during the ninth crusade?"), Category::ordinal));
  CHECK_FALSE(has(tag_categories("who won oscar for best actress 1986?"), Category::implicit));
}

TEST_CASE("signals") {
  auto after = tag_signals("what club did cristiano ronaldo play for after manchester united?");
  CHECK(has(after, Signal::after));
  CHECK_FALSE(has(after, Signal::no_signal));
  CHECK(has(tag_signals("who is elizabeth taylor's last husband?"), Signal::ordinal));
  auto none = tag_signals("when was obama born?");
  CHECK(has(none, Signal::no_signal));
  CHECK(std::count(none.begin(), none.end(), 1) == 1);
  auto overlap = tag_signals("where did obama's children study when he became president?");
  CHECK(has(overlap, Signal::overlap));
  CHECK(has(tag_signals("which movie did jaco van dormael direct in 2009?"), Signal::overlap));
  CHECK(has(tag_signals("what did thomas jefferson do before he was president?"), Signal::before));
}

TEST_CASE("explicit expressions") {
  CHECK(extract_explicit_expressions("which movie did jaco van dormael direct in 2009?") ==
        std::vector<kg::Timestamp>{kg::Timestamp::of_year(2009)});
  CHECK(extract_explicit_expressions("where did obama live during 9/11?") ==
        std::vector<kg::Timestamp>{kg::Timestamp::of_day(2001, 9, 11)});
  CHECK(extract_explicit_expressions("who is elizabeth taylor's last husband?").empty());
  CHECK(extract_explicit_expressions("who led on january 20, 2009 and in may 1990 and 4 july 1998?") ==
        std::vector<kg::Timestamp>{kg::Timestamp::of_day(2009, 1, 20), kg::Timestamp::of_month(1990, 5),
                                   kg::Timestamp::of_day(1998, 7, 4)});
  CHECK(extract_explicit_expressions("what was popular in the 1980s on 30-04-1975") ==
        std::vector<kg::Timestamp>{kg::Timestamp::of_year(1980), kg::Timestamp::of_day(1975, 4, 30)});
  CHECK(extract_explicit_expressions("who may win 5000 races").empty());
}

TEST_CASE("analysis invariants") {
  auto g = testing::obama_kg();
  GazetteerDetector gaz(g);
  QuestionAnalyzer analyzer({&gaz});
  const char* questions[] = {
      "where did obama's children study when he became president?",
      "when was obama born?",
      "who won oscar for best actress 1986?",
      "what was the first film julie andrews starred in after her divorce with tony walton?",
      "where did obama live during 9/11?",
      "x",
  };
  for (const char* q : questions) {
    CAPTURE(q);
    auto a = analyzer.analyze(q);
    CHECK(a == analyzer.analyze(q));
    CHECK_FALSE(a.tokens.empty());
    const bool others = std::any_of(a.signals.begin(), a.signals.begin() + 6, [](auto b) { return b == 1; });
    CHECK(others != (a.signals[6] == 1));
    if (has(a.categories, Category::explicit_)) CHECK_FALSE(a.explicit_expressions.empty());
    for (auto b : a.categories) CHECK(b <= 1);
  }
  auto fig = analyzer.analyze("where did obama's children study when he became president?");
  CHECK(has(fig.categories, Category::implicit));
  CHECK(fig.entities == std::vector<kg::ItemId>{"obama", "potus"});
}
