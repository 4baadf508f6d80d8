#include <algorithm>

#include "doctest.h"
#include "foodrec/error.hpp"
#include "foodrec/recommender.hpp"
#include "foodrec/synthetic.hpp"
#include "test_util.hpp"

using namespace foodrec;

TEST_SUITE("recommender") {

TEST_CASE("config validation") {
  RecommenderConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.cutoff = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.top_k = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.proposed.alpha = -0.1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.proposed.lambda = 2;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.proposed.boost_cap = 0.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("selection is strict, ordered and truncated") {
  RecommenderConfig cfg;
  cfg.cutoff = 0.5;
  const std::vector<std::pair<std::string, double>> scored{
      {"d", 0.9}, {"a", 0.5}, {"c", 0.7}, {"b", 0.7}, {"e", 0.1}};
  const auto out = select(scored, cfg);
  REQUIRE(out.size() == 3);
  CHECK(out[0].item_id == "d");
  CHECK(out[1].item_id == "b");
  CHECK(out[2].item_id == "c");
  cfg.top_k = 2;
  CHECK(select(scored, cfg).size() == 2);
  cfg.cutoff = 1.0;
  cfg.top_k.reset();
  CHECK(select({{"x", 1.0}}, cfg).empty());
  cfg.cutoff = 0.0;
  CHECK(select({{"x", 0.0}}, cfg).empty());
}

TEST_CASE("concept measures need an ontology") {
  const Corpus c({testutil::item("a", "Banana", "raw")});
  const TermIndex index(c);
  UserProfile p;
  p.term_weights = index.item_vector("a");
  const ScoringInputs in{index, nullptr, {}};
  for (const auto m : {MeasureKind::concept_equivalence, MeasureKind::binary_cosine,
                       MeasureKind::jaccard, MeasureKind::semantic_relatedness,
                       MeasureKind::proposed}) {
    RecommenderConfig cfg;
    cfg.measure = m;
    try {
      (void)score_item(p, c.at("a"), cfg, in);
      FAIL("expected a config error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::config);
    }
  }
  RecommenderConfig text;
  text.measure = MeasureKind::tfidf_cosine;
  CHECK_NOTHROW((void)score_item(p, c.at("a"), text, in));
  RecommenderConfig pure;
  pure.proposed.alpha = 1.0;
  CHECK_NOTHROW((void)score_item(p, c.at("a"), pure, in));
}

TEST_CASE("recommend scores every candidate with the configured measure") {
  const auto onto = synthetic_ontology();
  const auto c = onto.annotate_corpus(generate_synthetic(default_group_counts(120), 3));
  const TermIndex index(c);
  const auto ratings = synthetic_ratings(c, 5, 3);
  const auto p = build_profile(ratings.front(), c, &onto, index);
  const ScoringInputs in{index, &onto, {}};
  for (const auto m : kAllMeasures) {
    RecommenderConfig cfg;
    cfg.measure = m;
    cfg.cutoff = 0.2;
    const auto recs = recommend(p, c, cfg, in);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      CHECK(recs[i].measure == m);
      CHECK(recs[i].score > 0.2);
      CHECK(recs[i].score == doctest::Approx(score_item(p, c.at(recs[i].item_id), cfg, in)));
      if (i > 0) CHECK(recs[i - 1].score >= recs[i].score);
    }
    std::size_t above = 0;
    for (const auto& it : c.items()) above += score_item(p, it, cfg, in) > 0.2;
    CHECK(recs.size() == above);
  }
}

}  // TEST_SUITE
