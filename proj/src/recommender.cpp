#include "foodrec/recommender.hpp"

#include <algorithm>
#include <cmath>

#include "foodrec/error.hpp"

namespace foodrec {

void RecommenderConfig::validate() const {
  if (!(cutoff >= 0.0 && cutoff <= 1.0)) throw Error(ErrorKind::config, "cutoff must lie in [0, 1]");
  if (top_k && *top_k == 0) throw Error(ErrorKind::config, "top_k must be >= 1");
  if (!(proposed.alpha >= 0.0 && proposed.alpha <= 1.0)) {
    throw Error(ErrorKind::config, "alpha must lie in [0, 1]");
  }
  if (!(proposed.lambda >= 0.0 && proposed.lambda <= 1.0)) {
    throw Error(ErrorKind::config, "lambda must lie in [0, 1]");
  }
  if (!(proposed.boost_cap >= 1.0)) throw Error(ErrorKind::config, "boost cap must be >= 1");
}

double score_item(const UserProfile& profile, const FoodItem& item,
                  const RecommenderConfig& cfg, const ScoringInputs& in) {
  const bool needs_ontology =
      cfg.measure == MeasureKind::proposed ? cfg.proposed.alpha < 1.0 : uses_concepts(cfg.measure);
  if (needs_ontology && in.ontology == nullptr) {
    throw Error(ErrorKind::config,
                "measure '" + std::string(to_string(cfg.measure)) + "' requires an ontology");
  }
  const auto& u = profile.concepts;
  const auto& a = item.concepts;
  switch (cfg.measure) {
    case MeasureKind::tfidf_cosine:
      return tfidf_cosine(profile.term_weights, in.index.item_vector(item.id));
    case MeasureKind::concept_equivalence:
      return concept_equivalence(u, a);
    case MeasureKind::binary_cosine:
      return binary_cosine(u, a, cfg.bcosine_variant);
    case MeasureKind::jaccard:
      return jaccard(u, a);
    case MeasureKind::semantic_relatedness:
      return semrel(expand(*in.ontology, u, cfg.proposed.lambda),
                    expand(*in.ontology, a, cfg.proposed.lambda));
    case MeasureKind::proposed: {
      static const Ontology empty;
      return proposed_score(profile, item, in.index.item_vector(item.id),
                            in.ontology ? *in.ontology : empty, in.boosts, cfg.proposed);
    }
  }
  throw Error(ErrorKind::config, "unknown measure");
}

std::vector<Recommendation> select(std::vector<std::pair<std::string, double>> scored,
                                   const RecommenderConfig& cfg) {
  std::vector<Recommendation> out;
  for (auto& [id, score] : scored) {
    if (score > cfg.cutoff) out.push_back({std::move(id), score, cfg.measure});
  }
  std::sort(out.begin(), out.end(), [](const Recommendation& x, const Recommendation& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.item_id < y.item_id;
  });
  if (cfg.top_k && out.size() > *cfg.top_k) out.resize(*cfg.top_k);
  return out;
}

std::vector<Recommendation> recommend(const UserProfile& profile, const Corpus& candidates,
                                      const RecommenderConfig& cfg, const ScoringInputs& in) {
  cfg.validate();
  std::vector<std::pair<std::string, double>> scored;
  scored.reserve(candidates.size());
  for (const auto& item : candidates.items()) {
    scored.emplace_back(item.id, score_item(profile, item, cfg, in));
  }
  return select(std::move(scored), cfg);
}

}  // namespace foodrec
