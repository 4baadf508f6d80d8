#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foodrec/corpus.hpp"
#include "foodrec/heuristics.hpp"
#include "foodrec/ontology.hpp"
#include "foodrec/profile.hpp"
#include "foodrec/similarity.hpp"

namespace foodrec {

struct RecommenderConfig {
  MeasureKind measure = MeasureKind::proposed;
  double cutoff = 0.5;                 // recommend when score > cutoff
  std::optional<std::size_t> top_k;    // >= 1 when set
  ProposedParams proposed;
  BinaryCosineVariant bcosine_variant = BinaryCosineVariant::product;

  /// Throws Error(config) when a field is out of range.
  void validate() const;
};

struct Recommendation {
  std::string item_id;
  double score = 0.0;
  MeasureKind measure = MeasureKind::proposed;

  bool operator==(const Recommendation&) const = default;
};

/// Everything a score needs besides the profile and the item.
struct ScoringInputs {
  const TermIndex& index;
  const Ontology* ontology = nullptr;  // required by concept measures
  BoostContext boosts;
};

/// Score in [0, 1] of one item under the configured measure. The profile
/// acts as a pseudo-item carrying its concept set. Throws Error(config) when
/// a concept measure is selected without an ontology.
double score_item(const UserProfile& profile, const FoodItem& item,
                  const RecommenderConfig& cfg, const ScoringInputs& in);

/// Items scoring strictly above the cutoff, best first, ties by item id,
/// truncated to top_k.
std::vector<Recommendation> recommend(const UserProfile& profile, const Corpus& candidates,
                                      const RecommenderConfig& cfg, const ScoringInputs& in);

/// Applies cutoff/ordering/truncation to precomputed (item id, score) pairs.
std::vector<Recommendation> select(std::vector<std::pair<std::string, double>> scored,
                                   const RecommenderConfig& cfg);

}  // namespace foodrec
