#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "foodrec/corpus.hpp"
#include "foodrec/heuristics.hpp"
#include "foodrec/ontology.hpp"
#include "foodrec/profile.hpp"

namespace foodrec {

enum class MeasureKind {
  tfidf_cosine,
  concept_equivalence,
  binary_cosine,
  jaccard,
  semantic_relatedness,
  proposed,
};

inline constexpr std::array<MeasureKind, 6> kAllMeasures = {
    MeasureKind::tfidf_cosine, MeasureKind::concept_equivalence, MeasureKind::binary_cosine,
    MeasureKind::jaccard,      MeasureKind::semantic_relatedness, MeasureKind::proposed};

/// Short names used on the command line and in reports:
/// tfidf, equivalence, bcosine, jaccard, semrel, proposed.
std::string_view to_string(MeasureKind kind);
std::optional<MeasureKind> parse_measure(std::string_view name);

/// Whether the measure reads concept annotations.
bool uses_concepts(MeasureKind kind);

enum class BinaryCosineVariant {
  product,   // |U∩A| / (|U|·|A|)
  standard,  // |U∩A| / sqrt(|U|·|A|)
};

/// Concept id -> weight; reuses the sparse nonnegative vector type.
using WeightedConceptVector = TermWeightVector;

/// 1 if the sets share a concept, else 0.
double concept_equivalence(const ConceptSet& u, const ConceptSet& a);
double binary_cosine(const ConceptSet& u, const ConceptSet& a,
                     BinaryCosineVariant variant = BinaryCosineVariant::product);
/// 0 when both sets are empty.
double jaccard(const ConceptSet& u, const ConceptSet& a);

/// Weighted expansion of `concepts` over 1-hop neighborhoods: members keep
/// their base weight (default 1), neighbors outside the set get
/// `decay * base`, overlapping contributions keep the maximum.
/// Throws Error(not_found) for a concept missing from `onto`.
WeightedConceptVector expand(const Ontology& onto, const ConceptSet& concepts, double decay,
                             const std::map<std::string, double>& base_weights = {});

/// Cosine over the union of keys; 0 if either vector is empty.
double cosine(const TermWeightVector& a, const TermWeightVector& b);
inline double semrel(const WeightedConceptVector& a, const WeightedConceptVector& b) {
  return cosine(a, b);
}
inline double tfidf_cosine(const TermWeightVector& a, const TermWeightVector& b) {
  return cosine(a, b);
}

struct ProposedParams {
  double alpha = 0.5;   // weight of the TF-IDF cosine in the blend
  double lambda = 0.5;  // neighbor decay for the concept expansion
  double boost_cap = kDefaultBoostCap;
};

/// min(1, boost * (alpha * tfidf_cos + (1 - alpha) * semrel(expanded sets))).
double proposed_score(const UserProfile& profile, const FoodItem& item,
                      const TermWeightVector& item_vector, const Ontology& onto,
                      const BoostContext& ctx, const ProposedParams& params);

}  // namespace foodrec
