#include "foodrec/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "foodrec/error.hpp"

namespace foodrec {
namespace {

std::size_t intersection_size(const ConceptSet& a, const ConceptSet& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

}  // namespace

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::tfidf_cosine: return "tfidf";
    case MeasureKind::concept_equivalence: return "equivalence";
    case MeasureKind::binary_cosine: return "bcosine";
    case MeasureKind::jaccard: return "jaccard";
    case MeasureKind::semantic_relatedness: return "semrel";
    case MeasureKind::proposed: return "proposed";
  }
  return "unknown";
}

std::optional<MeasureKind> parse_measure(std::string_view name) {
  for (const auto kind : kAllMeasures) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

bool uses_concepts(MeasureKind kind) {
  return kind != MeasureKind::tfidf_cosine;
}

double concept_equivalence(const ConceptSet& u, const ConceptSet& a) {
  return intersection_size(u, a) > 0 ? 1.0 : 0.0;
}

double binary_cosine(const ConceptSet& u, const ConceptSet& a, BinaryCosineVariant variant) {
  if (u.empty() || a.empty()) return 0.0;
  const auto common = static_cast<double>(intersection_size(u, a));
  const auto product = static_cast<double>(u.size()) * static_cast<double>(a.size());
  return variant == BinaryCosineVariant::product ? common / product : common / std::sqrt(product);
}

double jaccard(const ConceptSet& u, const ConceptSet& a) {
  const auto common = intersection_size(u, a);
  const auto uni = u.size() + a.size() - common;
  return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

WeightedConceptVector expand(const Ontology& onto, const ConceptSet& concepts, double decay,
                             const std::map<std::string, double>& base_weights) {
  if (!(decay >= 0.0 && decay <= 1.0)) {
    throw Error(ErrorKind::config, "neighbor decay must lie in [0, 1]");
  }
  const auto base = [&](const std::string& c) {
    const auto it = base_weights.find(c);
    return it == base_weights.end() ? 1.0 : it->second;
  };
  std::map<std::string, double> weights;
  for (const auto& c : concepts) {
    const double w = base(c);
    weights[c] = std::max(weights[c], w);
    for (const auto& d : onto.neighborhood(c)) {
      if (concepts.contains(d)) continue;
      weights[d] = std::max(weights[d], decay * w);
    }
  }
  WeightedConceptVector out;
  for (const auto& [c, w] : weights) out.set(c, w);
  return out;
}

double cosine(const TermWeightVector& a, const TermWeightVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  const double denom = a.norm() * b.norm();
  if (denom == 0.0) return 0.0;
  return std::clamp(a.dot(b) / denom, 0.0, 1.0);
}

double proposed_score(const UserProfile& profile, const FoodItem& item,
                      const TermWeightVector& item_vector, const Ontology& onto,
                      const BoostContext& ctx, const ProposedParams& params) {
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) {
    throw Error(ErrorKind::config, "alpha must lie in [0, 1]");
  }
  const double text = tfidf_cosine(profile.term_weights, item_vector);
  double semantic = 0.0;
  if (params.alpha < 1.0) {
    semantic = semrel(expand(onto, profile.concepts, params.lambda),
                      expand(onto, item.concepts, params.lambda));
  }
  const double blend = params.alpha * text + (1.0 - params.alpha) * semantic;
  return std::min(1.0, boost_factor(ctx, item, params.boost_cap) * blend);
}

}  // namespace foodrec
