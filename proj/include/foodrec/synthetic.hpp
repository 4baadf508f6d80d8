#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "foodrec/corpus.hpp"
#include "foodrec/ontology.hpp"

namespace foodrec {

/// A USDA food group and its size in the full database.
struct FoodGroup {
  std::string name;
  std::size_t database_items;
};

/// The 24 USDA food groups.
const std::vector<FoodGroup>& food_groups();

/// Concept graph matching the synthetic vocabulary: one class per group
/// (two for the mixed groups), one instance per characteristic food with an
/// instanceOf edge, and a few cross-group relations such as Fruit hasForm
/// Juice.
Ontology synthetic_ontology();

struct UserInterest {
  std::string user_id;
  std::vector<std::string> groups;
};

/// Five users, each interested in one to three food groups.
const std::vector<UserInterest>& default_interests();

/// Relevance judgments: an item is relevant iff its group is one of the
/// user's interests, flipped with probability `noise`. Users beyond the
/// defaults get a single random group.
std::vector<RatingSet> synthetic_ratings(const Corpus& corpus, std::size_t users = 5,
                                         std::uint64_t seed = 42, double noise = 0.0);

}  // namespace foodrec
