#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "foodrec/corpus.hpp"
#include "foodrec/textpipe.hpp"

namespace foodrec {

inline constexpr double kDefaultBoost = 1.25;
inline constexpr double kDefaultBoostCap = 2.0;

/// Nutrition heuristic: when any trigger term appears in the query or
/// profile, items carrying one of the boosted tags are promoted.
struct HeuristicRule {
  std::string id;
  std::set<std::string> trigger_terms;  // preprocessed
  std::set<std::string> boosted_tags;   // lowercase
  double boost = kDefaultBoost;         // >= 1

  bool operator==(const HeuristicRule&) const = default;
};

/// Tag -> combined factor for one query or profile. Absent tags mean 1.0.
struct BoostContext {
  std::map<std::string, double> active_tags;

  bool empty() const { return active_tags.empty(); }
};

/// Trigger terms are written as plain words and preprocessed on load, so
/// "breakfasts" and "breakfast" both trigger. Throws Error(validation) on a
/// boost below 1, an empty trigger set or a duplicate rule id.
std::vector<HeuristicRule> parse_rules_json(std::string_view text);
std::vector<HeuristicRule> load_rules(const std::filesystem::path& path);
std::string rules_to_json(const std::vector<HeuristicRule>& rules);

/// The bundled rule set (breakfast -> hot, ...).
const std::vector<HeuristicRule>& default_rules();

/// Factors of every rule triggered by `query_terms`, multiplied per tag.
BoostContext activate(const std::vector<HeuristicRule>& rules, const TermList& query_terms);

/// Product of the context factors for the item's tags, capped at `cap`.
double boost_factor(const BoostContext& ctx, const FoodItem& item,
                    double cap = kDefaultBoostCap);

}  // namespace foodrec
