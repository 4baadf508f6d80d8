#include "foodrec/heuristics.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "foodrec/error.hpp"
#include "json.hpp"
#include "resources.hpp"

namespace foodrec {

using nlohmann::json;

namespace {

std::vector<HeuristicRule> parse_rules_document(std::string_view text) {
  const auto trimmed_empty = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
  if (trimmed_empty) return {};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::format, std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorKind::format, "rules JSON must be an array");

  std::vector<HeuristicRule> rules;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& j = doc[i];
    HeuristicRule rule;
    rule.id = j.value("id", "rule" + std::to_string(i));
    for (const auto& t : j.value("trigger_terms", json::array())) {
      for (auto& term : preprocess(t.get<std::string>())) rule.trigger_terms.insert(std::move(term));
    }
    for (const auto& t : j.value("boosted_tags", json::array())) {
      auto tag = t.get<std::string>();
      std::transform(tag.begin(), tag.end(), tag.begin(),
                     [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
      if (!tag.empty()) rule.boosted_tags.insert(std::move(tag));
    }
    rule.boost = j.value("boost", kDefaultBoost);

    const std::string where = "rule '" + rule.id + "'";
    if (!ids.insert(rule.id).second) throw Error(ErrorKind::validation, where + ": duplicate id");
    if (rule.trigger_terms.empty()) {
      throw Error(ErrorKind::validation, where + ": no usable trigger terms");
    }
    if (!(rule.boost >= 1.0)) {
      throw Error(ErrorKind::validation, where + ": boost must be >= 1.0");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

}  // namespace

std::vector<HeuristicRule> parse_rules_json(std::string_view text) {
  try {
    return parse_rules_document(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, std::string("rules JSON: ") + e.what());
  }
}

std::vector<HeuristicRule> load_rules(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_rules_json(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string rules_to_json(const std::vector<HeuristicRule>& rules) {
  json doc = json::array();
  for (const auto& r : rules) {
    doc.push_back({{"id", r.id},
                   {"trigger_terms", r.trigger_terms},
                   {"boosted_tags", r.boosted_tags},
                   {"boost", r.boost}});
  }
  return doc.dump(2) + "\n";
}

const std::vector<HeuristicRule>& default_rules() {
  static const std::vector<HeuristicRule> rules = parse_rules_json(resources::default_rules_json);
  return rules;
}

BoostContext activate(const std::vector<HeuristicRule>& rules, const TermList& query_terms) {
  const std::set<std::string> terms(query_terms.begin(), query_terms.end());
  BoostContext ctx;
  for (const auto& rule : rules) {
    const bool triggered = std::any_of(rule.trigger_terms.begin(), rule.trigger_terms.end(),
                                       [&](const std::string& t) { return terms.contains(t); });
    if (!triggered || rule.boost == 1.0) continue;
    for (const auto& tag : rule.boosted_tags) {
      auto [it, inserted] = ctx.active_tags.emplace(tag, rule.boost);
      if (!inserted) it->second *= rule.boost;
    }
  }
  return ctx;
}

double boost_factor(const BoostContext& ctx, const FoodItem& item, double cap) {
  double factor = 1.0;
  for (const auto& tag : item.tags) {
    const auto it = ctx.active_tags.find(tag);
    if (it != ctx.active_tags.end()) factor *= it->second;
  }
  return std::min(factor, std::max(cap, 1.0));
}

}  // namespace foodrec
