#include "foodrec/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include <fmt/core.h>

#include "foodrec/error.hpp"
#include "random.hpp"

namespace foodrec {
namespace {

struct ClassSpec {
  const char* id;
  std::vector<const char*> words;
};

struct GroupVocab {
  const char* name;
  std::size_t database_items;
  std::vector<ClassSpec> classes;   // first class owns the instances
  std::vector<const char*> foods;   // instance concepts
  double hot;                       // probability of the "hot" tag
  double fresh;                     // probability of the "fresh" tag
  double breakfast;                 // probability of mentioning breakfast
};

const std::vector<GroupVocab>& vocabulary() {
  static const std::vector<GroupVocab> v = {
      {"American Indian", 165, {{"NativeFood", {"native", "traditional"}}},
       {"frybread", "acorn", "pemmican", "succotash", "hominy", "buffalo", "chokecherry"}, 0.3, 0.1, 0.0},
      {"Baby Foods", 329, {{"BabyFood", {"baby", "infant"}}},
       {"puree", "formula", "rusk", "strained", "toddler", "teething"}, 0.1, 0.0, 0.1},
      {"Baked Products", 497, {{"BakedGood", {"bakery", "bread"}}},
       {"muffin", "croissant", "bagel", "cake", "cookie", "pastry", "biscuit"}, 0.3, 0.1, 0.2},
      {"Beef Products", 757, {{"Beef", {"beef"}}},
       {"steak", "brisket", "sirloin", "ribeye", "chuck", "patty"}, 0.6, 0.1, 0.0},
      {"Beverages", 284, {{"Beverage", {"beverage", "drink"}}},
       {"coffee", "tea", "soda", "cocoa", "lemonade", "water"}, 0.35, 0.1, 0.15},
      {"Breakfast Cereals", 408, {{"Cereal", {"cereal"}}},
       {"oatmeal", "granola", "flakes", "porridge", "muesli", "bran", "grits"}, 0.5, 0.0, 0.7},
      {"Cereal Grains", 184, {{"Grain", {"grain"}}},
       {"rice", "barley", "quinoa", "wheat", "millet", "couscous", "bulgur"}, 0.4, 0.0, 0.0},
      {"Dairy and Egg", 253, {{"Dairy", {"dairy", "milk"}}, {"Egg", {"egg"}}},
       {"cheese", "yogurt", "butter", "cream", "omelet", "custard"}, 0.2, 0.3, 0.3},
      {"Fast Foods", 385, {{"FastFood", {"fast"}}},
       {"burger", "fries", "pizza", "taco", "nugget", "hotdog", "burrito"}, 0.8, 0.0, 0.05},
      {"Fats and Oils", 220, {{"Fat", {"fat", "oil"}}},
       {"margarine", "shortening", "lard", "olive", "canola", "ghee"}, 0.0, 0.0, 0.0},
      {"Finfish", 258, {{"Fish", {"fish", "finfish"}}},
       {"salmon", "tuna", "cod", "trout", "halibut", "sardine", "mackerel"}, 0.4, 0.3, 0.0},
      {"Fruits and Juices", 329, {{"Fruit", {"fruit"}}, {"Juice", {"juice"}}},
       {"banana", "apple", "orange", "grape", "mango", "peach", "strawberry", "pineapple"}, 0.0, 0.7, 0.1},
      {"Lamb and Veal", 345, {{"Lamb", {"lamb"}}, {"Veal", {"veal"}}},
       {"cutlet", "shank", "loin", "rack", "mutton"}, 0.6, 0.1, 0.0},
      {"Legumes", 386, {{"Legume", {"legume", "bean"}}},
       {"lentil", "chickpea", "soybean", "tofu", "peanut", "hummus", "pea"}, 0.3, 0.1, 0.0},
      {"Nut and Seed", 128, {{"Nut", {"nut", "seed"}}},
       {"almond", "walnut", "cashew", "pecan", "sunflower", "sesame", "pistachio"}, 0.0, 0.0, 0.0},
      {"Pork Products", 340, {{"Pork", {"pork"}}},
       {"ham", "bacon", "tenderloin", "spareribs", "belly", "chop"}, 0.6, 0.0, 0.2},
      {"Poultry Products", 388, {{"Poultry", {"poultry"}}},
       {"chicken", "turkey", "duck", "goose", "wing", "drumstick"}, 0.6, 0.1, 0.0},
      {"Restaurant and Meals", 121, {{"RestaurantMeal", {"restaurant", "meal"}}},
       {"lasagna", "curry", "stew", "casserole", "enchilada", "dumpling"}, 0.8, 0.0, 0.0},
      {"Sausages and Luncheon", 234, {{"Sausage", {"sausage", "luncheon"}}},
       {"salami", "bologna", "pepperoni", "frankfurter", "bratwurst", "chorizo"}, 0.3, 0.0, 0.15},
      {"Snacks", 169, {{"Snack", {"snack"}}},
       {"chips", "pretzel", "popcorn", "cracker", "jerky", "trail"}, 0.05, 0.1, 0.0},
      {"Soups and Sauces", 510, {{"Soup", {"soup"}}, {"Sauce", {"sauce"}}},
       {"broth", "chowder", "bisque", "gravy", "salsa", "ketchup", "noodle"}, 0.7, 0.0, 0.0},
      {"Spices and Herbs", 61, {{"Spice", {"spice", "herb"}}},
       {"pepper", "cinnamon", "basil", "oregano", "paprika", "thyme", "ginger"}, 0.0, 0.3, 0.0},
      {"Sweets", 341, {{"Sweet", {"sweet", "candy"}}},
       {"chocolate", "caramel", "fudge", "syrup", "honey", "jelly", "pudding"}, 0.1, 0.0, 0.05},
      {"Vegetables", 814, {{"Vegetable", {"vegetable"}}},
       {"carrot", "broccoli", "spinach", "potato", "tomato", "onion", "cabbage", "lettuce"}, 0.3, 0.5, 0.0},
  };
  return v;
}

const std::vector<const char*>& descriptors() {
  static const std::vector<const char*> d = {
      "raw",      "cooked",  "boiled",    "baked",   "roasted",  "fried",    "canned",
      "frozen",   "dried",   "whole",     "sliced",  "chopped",  "prepared", "enriched",
      "fortified", "plain",  "salted",    "unsalted", "sweetened", "unsweetened", "lowfat",
      "reduced",  "sodium",  "homemade",  "commercial", "grilled", "steamed", "organic"};
  return d;
}

struct CrossRelation {
  const char* source;
  const char* kind;
  const char* target;
};

const std::vector<CrossRelation>& cross_relations() {
  static const std::vector<CrossRelation> r = {
      {"Fruit", "hasForm", "Juice"},     {"Cereal", "madeFrom", "Grain"},
      {"BakedGood", "madeFrom", "Grain"}, {"Sausage", "madeFrom", "Pork"},
      {"Veal", "isYoungOf", "Lamb"},     {"Dairy", "hasForm", "Egg"},
      {"Soup", "contains", "Vegetable"}, {"FastFood", "contains", "Beef"},
      {"Snack", "contains", "Nut"},      {"Sauce", "contains", "Spice"},
      {"Sweet", "contains", "Fruit"},    {"BabyFood", "contains", "Fruit"}};
  return r;
}

const GroupVocab* find_group(const std::string& name) {
  for (const auto& g : vocabulary()) {
    if (name == g.name) return &g;
  }
  return nullptr;
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::vector<std::string> words_of(const std::string& name) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : name + " ") {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else if (!cur.empty()) {
      if (cur != "and") out.push_back(cur);
      cur.clear();
    }
  }
  if (out.empty()) out.push_back("food");
  return out;
}

}  // namespace

const std::vector<FoodGroup>& food_groups() {
  static const std::vector<FoodGroup> groups = [] {
    std::vector<FoodGroup> out;
    for (const auto& g : vocabulary()) out.push_back({g.name, g.database_items});
    return out;
  }();
  return groups;
}

std::vector<std::pair<std::string, std::size_t>> default_group_counts(std::size_t total) {
  std::vector<double> weights;
  for (const auto& g : food_groups()) weights.push_back(static_cast<double>(g.database_items));
  const auto counts = detail::apportion(weights, total);
  std::vector<std::pair<std::string, std::size_t>> out;
  for (std::size_t i = 0; i < counts.size(); ++i) out.emplace_back(food_groups()[i].name, counts[i]);
  return out;
}

Corpus generate_synthetic(const std::vector<std::pair<std::string, std::size_t>>& groups,
                          std::uint64_t seed) {
  detail::Rng rng(seed);
  std::vector<std::string> all_foods;
  for (const auto& g : vocabulary()) all_foods.insert(all_foods.end(), g.foods.begin(), g.foods.end());
  std::vector<std::string> desc(descriptors().begin(), descriptors().end());

  std::vector<FoodItem> items;
  std::size_t serial = 0;
  for (const auto& [group, count] : groups) {
    const GroupVocab* vocab = find_group(group);
    std::vector<std::string> foods;
    std::vector<std::string> class_words;
    double hot = 0.2;
    double fresh = 0.1;
    double breakfast = 0.0;
    if (vocab) {
      foods.assign(vocab->foods.begin(), vocab->foods.end());
      for (const auto& c : vocab->classes) class_words.insert(class_words.end(), c.words.begin(), c.words.end());
      hot = vocab->hot;
      fresh = vocab->fresh;
      breakfast = vocab->breakfast;
    } else {
      foods = words_of(group);
      class_words = foods;
    }

    for (std::size_t n = 0; n < count; ++n) {
      FoodItem item;
      item.id = fmt::format("f{:04d}", ++serial);
      item.group = group;

      const auto& head = rng.pick(foods);
      const auto& d1 = rng.pick(desc);
      item.name = fmt::format("{}, {}", capitalize(head), d1);

      std::vector<std::string> words{head};
      if (rng.chance(0.6)) words.push_back(rng.pick(foods));
      if (rng.chance(0.5)) words.push_back(rng.pick(class_words));
      const auto n_desc = 1 + rng.below(3);
      for (std::uint64_t k = 0; k < n_desc; ++k) words.push_back(rng.pick(desc));
      if (rng.chance(0.25)) words.push_back(rng.pick(all_foods));
      if (rng.chance(breakfast)) words.push_back("breakfast");

      if (rng.chance(hot)) {
        item.tags.insert("hot");
        if (rng.chance(0.5)) words.push_back("served hot");
      }
      if (rng.chance(fresh)) item.tags.insert("fresh");

      std::string text;
      for (std::size_t w = 0; w < words.size(); ++w) {
        if (w > 0) text += (w == 1 ? " with " : ", ");
        text += words[w];
      }
      item.description = capitalize(text) + ".";
      items.push_back(std::move(item));
    }
  }
  return Corpus(std::move(items));
}

Ontology synthetic_ontology() {
  OntologyData data;
  std::set<std::string> kinds;
  for (const auto& g : vocabulary()) {
    for (const auto& c : g.classes) {
      Concept cls;
      cls.id = c.id;
      cls.label = c.id;
      cls.kind = ConceptKind::class_;
      for (const auto* w : c.words) {
        for (auto& s : preprocess(w)) cls.stems.insert(std::move(s));
      }
      data.concepts.push_back(std::move(cls));
    }
    for (const auto* food : g.foods) {
      Concept inst;
      inst.id = capitalize(food);
      inst.label = food;
      inst.kind = ConceptKind::instance;
      for (auto& s : preprocess(food)) inst.stems.insert(std::move(s));
      data.concepts.push_back(std::move(inst));
      data.relations.push_back({capitalize(food), "instanceOf", g.classes.front().id});
    }
  }
  for (const auto& r : cross_relations()) data.relations.push_back({r.source, r.kind, r.target});
  data.inverses = {{"instanceOf", "hasInstance"},
                   {"hasForm", "isFormedBy"},
                   {"madeFrom", "usedIn"},
                   {"contains", "containedIn"},
                   {"isYoungOf", "hasYoung"}};
  return Ontology(std::move(data));
}

const std::vector<UserInterest>& default_interests() {
  static const std::vector<UserInterest> users = {
      {"u1", {"Fruits and Juices"}},
      {"u2", {"Vegetables", "Legumes"}},
      {"u3", {"Breakfast Cereals", "Dairy and Egg"}},
      {"u4", {"Beef Products", "Pork Products", "Poultry Products"}},
      {"u5", {"Baked Products", "Sweets"}},
  };
  return users;
}

std::vector<RatingSet> synthetic_ratings(const Corpus& corpus, std::size_t users,
                                         std::uint64_t seed, double noise) {
  if (!(noise >= 0.0 && noise <= 1.0)) throw Error(ErrorKind::config, "noise must lie in [0, 1]");
  detail::Rng rng(seed);
  std::vector<UserInterest> interests;
  for (std::size_t u = 0; u < users; ++u) {
    if (u < default_interests().size()) {
      interests.push_back(default_interests()[u]);
    } else {
      interests.push_back({fmt::format("u{}", u + 1), {rng.pick(food_groups()).name}});
    }
  }
  std::vector<RatingSet> out;
  for (const auto& interest : interests) {
    RatingSet r;
    r.user_id = interest.user_id;
    const std::set<std::string> groups(interest.groups.begin(), interest.groups.end());
    for (const auto& item : corpus.items()) {
      bool relevant = groups.contains(item.group);
      if (noise > 0.0 && rng.chance(noise)) relevant = !relevant;
      (relevant ? r.relevant : r.non_relevant).insert(item.id);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace foodrec
