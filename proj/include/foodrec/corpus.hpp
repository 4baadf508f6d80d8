#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace foodrec {

/// Sorted set of concept ids. Serves as a recipe's annotation, a profile's
/// concept set and an ontology neighborhood.
using ConceptSet = std::set<std::string>;

struct FoodItem {
  std::string id;
  std::string group;
  std::string name;
  std::string description;
  std::set<std::string> tags;  // lowercase
  ConceptSet concepts;         // filled by annotation

  /// Text that feeds term extraction and annotation.
  std::string text() const { return name + " " + description; }

  bool operator==(const FoodItem&) const = default;
};

/// Ordered, id-unique collection of food items. Immutable once built.
class Corpus {
 public:
  Corpus() = default;

  /// Throws Error(validation) listing every duplicated or empty id.
  explicit Corpus(std::vector<FoodItem> items);

  const std::vector<FoodItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  bool contains(std::string_view id) const;
  const FoodItem* find(std::string_view id) const;
  /// Throws Error(not_found).
  const FoodItem& at(std::string_view id) const;

  std::set<std::string> ids() const;

  /// Items whose id is in `keep`, in corpus order.
  Corpus subset(const std::set<std::string>& keep) const;

  bool operator==(const Corpus& other) const { return items_ == other.items_; }

 private:
  std::vector<FoodItem> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct RatingSet {
  std::string user_id;
  std::set<std::string> relevant;
  std::set<std::string> non_relevant;

  bool operator==(const RatingSet&) const = default;
};

/// Checks disjointness and that every rated id exists in `corpus`.
/// Throws Error(validation).
void validate_ratings(const RatingSet& ratings, const Corpus& corpus);

struct SplitSpec {
  double train_fraction = 0.6;
  std::uint64_t seed = 42;
  bool stratified = false;  // shuffle and cut within each food group
};

struct TrainTestSplit {
  Corpus train;
  Corpus test;
};

enum class CorpusFormat { csv, json };

/// Picks the format from the file extension (.json -> json, otherwise csv).
CorpusFormat format_from_path(const std::filesystem::path& path);

Corpus parse_corpus_csv(std::string_view text);
Corpus parse_corpus_json(std::string_view text);

/// Empty corpora are rejected with Error(validation).
Corpus load_corpus(const std::filesystem::path& path,
                   std::optional<CorpusFormat> format = std::nullopt);

std::string corpus_to_csv(const Corpus& corpus);
std::string corpus_to_json(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path,
                 std::optional<CorpusFormat> format = std::nullopt);

std::vector<RatingSet> parse_ratings_json(std::string_view text);
std::vector<RatingSet> load_ratings(const std::filesystem::path& path);
std::string ratings_to_json(const std::vector<RatingSet>& ratings);

/// |train| = round-half-up(train_fraction * |corpus|). Both halves keep the
/// corpus order. Throws Error(validation) on an empty corpus or a fraction
/// outside (0, 1).
TrainTestSplit split_train_test(const Corpus& corpus, const SplitSpec& spec);

/// Deterministic synthetic corpus: `count` items per named group with
/// descriptions drawn from group-specific term pools. Groups not in the
/// built-in vocabulary get a pool derived from the group name.
Corpus generate_synthetic(const std::vector<std::pair<std::string, std::size_t>>& groups,
                          std::uint64_t seed);

/// `total` items spread over the built-in food groups in proportion to the
/// USDA database sizes (largest-remainder rounding).
std::vector<std::pair<std::string, std::size_t>> default_group_counts(std::size_t total = 300);

}  // namespace foodrec
