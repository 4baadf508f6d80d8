#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "foodrec/corpus.hpp"
#include "foodrec/heuristics.hpp"
#include "foodrec/ontology.hpp"
#include "foodrec/profile.hpp"
#include "foodrec/recommender.hpp"
#include "foodrec/similarity.hpp"

namespace foodrec {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// Throws Error(protocol) unless recommended and relevant are subsets of
/// test_items.
ConfusionMatrix confusion(const std::set<std::string>& recommended,
                          const std::set<std::string>& relevant,
                          const std::set<std::string>& test_items);

/// A metric whose denominator is zero is left empty rather than set to 0.
struct Metrics {
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> specificity;
  std::optional<double> f_measure;
};

/// Harmonic mean 2PR/(P+R); empty when P+R == 0.
std::optional<double> f_measure(double precision, double recall);

/// Throws Error(protocol) for an all-zero matrix.
Metrics metrics(const ConfusionMatrix& cm);

inline constexpr std::string_view kAverageUser = "__average__";

struct MetricsReport {
  std::string user;  // kAverageUser on macro-average rows
  MeasureKind measure = MeasureKind::proposed;
  double cutoff = 0.5;
  ConfusionMatrix cm;  // summed over users on average rows
  Metrics metrics;
  bool average = false;
  std::vector<std::string> recommended;  // sorted; empty on average rows

  bool is_average() const { return average; }
};

enum class IdfScope { full, train };

struct EvalOptions {
  SplitSpec split;
  std::vector<MeasureKind> measures{kAllMeasures.begin(), kAllMeasures.end()};
  double default_cutoff = 0.5;
  std::map<MeasureKind, double> cutoffs;  // overrides default_cutoff per measure
  RecommenderConfig scoring;              // alpha, lambda, variant, boost cap
  bool heuristics = true;
  IdfScope idf_scope = IdfScope::full;
  LogBase log_base = LogBase::natural;
  StopList stops = StopList::english();

  double cutoff_for(MeasureKind m) const {
    const auto it = cutoffs.find(m);
    return it == cutoffs.end() ? default_cutoff : it->second;
  }
};

struct SkippedUser {
  std::string user_id;
  std::string reason;
};

struct EvaluationResult {
  std::vector<MetricsReport> rows;      // user-major, measure order as requested
  std::vector<MetricsReport> averages;  // one per (measure, cutoff)
  std::vector<SkippedUser> skipped;
  std::set<std::string> train_ids;
  std::set<std::string> test_ids;
  std::map<std::string, std::vector<std::string>> profile_sources;  // user -> items

  /// rows followed by averages.
  std::vector<MetricsReport> all_rows() const;
};

/// Split once with options.split, build every user's profile from the
/// training half, score the test half with each measure, and threshold at
/// the measure's cutoff. Users without a relevant training item are skipped.
/// Throws Error(protocol) when no user can be evaluated.
EvaluationResult evaluate_all(const Corpus& corpus, const std::vector<RatingSet>& users,
                              const Ontology* onto, const std::vector<HeuristicRule>& rules,
                              const EvalOptions& options);

/// evaluate_all at every cutoff of `grid` (ascending). Asserts that each
/// user's recommendation set only shrinks as the cutoff rises.
EvaluationResult sweep_cutoff(const Corpus& corpus, const std::vector<RatingSet>& users,
                              const Ontology* onto, const std::vector<HeuristicRule>& rules,
                              const EvalOptions& options, std::vector<double> grid);

enum class ReportFormat { csv, json };

std::string report_to_csv(const std::vector<MetricsReport>& reports);
std::string report_to_json(const std::vector<MetricsReport>& reports);
/// Throws Error(validation) on an empty list and Error(io) when the path
/// cannot be written.
void emit_report(const std::vector<MetricsReport>& reports, const std::filesystem::path& path,
                 ReportFormat format = ReportFormat::csv);

/// Inverse of report_to_csv for the columns it writes.
std::vector<MetricsReport> parse_report_csv(std::string_view text);

}  // namespace foodrec
