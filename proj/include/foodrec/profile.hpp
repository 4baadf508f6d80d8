#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "foodrec/corpus.hpp"
#include "foodrec/ontology.hpp"
#include "foodrec/textpipe.hpp"

namespace foodrec {

enum class LogBase { natural, base10 };

/// Sparse nonnegative weights keyed by term (or concept id). Zero weights
/// are never stored.
class TermWeightVector {
 public:
  TermWeightVector() = default;

  /// Throws Error(validation) for negative or non-finite weights.
  void set(const std::string& key, double weight);
  double get(std::string_view key) const;

  const std::map<std::string, double, std::less<>>& weights() const { return weights_; }
  bool empty() const { return weights_.empty(); }
  std::size_t size() const { return weights_.size(); }

  double norm() const;
  double dot(const TermWeightVector& other) const;
  TermWeightVector scaled(double factor) const;

  bool operator==(const TermWeightVector&) const = default;

 private:
  std::map<std::string, double, std::less<>> weights_;
};

/// n(term) / |item_terms|. Throws Error(validation) on an empty list.
double tf(std::string_view term, const TermList& item_terms);

/// log(|documents| / df(term)), 0 when no document contains the term.
double idf(std::string_view term, std::span<const TermList> documents,
           LogBase base = LogBase::natural);

double tfidf(std::string_view term, const TermList& item_terms,
             std::span<const TermList> documents, LogBase base = LogBase::natural);

/// Preprocessed text of every item plus the document-frequency table.
/// Built once per corpus and read-only afterwards.
class TermIndex {
 public:
  explicit TermIndex(const Corpus& corpus, StopList stops = StopList::english(),
                     LogBase base = LogBase::natural);

  /// Term lists for every item of `corpus`, document frequencies counted
  /// over `df_scope` only.
  TermIndex(const Corpus& corpus, const Corpus& df_scope, StopList stops = StopList::english(),
            LogBase base = LogBase::natural);

  /// Throws Error(not_found).
  const TermList& terms(std::string_view item_id) const;
  const TermWeightVector& item_vector(std::string_view item_id) const;

  std::size_t document_count() const { return document_count_; }
  std::size_t document_frequency(std::string_view term) const;
  double idf(std::string_view term) const;
  LogBase log_base() const { return base_; }
  const StopList& stops() const { return stops_; }

  /// TF-IDF weights of an arbitrary term list against this index.
  TermWeightVector vectorize(const TermList& terms) const;

 private:
  void build_vectors();

  StopList stops_;
  LogBase base_;
  std::size_t document_count_ = 0;
  std::unordered_map<std::string, TermList> terms_;
  std::unordered_map<std::string, std::size_t> df_;
  std::unordered_map<std::string, TermWeightVector> vectors_;
};

struct UserProfile {
  std::string user_id;
  TermWeightVector term_weights;
  ConceptSet concepts;
  /// Training items the profile was built from.
  std::vector<std::string> source_items;

  bool operator==(const UserProfile&) const = default;
};

/// Mean TF-IDF vector and concept union of the user's relevant items in
/// `train`. Concepts come from annotating with `onto`, or from the items'
/// stored annotations when `onto` is null. Throws Error(cold_start) when no
/// relevant item is in `train`.
UserProfile build_profile(const RatingSet& user, const Corpus& train, const Ontology* onto,
                          const TermIndex& index);

/// Profile of a free-text query: its TF-IDF vector and annotation.
UserProfile profile_from_query(std::string_view query, const Ontology* onto,
                               const TermIndex& index, std::string user_id = "query");

std::string profile_to_json(const UserProfile& profile);
UserProfile parse_profile_json(std::string_view text);

}  // namespace foodrec
