#include "foodrec/profile.hpp"

#include <algorithm>
#include <cmath>

#include "foodrec/error.hpp"
#include "json.hpp"

namespace foodrec {

using nlohmann::json;

namespace {

double log_of(double x, LogBase base) {
  return base == LogBase::natural ? std::log(x) : std::log10(x);
}

}  // namespace

void TermWeightVector::set(const std::string& key, double weight) {
  if (!std::isfinite(weight) || weight < 0.0) {
    throw Error(ErrorKind::validation, "weight for '" + key + "' must be finite and >= 0");
  }
  if (weight == 0.0) {
    weights_.erase(key);
  } else {
    weights_[key] = weight;
  }
}

double TermWeightVector::get(std::string_view key) const {
  const auto it = weights_.find(key);
  return it == weights_.end() ? 0.0 : it->second;
}

double TermWeightVector::norm() const {
  double sum = 0.0;
  for (const auto& [k, w] : weights_) sum += w * w;
  return std::sqrt(sum);
}

double TermWeightVector::dot(const TermWeightVector& other) const {
  const auto& small = size() <= other.size() ? *this : other;
  const auto& large = size() <= other.size() ? other : *this;
  double sum = 0.0;
  for (const auto& [k, w] : small.weights_) sum += w * large.get(k);
  return sum;
}

TermWeightVector TermWeightVector::scaled(double factor) const {
  TermWeightVector out;
  for (const auto& [k, w] : weights_) out.set(k, w * factor);
  return out;
}

double tf(std::string_view term, const TermList& item_terms) {
  if (item_terms.empty()) throw Error(ErrorKind::validation, "term frequency of an empty item");
  const auto n = std::count(item_terms.begin(), item_terms.end(), term);
  return static_cast<double>(n) / static_cast<double>(item_terms.size());
}

double idf(std::string_view term, std::span<const TermList> documents, LogBase base) {
  std::size_t df = 0;
  for (const auto& doc : documents) {
    if (std::find(doc.begin(), doc.end(), term) != doc.end()) ++df;
  }
  if (df == 0) return 0.0;
  return log_of(static_cast<double>(documents.size()) / static_cast<double>(df), base);
}

double tfidf(std::string_view term, const TermList& item_terms,
             std::span<const TermList> documents, LogBase base) {
  return tf(term, item_terms) * idf(term, documents, base);
}

TermIndex::TermIndex(const Corpus& corpus, StopList stops, LogBase base)
    : TermIndex(corpus, corpus, std::move(stops), base) {}

TermIndex::TermIndex(const Corpus& corpus, const Corpus& df_scope, StopList stops, LogBase base)
    : stops_(std::move(stops)), base_(base), document_count_(df_scope.size()) {
  for (const auto& item : corpus.items()) terms_.emplace(item.id, preprocess(item.text(), stops_));
  for (const auto& item : df_scope.items()) {
    const auto it = terms_.find(item.id);
    const TermList terms = it != terms_.end() ? it->second : preprocess(item.text(), stops_);
    const std::set<std::string> distinct(terms.begin(), terms.end());
    for (const auto& t : distinct) ++df_[t];
  }
  build_vectors();
}

void TermIndex::build_vectors() {
  for (const auto& [id, terms] : terms_) vectors_.emplace(id, vectorize(terms));
}

const TermList& TermIndex::terms(std::string_view item_id) const {
  const auto it = terms_.find(std::string(item_id));
  if (it == terms_.end()) throw Error(ErrorKind::not_found, "item not indexed: " + std::string(item_id));
  return it->second;
}

const TermWeightVector& TermIndex::item_vector(std::string_view item_id) const {
  const auto it = vectors_.find(std::string(item_id));
  if (it == vectors_.end()) throw Error(ErrorKind::not_found, "item not indexed: " + std::string(item_id));
  return it->second;
}

std::size_t TermIndex::document_frequency(std::string_view term) const {
  const auto it = df_.find(std::string(term));
  return it == df_.end() ? 0 : it->second;
}

double TermIndex::idf(std::string_view term) const {
  const auto df = document_frequency(term);
  if (df == 0 || document_count_ == 0) return 0.0;
  return log_of(static_cast<double>(document_count_) / static_cast<double>(df), base_);
}

TermWeightVector TermIndex::vectorize(const TermList& terms) const {
  TermWeightVector out;
  if (terms.empty()) return out;
  std::map<std::string, std::size_t> counts;
  for (const auto& t : terms) ++counts[t];
  const auto total = static_cast<double>(terms.size());
  for (const auto& [t, n] : counts) out.set(t, static_cast<double>(n) / total * idf(t));
  return out;
}

UserProfile build_profile(const RatingSet& user, const Corpus& train, const Ontology* onto,
                          const TermIndex& index) {
  UserProfile profile;
  profile.user_id = user.user_id;
  std::map<std::string, double> sums;
  for (const auto& item : train.items()) {
    if (!user.relevant.contains(item.id)) continue;
    profile.source_items.push_back(item.id);
    for (const auto& [t, w] : index.item_vector(item.id).weights()) sums[t] += w;
    const auto concepts = onto ? onto->annotate(index.terms(item.id)) : item.concepts;
    profile.concepts.insert(concepts.begin(), concepts.end());
  }
  if (profile.source_items.empty()) {
    throw Error(ErrorKind::cold_start,
                "user '" + user.user_id + "' has no relevant items in the training set");
  }
  const auto n = static_cast<double>(profile.source_items.size());
  for (const auto& [t, sum] : sums) profile.term_weights.set(t, sum / n);
  return profile;
}

UserProfile profile_from_query(std::string_view query, const Ontology* onto,
                               const TermIndex& index, std::string user_id) {
  UserProfile profile;
  profile.user_id = std::move(user_id);
  const auto terms = preprocess(query, index.stops());
  profile.term_weights = index.vectorize(terms);
  if (onto) profile.concepts = onto->annotate(terms);
  return profile;
}

std::string profile_to_json(const UserProfile& profile) {
  json weights = json::object();
  for (const auto& [t, w] : profile.term_weights.weights()) weights[t] = w;
  json doc = {{"user_id", profile.user_id},
              {"term_weights", weights},
              {"concepts", profile.concepts}};
  if (!profile.source_items.empty()) doc["source_items"] = profile.source_items;
  return doc.dump(2) + "\n";
}

UserProfile parse_profile_json(std::string_view text) {
  try {
    const auto doc = json::parse(text);
    UserProfile p;
    p.user_id = doc.at("user_id").get<std::string>();
    for (const auto& [t, w] : doc.at("term_weights").items()) p.term_weights.set(t, w.get<double>());
    p.concepts = doc.value("concepts", ConceptSet{});
    p.source_items = doc.value("source_items", std::vector<std::string>{});
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, std::string("profile JSON: ") + e.what());
  }
}

}  // namespace foodrec
