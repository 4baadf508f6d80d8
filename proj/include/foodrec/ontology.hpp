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

enum class ConceptKind { class_, instance };

struct Concept {
  std::string id;
  std::string label;
  ConceptKind kind = ConceptKind::class_;
  std::set<std::string> stems;  // stemmed surface forms matched during annotation

  bool operator==(const Concept&) const = default;
};

struct Relation {
  std::string source;
  std::string kind;  // e.g. "hasForm", "instanceOf"
  std::string target;

  auto operator<=>(const Relation&) const = default;
};

/// Unvalidated ontology contents as read from a file.
struct OntologyData {
  std::vector<Concept> concepts;
  std::vector<Relation> relations;
  std::map<std::string, std::string> inverses;  // as declared
};

struct Violation {
  enum class Kind { duplicate_concept, bad_stem, referential, missing_inverse, involution };
  Kind kind;
  std::string message;
};

/// Empty iff the data can form an Ontology.
std::vector<Violation> validate(const OntologyData& data);

/// Validated concept graph. Every relation kind has an inverse, so adjacency
/// is symmetric and neighborhoods are direction-agnostic.
class Ontology {
 public:
  Ontology() = default;

  /// Throws Error(validation) carrying every violation.
  explicit Ontology(OntologyData data);

  const std::vector<Concept>& concepts() const { return data_.concepts; }
  const std::vector<Relation>& relations() const { return data_.relations; }
  /// Closed under inversion: inverse_of(inverse_of(k)) == k.
  const std::map<std::string, std::string>& inverse_map() const { return inverse_; }
  const std::map<std::string, std::string>& declared_inverses() const { return data_.inverses; }

  bool empty() const { return data_.concepts.empty(); }
  bool contains(std::string_view id) const { return by_id_.contains(std::string(id)); }
  /// Throws Error(not_found).
  const Concept& concept_at(std::string_view id) const;
  const std::string& inverse_of(const std::string& kind) const;

  /// Stored relations plus the derived inverse edge of each.
  std::vector<Relation> all_edges() const;

  /// {id} plus every concept one edge away in either direction.
  /// Throws Error(not_found) for an unknown id.
  ConceptSet neighborhood(std::string_view id) const;

  /// Concepts with a stem equal to one of `terms`.
  ConceptSet annotate(const TermList& terms) const;
  ConceptSet annotate(const FoodItem& item, const StopList& stops = StopList::english()) const;

  /// Copy of `corpus` with each item's concepts replaced by its annotation.
  Corpus annotate_corpus(const Corpus& corpus, const StopList& stops = StopList::english()) const;

 private:
  OntologyData data_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::string, std::string> inverse_;
  std::map<std::string, std::set<std::string>> adjacency_;
  std::map<std::string, std::set<std::string>> stem_index_;
};

OntologyData parse_ontology_json(std::string_view text);
Ontology load_ontology(const std::filesystem::path& path);
std::string ontology_to_json(const Ontology& onto);

const char* to_string(ConceptKind kind);

}  // namespace foodrec
