#include "foodrec/ontology.hpp"

#include <fstream>
#include <sstream>

#include "foodrec/error.hpp"
#include "json.hpp"

namespace foodrec {

using nlohmann::json;

namespace {

bool valid_stem(const std::string& s, const StopList& stops) {
  if (s.empty()) return false;
  for (const char ch : s) {
    if (!((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9'))) return false;
  }
  return !stops.contains(s);
}

}  // namespace

const char* to_string(ConceptKind kind) {
  return kind == ConceptKind::instance ? "instance" : "class";
}

std::vector<Violation> validate(const OntologyData& data) {
  std::vector<Violation> out;
  const auto& stops = StopList::english();

  std::set<std::string> ids;
  for (const auto& c : data.concepts) {
    if (c.id.empty()) {
      out.push_back({Violation::Kind::duplicate_concept, "concept with empty id"});
    } else if (!ids.insert(c.id).second) {
      out.push_back({Violation::Kind::duplicate_concept, "duplicate concept id: " + c.id});
    }
    for (const auto& s : c.stems) {
      if (!valid_stem(s, stops)) {
        out.push_back({Violation::Kind::bad_stem,
                       "concept " + c.id + ": stem '" + s + "' is not a normalized term"});
      }
    }
  }

  for (const auto& r : data.relations) {
    for (const auto* end : {&r.source, &r.target}) {
      if (!ids.contains(*end)) {
        out.push_back({Violation::Kind::referential,
                       "relation " + r.source + " " + r.kind + " " + r.target +
                           " names unknown concept '" + *end + "'"});
      }
    }
  }

  std::map<std::string, std::string> closed;
  for (const auto& [kind, inv] : data.inverses) {
    bool ok = true;
    for (const auto& [a, b] : {std::pair{kind, inv}, std::pair{inv, kind}}) {
      const auto it = closed.find(a);
      if (it != closed.end() && it->second != b) {
        out.push_back({Violation::Kind::involution,
                       "inverse of '" + a + "' declared as both '" + it->second + "' and '" + b +
                           "'"});
        ok = false;
        break;
      }
    }
    if (ok) {
      closed[kind] = inv;
      closed[inv] = kind;
    }
  }
  std::set<std::string> reported;
  for (const auto& r : data.relations) {
    if (!closed.contains(r.kind) && reported.insert(r.kind).second) {
      out.push_back({Violation::Kind::missing_inverse,
                     "relation kind '" + r.kind + "' has no declared inverse"});
    }
  }
  return out;
}

Ontology::Ontology(OntologyData data) : data_(std::move(data)) {
  const auto violations = validate(data_);
  if (!violations.empty()) {
    std::string msg = "invalid ontology:";
    for (const auto& v : violations) msg += " [" + v.message + "]";
    throw Error(ErrorKind::validation, msg);
  }
  for (std::size_t i = 0; i < data_.concepts.size(); ++i) {
    const auto& c = data_.concepts[i];
    by_id_.emplace(c.id, i);
    adjacency_[c.id];
    for (const auto& s : c.stems) stem_index_[s].insert(c.id);
  }
  for (const auto& [kind, inv] : data_.inverses) {
    inverse_[kind] = inv;
    inverse_[inv] = kind;
  }
  for (const auto& r : data_.relations) {
    adjacency_[r.source].insert(r.target);
    adjacency_[r.target].insert(r.source);
  }
}

const Concept& Ontology::concept_at(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) throw Error(ErrorKind::not_found, "unknown concept: " + std::string(id));
  return data_.concepts[it->second];
}

const std::string& Ontology::inverse_of(const std::string& kind) const {
  const auto it = inverse_.find(kind);
  if (it == inverse_.end()) throw Error(ErrorKind::not_found, "no inverse for relation " + kind);
  return it->second;
}

std::vector<Relation> Ontology::all_edges() const {
  std::set<Relation> edges;
  for (const auto& r : data_.relations) {
    edges.insert(r);
    edges.insert({r.target, inverse_of(r.kind), r.source});
  }
  return {edges.begin(), edges.end()};
}

ConceptSet Ontology::neighborhood(std::string_view id) const {
  const auto it = adjacency_.find(std::string(id));
  if (it == adjacency_.end()) throw Error(ErrorKind::not_found, "unknown concept: " + std::string(id));
  ConceptSet out = it->second;
  out.insert(it->first);
  return out;
}

ConceptSet Ontology::annotate(const TermList& terms) const {
  ConceptSet out;
  for (const auto& t : terms) {
    const auto it = stem_index_.find(t);
    if (it != stem_index_.end()) out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

ConceptSet Ontology::annotate(const FoodItem& item, const StopList& stops) const {
  return annotate(preprocess(item.text(), stops));
}

Corpus Ontology::annotate_corpus(const Corpus& corpus, const StopList& stops) const {
  std::vector<FoodItem> items = corpus.items();
  for (auto& item : items) item.concepts = annotate(item, stops);
  return Corpus(std::move(items));
}

namespace {

OntologyData parse_ontology_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::format, std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::format, "ontology JSON must be an object");

  const auto str = [](const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw Error(ErrorKind::format, where + ": missing string field '" + key + "'");
    }
    return j[key].get<std::string>();
  };

  OntologyData data;
  for (const auto& jc : doc.value("concepts", json::array())) {
    Concept c;
    c.id = str(jc, "id", "concept");
    c.label = jc.value("label", c.id);
    const auto kind = jc.value("kind", std::string("class"));
    if (kind == "instance") {
      c.kind = ConceptKind::instance;
    } else if (kind != "class") {
      throw Error(ErrorKind::format, "concept " + c.id + ": kind must be 'class' or 'instance'");
    }
    if (jc.contains("stems")) {
      for (const auto& s : jc["stems"]) c.stems.insert(s.get<std::string>());
    }
    if (jc.contains("terms")) {
      for (const auto& t : jc["terms"]) {
        for (auto& s : preprocess(t.get<std::string>())) c.stems.insert(std::move(s));
      }
    }
    if (!jc.contains("stems") && !jc.contains("terms")) {
      for (auto& s : preprocess(c.label)) c.stems.insert(std::move(s));
    }
    data.concepts.push_back(std::move(c));
  }
  for (const auto& jr : doc.value("relations", json::array())) {
    data.relations.push_back(
        {str(jr, "source", "relation"), str(jr, "kind", "relation"), str(jr, "target", "relation")});
  }
  if (doc.contains("inverses")) {
    if (!doc["inverses"].is_object()) throw Error(ErrorKind::format, "'inverses' must be an object");
    for (const auto& [k, v] : doc["inverses"].items()) {
      if (!v.is_string()) throw Error(ErrorKind::format, "inverse of '" + k + "' must be a string");
      data.inverses[k] = v.get<std::string>();
    }
  }
  return data;
}

}  // namespace

OntologyData parse_ontology_json(std::string_view text) {
  try {
    return parse_ontology_document(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, std::string("ontology JSON: ") + e.what());
  }
}

Ontology load_ontology(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Ontology(parse_ontology_json(buf.str()));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string ontology_to_json(const Ontology& onto) {
  json doc;
  doc["concepts"] = json::array();
  for (const auto& c : onto.concepts()) {
    doc["concepts"].push_back(
        {{"id", c.id}, {"label", c.label}, {"kind", to_string(c.kind)}, {"stems", c.stems}});
  }
  doc["relations"] = json::array();
  for (const auto& r : onto.relations()) {
    doc["relations"].push_back({{"source", r.source}, {"kind", r.kind}, {"target", r.target}});
  }
  doc["inverses"] = onto.declared_inverses();
  return doc.dump(2) + "\n";
}

}  // namespace foodrec
