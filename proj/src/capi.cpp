#include "foodrec/foodrec.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>

#include <fmt/core.h>

#include "foodrec/corpus.hpp"
#include "foodrec/error.hpp"
#include "foodrec/eval.hpp"
#include "foodrec/heuristics.hpp"
#include "foodrec/ontology.hpp"
#include "foodrec/profile.hpp"
#include "foodrec/recommender.hpp"
#include "foodrec/synthetic.hpp"
#include "foodrec/textpipe.hpp"
#include "json.hpp"

using namespace foodrec;

struct foodrec_corpus {
  Corpus corpus;
};

struct foodrec_ontology {
  Ontology onto;
};

struct foodrec_rules {
  std::vector<HeuristicRule> rules;
};

struct foodrec_ratings {
  std::vector<RatingSet> ratings;
};

struct foodrec_config {
  EvalOptions eval;
  std::optional<std::size_t> top_k;
  std::string stopwords_path;
  bool measure_set = false;  // recommend falls back to proposed until set
};

struct foodrec_recommendations {
  std::vector<Recommendation> recs;
};

struct foodrec_report {
  EvaluationResult result;
  std::vector<MetricsReport> rows;
  std::vector<std::string> measure_names;
};

namespace {

thread_local std::string last_error;

foodrec_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::format: return FOODREC_ERR_FORMAT;
    case ErrorKind::validation: return FOODREC_ERR_VALIDATION;
    case ErrorKind::io: return FOODREC_ERR_IO;
    case ErrorKind::not_found: return FOODREC_ERR_NOT_FOUND;
    case ErrorKind::config: return FOODREC_ERR_CONFIG;
    case ErrorKind::cold_start: return FOODREC_ERR_COLD_START;
    case ErrorKind::protocol: return FOODREC_ERR_PROTOCOL;
  }
  return FOODREC_ERR_INTERNAL;
}

foodrec_status fail(foodrec_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
foodrec_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return FOODREC_OK;
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(FOODREC_ERR_FORMAT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FOODREC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FOODREC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FOODREC_ERR_INTERNAL, "unknown error");
  }
}

#define FOODREC_REQUIRE(cond, what)                                      \
  do {                                                                   \
    if (!(cond)) return fail(FOODREC_ERR_INVALID_ARGUMENT, (what));      \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::config, key + ": not a number: '" + value + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const auto v = std::strtoull(value.c_str(), &end, 10);
  if (value.empty() || value[0] == '-' || end != value.c_str() + value.size()) {
    throw Error(ErrorKind::config, key + ": not an unsigned integer: '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw Error(ErrorKind::config, key + ": expected true or false, got '" + value + "'");
}

double in_unit(const std::string& key, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::config, key + " must lie in [0, 1]");
  return v;
}

std::vector<MeasureKind> parse_measures(const std::string& value) {
  if (value == "all") return {kAllMeasures.begin(), kAllMeasures.end()};
  std::vector<MeasureKind> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto name = value.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto m = parse_measure(name);
    if (!m) throw Error(ErrorKind::config, "unknown measure '" + name + "'");
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void set_option(foodrec_config& cfg, const std::string& key, const std::string& value) {
  auto& e = cfg.eval;
  if (key == "measure") {
    e.measures = parse_measures(value);
    cfg.measure_set = true;
  } else if (key == "cutoff") {
    e.default_cutoff = in_unit(key, parse_double(key, value));
  } else if (key.rfind("cutoff.", 0) == 0) {
    const auto m = parse_measure(key.substr(7));
    if (!m) throw Error(ErrorKind::config, "unknown measure in key '" + key + "'");
    e.cutoffs[*m] = in_unit(key, parse_double(key, value));
  } else if (key == "top_k") {
    const auto k = parse_uint(key, value);
    cfg.top_k = k == 0 ? std::nullopt : std::optional<std::size_t>(k);
  } else if (key == "alpha") {
    e.scoring.proposed.alpha = in_unit(key, parse_double(key, value));
  } else if (key == "lambda") {
    e.scoring.proposed.lambda = in_unit(key, parse_double(key, value));
  } else if (key == "boost_cap") {
    const double cap = parse_double(key, value);
    if (cap < 1.0) throw Error(ErrorKind::config, "boost_cap must be >= 1");
    e.scoring.proposed.boost_cap = cap;
  } else if (key == "bcosine_variant") {
    if (value == "product") {
      e.scoring.bcosine_variant = BinaryCosineVariant::product;
    } else if (value == "standard") {
      e.scoring.bcosine_variant = BinaryCosineVariant::standard;
    } else {
      throw Error(ErrorKind::config, "bcosine_variant must be product or standard");
    }
  } else if (key == "heuristics") {
    e.heuristics = parse_bool(key, value);
  } else if (key == "split") {
    const double f = parse_double(key, value);
    if (!(f > 0.0 && f < 1.0)) throw Error(ErrorKind::config, "split must lie in (0, 1)");
    e.split.train_fraction = f;
  } else if (key == "seed") {
    e.split.seed = parse_uint(key, value);
  } else if (key == "stratified") {
    e.split.stratified = parse_bool(key, value);
  } else if (key == "idf_scope") {
    if (value == "full") {
      e.idf_scope = IdfScope::full;
    } else if (value == "train") {
      e.idf_scope = IdfScope::train;
    } else {
      throw Error(ErrorKind::config, "idf_scope must be full or train");
    }
  } else if (key == "idf_log") {
    if (value == "e") {
      e.log_base = LogBase::natural;
    } else if (value == "10") {
      e.log_base = LogBase::base10;
    } else {
      throw Error(ErrorKind::config, "idf_log must be e or 10");
    }
  } else if (key == "stopwords") {
    e.stops = value.empty() ? StopList::english() : StopList::load(value);
    cfg.stopwords_path = value;
  } else {
    throw Error(ErrorKind::config, "unknown configuration key '" + key + "'");
  }
}

std::string get_option(const foodrec_config& cfg, const std::string& key) {
  const auto& e = cfg.eval;
  const auto num = [](double v) { return fmt::format("{}", v); };
  if (key == "measure") {
    std::string out;
    for (const auto m : e.measures) {
      if (!out.empty()) out += ',';
      out += to_string(m);
    }
    return out;
  }
  if (key == "cutoff") return num(e.default_cutoff);
  if (key.rfind("cutoff.", 0) == 0) {
    const auto m = parse_measure(key.substr(7));
    if (!m) throw Error(ErrorKind::config, "unknown measure in key '" + key + "'");
    return num(e.cutoff_for(*m));
  }
  if (key == "top_k") return cfg.top_k ? std::to_string(*cfg.top_k) : "0";
  if (key == "alpha") return num(e.scoring.proposed.alpha);
  if (key == "lambda") return num(e.scoring.proposed.lambda);
  if (key == "boost_cap") return num(e.scoring.proposed.boost_cap);
  if (key == "bcosine_variant") {
    return e.scoring.bcosine_variant == BinaryCosineVariant::product ? "product" : "standard";
  }
  if (key == "heuristics") return e.heuristics ? "true" : "false";
  if (key == "split") return num(e.split.train_fraction);
  if (key == "seed") return std::to_string(e.split.seed);
  if (key == "stratified") return e.split.stratified ? "true" : "false";
  if (key == "idf_scope") return e.idf_scope == IdfScope::full ? "full" : "train";
  if (key == "idf_log") return e.log_base == LogBase::natural ? "e" : "10";
  if (key == "stopwords") return cfg.stopwords_path;
  throw Error(ErrorKind::config, "unknown configuration key '" + key + "'");
}

const foodrec_config& defaults() {
  static const foodrec_config cfg;
  return cfg;
}

std::optional<CorpusFormat> corpus_format(const char* format) {
  if (format == nullptr || *format == '\0') return std::nullopt;
  const std::string f = format;
  if (f == "csv") return CorpusFormat::csv;
  if (f == "json") return CorpusFormat::json;
  throw Error(ErrorKind::config, "unknown corpus format '" + f + "'");
}

ReportFormat report_format(const char* format) {
  const std::string f = format ? format : "csv";
  if (f == "csv") return ReportFormat::csv;
  if (f == "json") return ReportFormat::json;
  throw Error(ErrorKind::config, "unknown report format '" + f + "'");
}

std::vector<std::pair<std::string, std::size_t>> parse_groups(const std::string& spec) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 0;
  while (start < spec.size()) {
    auto end = spec.find(';', start);
    if (end == std::string::npos) end = spec.size();
    const auto piece = spec.substr(start, end - start);
    const auto colon = piece.rfind(':');
    if (colon == std::string::npos || colon == 0) {
      throw Error(ErrorKind::config, "group spec '" + piece + "' is not Name:count");
    }
    out.emplace_back(piece.substr(0, colon), parse_uint("groups", piece.substr(colon + 1)));
    start = end + 1;
  }
  return out;
}

void store_report(foodrec_report& report, EvaluationResult result) {
  report.result = std::move(result);
  report.rows = report.result.all_rows();
  for (const auto& r : report.rows) report.measure_names.emplace_back(to_string(r.measure));
}

}  // namespace

extern "C" {

const char* foodrec_version(void) { return "1.0.0"; }

const char* foodrec_status_string(foodrec_status status) {
  switch (status) {
    case FOODREC_OK: return "ok";
    case FOODREC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FOODREC_ERR_FORMAT: return "format error";
    case FOODREC_ERR_VALIDATION: return "validation error";
    case FOODREC_ERR_IO: return "I/O error";
    case FOODREC_ERR_NOT_FOUND: return "not found";
    case FOODREC_ERR_CONFIG: return "configuration error";
    case FOODREC_ERR_COLD_START: return "cold start";
    case FOODREC_ERR_PROTOCOL: return "protocol error";
    case FOODREC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* foodrec_last_error(void) { return last_error.c_str(); }

void foodrec_string_free(char* s) { std::free(s); }

// ---- corpus

foodrec_status foodrec_corpus_load(const char* path, const char* format, foodrec_corpus** out) {
  FOODREC_REQUIRE(path && out, "path and out must not be null");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<foodrec_corpus>();
    c->corpus = load_corpus(path, corpus_format(format));
    *out = c.release();
  });
}

foodrec_status foodrec_corpus_generate(const char* groups, size_t total, uint64_t seed,
                                       foodrec_corpus** out) {
  FOODREC_REQUIRE(out, "out must not be null");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<foodrec_corpus>();
    const auto counts = groups ? parse_groups(groups) : default_group_counts(total);
    c->corpus = generate_synthetic(counts, seed);
    *out = c.release();
  });
}

foodrec_status foodrec_corpus_save(const foodrec_corpus* corpus, const char* path,
                                   const char* format) {
  FOODREC_REQUIRE(corpus && path, "corpus and path must not be null");
  return guarded([&] { save_corpus(corpus->corpus, path, corpus_format(format)); });
}

foodrec_status foodrec_corpus_annotate(foodrec_corpus* corpus, const foodrec_ontology* onto,
                                       const foodrec_config* cfg) {
  FOODREC_REQUIRE(corpus && onto, "corpus and ontology must not be null");
  const auto& c = cfg ? *cfg : defaults();
  return guarded([&] { corpus->corpus = onto->onto.annotate_corpus(corpus->corpus, c.eval.stops); });
}

size_t foodrec_corpus_size(const foodrec_corpus* corpus) {
  return corpus ? corpus->corpus.size() : 0;
}

const char* foodrec_corpus_item_id(const foodrec_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->corpus.size()) return nullptr;
  return corpus->corpus.items()[index].id.c_str();
}

size_t foodrec_corpus_item_concept_count(const foodrec_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->corpus.size()) return 0;
  return corpus->corpus.items()[index].concepts.size();
}

void foodrec_corpus_free(foodrec_corpus* corpus) { delete corpus; }

// ---- ontology

foodrec_status foodrec_ontology_load(const char* path, foodrec_ontology** out) {
  FOODREC_REQUIRE(path && out, "path and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new foodrec_ontology{load_ontology(path)}; });
}

foodrec_status foodrec_ontology_synthetic(foodrec_ontology** out) {
  FOODREC_REQUIRE(out, "out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new foodrec_ontology{synthetic_ontology()}; });
}

foodrec_status foodrec_ontology_save(const foodrec_ontology* onto, const char* path) {
  FOODREC_REQUIRE(onto && path, "ontology and path must not be null");
  return guarded([&] {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::io, std::string("cannot write ") + path);
    f << ontology_to_json(onto->onto);
  });
}

foodrec_status foodrec_ontology_validate_file(const char* path, char** report,
                                              size_t* violation_count) {
  FOODREC_REQUIRE(path && report, "path and report must not be null");
  *report = nullptr;
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, std::string("cannot open ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto violations = validate(parse_ontology_json(buf.str()));
    std::string text;
    for (const auto& v : violations) text += v.message + "\n";
    *report = dup_string(text);
    if (violation_count) *violation_count = violations.size();
  });
}

size_t foodrec_ontology_concept_count(const foodrec_ontology* onto) {
  return onto ? onto->onto.concepts().size() : 0;
}

foodrec_status foodrec_ontology_neighborhood(const foodrec_ontology* onto, const char* concept_id,
                                             char** out) {
  FOODREC_REQUIRE(onto && concept_id && out, "arguments must not be null");
  *out = nullptr;
  return guarded([&] {
    std::string text;
    for (const auto& c : onto->onto.neighborhood(concept_id)) {
      if (!text.empty()) text += ',';
      text += c;
    }
    *out = dup_string(text);
  });
}

void foodrec_ontology_free(foodrec_ontology* onto) { delete onto; }

// ---- rules

foodrec_status foodrec_rules_load(const char* path, foodrec_rules** out) {
  FOODREC_REQUIRE(path && out, "path and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new foodrec_rules{load_rules(path)}; });
}

foodrec_status foodrec_rules_default(foodrec_rules** out) {
  FOODREC_REQUIRE(out, "out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new foodrec_rules{default_rules()}; });
}

size_t foodrec_rules_count(const foodrec_rules* rules) { return rules ? rules->rules.size() : 0; }

void foodrec_rules_free(foodrec_rules* rules) { delete rules; }

// ---- ratings

foodrec_status foodrec_ratings_load(const char* path, foodrec_ratings** out) {
  FOODREC_REQUIRE(path && out, "path and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new foodrec_ratings{load_ratings(path)}; });
}

foodrec_status foodrec_ratings_synthetic(const foodrec_corpus* corpus, size_t users, uint64_t seed,
                                         double noise, foodrec_ratings** out) {
  FOODREC_REQUIRE(corpus && out, "corpus and out must not be null");
  *out = nullptr;
  return guarded(
      [&] { *out = new foodrec_ratings{synthetic_ratings(corpus->corpus, users, seed, noise)}; });
}

foodrec_status foodrec_ratings_save(const foodrec_ratings* ratings, const char* path) {
  FOODREC_REQUIRE(ratings && path, "ratings and path must not be null");
  return guarded([&] {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::io, std::string("cannot write ") + path);
    f << ratings_to_json(ratings->ratings);
  });
}

size_t foodrec_ratings_count(const foodrec_ratings* ratings) {
  return ratings ? ratings->ratings.size() : 0;
}

const char* foodrec_ratings_user_id(const foodrec_ratings* ratings, size_t index) {
  if (!ratings || index >= ratings->ratings.size()) return nullptr;
  return ratings->ratings[index].user_id.c_str();
}

void foodrec_ratings_free(foodrec_ratings* ratings) { delete ratings; }

// ---- config

foodrec_status foodrec_config_create(foodrec_config** out) {
  FOODREC_REQUIRE(out, "out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new foodrec_config(); });
}

foodrec_status foodrec_config_set(foodrec_config* cfg, const char* key, const char* value) {
  FOODREC_REQUIRE(cfg && key && value, "arguments must not be null");
  return guarded([&] {
    foodrec_config updated = *cfg;
    set_option(updated, key, value);
    *cfg = std::move(updated);
  });
}

foodrec_status foodrec_config_get(const foodrec_config* cfg, const char* key, char** value) {
  FOODREC_REQUIRE(cfg && key && value, "arguments must not be null");
  *value = nullptr;
  return guarded([&] { *value = dup_string(get_option(*cfg, key)); });
}

void foodrec_config_free(foodrec_config* cfg) { delete cfg; }

// ---- recommendation

foodrec_status foodrec_recommend(const foodrec_corpus* corpus, const foodrec_ontology* onto,
                                 const foodrec_rules* rules, const foodrec_ratings* ratings,
                                 const foodrec_config* cfg, const char* user_id,
                                 const char* query, foodrec_recommendations** out) {
  FOODREC_REQUIRE(corpus && out, "corpus and out must not be null");
  FOODREC_REQUIRE(user_id || query, "need a user id or a query");
  FOODREC_REQUIRE(!user_id || ratings, "a user id needs ratings");
  *out = nullptr;
  const auto& c = cfg ? *cfg : defaults();
  return guarded([&] {
    const auto& e = c.eval;
    RecommenderConfig rc = e.scoring;
    rc.measure = c.measure_set ? e.measures.front() : MeasureKind::proposed;
    rc.cutoff = e.cutoff_for(rc.measure);
    rc.top_k = c.top_k;
    rc.validate();

    const Ontology* ontology = onto ? &onto->onto : nullptr;
    const Corpus annotated = ontology ? ontology->annotate_corpus(corpus->corpus, e.stops)
                                      : corpus->corpus;

    UserProfile profile;
    TermList triggers;
    std::optional<TrainTestSplit> split;
    const RatingSet* user = nullptr;
    if (user_id) {
      for (const auto& r : ratings->ratings) {
        if (r.user_id == user_id) user = &r;
      }
      if (!user) throw Error(ErrorKind::not_found, std::string("unknown user: ") + user_id);
      validate_ratings(*user, annotated);
      split = split_train_test(annotated, e.split);
    }
    const TermIndex index =
        split && e.idf_scope == IdfScope::train
            ? TermIndex(annotated, split->train, e.stops, e.log_base)
            : TermIndex(annotated, e.stops, e.log_base);
    if (split) {
      profile = build_profile(*user, split->train, ontology, index);
      for (const auto& id : profile.source_items) {
        const auto& t = index.terms(id);
        triggers.insert(triggers.end(), t.begin(), t.end());
      }
    } else {
      profile = profile_from_query(query, ontology, index);
    }
    if (query) {
      const auto q = preprocess(query, e.stops);
      triggers.insert(triggers.end(), q.begin(), q.end());
    }
    BoostContext boosts;
    if (rules && e.heuristics) boosts = activate(rules->rules, triggers);
    const ScoringInputs inputs{index, ontology, std::move(boosts)};
    auto recs = std::make_unique<foodrec_recommendations>();
    recs->recs = recommend(profile, split ? split->test : annotated, rc, inputs);
    *out = recs.release();
  });
}

size_t foodrec_recommendations_size(const foodrec_recommendations* recs) {
  return recs ? recs->recs.size() : 0;
}

foodrec_status foodrec_recommendations_get(const foodrec_recommendations* recs, size_t index,
                                           const char** item_id, double* score) {
  FOODREC_REQUIRE(recs, "recommendations must not be null");
  if (index >= recs->recs.size()) return fail(FOODREC_ERR_NOT_FOUND, "index out of range");
  if (item_id) *item_id = recs->recs[index].item_id.c_str();
  if (score) *score = recs->recs[index].score;
  return FOODREC_OK;
}

foodrec_status foodrec_recommendations_format(const foodrec_recommendations* recs,
                                              const char* format, char** out) {
  FOODREC_REQUIRE(recs && out, "arguments must not be null");
  *out = nullptr;
  return guarded([&] {
    const std::string f = format ? format : "jsonl";
    std::string text;
    if (f == "jsonl") {
      for (const auto& r : recs->recs) {
        nlohmann::ordered_json j;
        j["item_id"] = r.item_id;
        j["score"] = r.score;
        j["measure"] = std::string(to_string(r.measure));
        text += j.dump() + "\n";
      }
    } else if (f == "table") {
      text = fmt::format("{:<4} {:<16} {:>8}  {}\n", "rank", "item_id", "score", "measure");
      for (std::size_t i = 0; i < recs->recs.size(); ++i) {
        const auto& r = recs->recs[i];
        text += fmt::format("{:<4} {:<16} {:>8.4f}  {}\n", i + 1, r.item_id, r.score,
                            to_string(r.measure));
      }
    } else {
      throw Error(ErrorKind::config, "unknown output format '" + f + "'");
    }
    *out = dup_string(text);
  });
}

void foodrec_recommendations_free(foodrec_recommendations* recs) { delete recs; }

// ---- evaluation

foodrec_status foodrec_evaluate(const foodrec_corpus* corpus, const foodrec_ontology* onto,
                                const foodrec_rules* rules, const foodrec_ratings* ratings,
                                const foodrec_config* cfg, foodrec_report** out) {
  FOODREC_REQUIRE(corpus && ratings && out, "corpus, ratings and out must not be null");
  *out = nullptr;
  const auto& c = cfg ? *cfg : defaults();
  return guarded([&] {
    static const std::vector<HeuristicRule> none;
    auto report = std::make_unique<foodrec_report>();
    store_report(*report, evaluate_all(corpus->corpus, ratings->ratings,
                                       onto ? &onto->onto : nullptr, rules ? rules->rules : none,
                                       c.eval));
    *out = report.release();
  });
}

foodrec_status foodrec_sweep(const foodrec_corpus* corpus, const foodrec_ontology* onto,
                             const foodrec_rules* rules, const foodrec_ratings* ratings,
                             const foodrec_config* cfg, const double* grid, size_t grid_size,
                             foodrec_report** out) {
  FOODREC_REQUIRE(corpus && ratings && out, "corpus, ratings and out must not be null");
  FOODREC_REQUIRE(grid || grid_size == 0, "grid must not be null");
  *out = nullptr;
  const auto& c = cfg ? *cfg : defaults();
  return guarded([&] {
    static const std::vector<HeuristicRule> none;
    auto report = std::make_unique<foodrec_report>();
    store_report(*report, sweep_cutoff(corpus->corpus, ratings->ratings,
                                       onto ? &onto->onto : nullptr, rules ? rules->rules : none,
                                       c.eval, std::vector<double>(grid, grid + grid_size)));
    *out = report.release();
  });
}

size_t foodrec_report_size(const foodrec_report* report) { return report ? report->rows.size() : 0; }

size_t foodrec_report_skipped_count(const foodrec_report* report) {
  return report ? report->result.skipped.size() : 0;
}

foodrec_status foodrec_report_row(const foodrec_report* report, size_t index, const char** user,
                                  const char** measure, double* cutoff, double metrics[5],
                                  int* is_average) {
  FOODREC_REQUIRE(report, "report must not be null");
  if (index >= report->rows.size()) return fail(FOODREC_ERR_NOT_FOUND, "row index out of range");
  const auto& r = report->rows[index];
  if (user) *user = r.user.c_str();
  if (measure) *measure = report->measure_names[index].c_str();
  if (cutoff) *cutoff = r.cutoff;
  if (metrics) {
    const auto nan = std::numeric_limits<double>::quiet_NaN();
    metrics[0] = r.metrics.accuracy.value_or(nan);
    metrics[1] = r.metrics.precision.value_or(nan);
    metrics[2] = r.metrics.recall.value_or(nan);
    metrics[3] = r.metrics.specificity.value_or(nan);
    metrics[4] = r.metrics.f_measure.value_or(nan);
  }
  if (is_average) *is_average = r.average ? 1 : 0;
  return FOODREC_OK;
}

foodrec_status foodrec_report_save(const foodrec_report* report, const char* path,
                                   const char* format) {
  FOODREC_REQUIRE(report && path, "report and path must not be null");
  return guarded([&] { emit_report(report->rows, path, report_format(format)); });
}

foodrec_status foodrec_report_format(const foodrec_report* report, const char* format,
                                     char** out) {
  FOODREC_REQUIRE(report && out, "arguments must not be null");
  *out = nullptr;
  return guarded([&] {
    *out = dup_string(report_format(format) == ReportFormat::json ? report_to_json(report->rows)
                                                                   : report_to_csv(report->rows));
  });
}

void foodrec_report_free(foodrec_report* report) { delete report; }

}  // extern "C"
