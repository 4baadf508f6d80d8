// Command-line front end. Talks to the library only through foodrec.h.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "foodrec/foodrec.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

struct Failure {
  foodrec_status status;
  std::string message;
};

void check(foodrec_status s) {
  if (s != FOODREC_OK) throw Failure{s, foodrec_last_error()};
}

int exit_code(foodrec_status s) { return s == FOODREC_ERR_IO ? kExitIo : kExitUsage; }

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Corpus = Handle<foodrec_corpus, foodrec_corpus_free>;
using Ontology = Handle<foodrec_ontology, foodrec_ontology_free>;
using Rules = Handle<foodrec_rules, foodrec_rules_free>;
using Ratings = Handle<foodrec_ratings, foodrec_ratings_free>;
using Config = Handle<foodrec_config, foodrec_config_free>;
using Recs = Handle<foodrec_recommendations, foodrec_recommendations_free>;
using Report = Handle<foodrec_report, foodrec_report_free>;

struct Text {
  char* p = nullptr;
  ~Text() { foodrec_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text)) throw Failure{FOODREC_ERR_IO, "cannot write " + path};
}

// key=value lines; blank lines and '#' comments ignored.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{FOODREC_ERR_IO, "cannot open config file " + path};
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int n = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Failure{FOODREC_ERR_CONFIG, path + ":" + std::to_string(n) + ": expected key=value"};
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

// Options shared by recommend, evaluate and sweep.
struct Common {
  std::string corpus, onto, ratings, rules, stopwords, config_file, out, format;
  bool synthetic_onto = false;
  bool no_heuristics = false;
  std::string measure;
  std::optional<double> cutoff, alpha, lambda, split, boost_cap;
  std::optional<std::size_t> top_k;
  std::optional<std::uint64_t> seed;
  std::string bcosine_variant, idf_scope, idf_log;
  bool stratified = false;
  std::vector<std::string> settings;  // --set key=value

  void add_to(CLI::App* cmd, bool needs_ratings) {
    auto* c = cmd->add_option("--corpus", corpus,
                              needs_ratings ? "food corpus (.csv or .json)"
                                            : "food corpus (default: built-in synthetic corpus)");
    if (needs_ratings) c->required();
    cmd->add_option("--onto", onto, "ontology JSON");
    cmd->add_flag("--synthetic-onto", synthetic_onto, "use the built-in synthetic ontology");
    auto* r = cmd->add_option("--ratings", ratings, "user ratings JSON");
    if (needs_ratings) r->required();
    cmd->add_option("--rules", rules, "heuristic rules JSON (default: $FOODREC_RULES or built-in)");
    cmd->add_flag("--no-heuristics", no_heuristics, "disable heuristic boosts");
    cmd->add_option("--stopwords", stopwords, "stop-word list, one word per line");
    cmd->add_option("--config", config_file, "key=value configuration file");
    cmd->add_option("--set", settings, "extra configuration key=value");
    cmd->add_option("--measure", measure, "measure name, comma list, or 'all'");
    cmd->add_option("--cutoff", cutoff, "recommend when score > cutoff");
    cmd->add_option("--top-k", top_k, "keep at most k recommendations");
    cmd->add_option("--alpha", alpha, "TF-IDF weight in the proposed blend");
    cmd->add_option("--lambda", lambda, "neighbor decay for concept expansion");
    cmd->add_option("--boost-cap", boost_cap, "upper bound on the heuristic boost");
    cmd->add_option("--bcosine-variant", bcosine_variant, "product or standard");
    cmd->add_option("--split", split, "train fraction");
    cmd->add_option("--seed", seed, "split seed");
    cmd->add_flag("--stratified", stratified, "split within each food group");
    cmd->add_option("--idf-scope", idf_scope, "full or train");
    cmd->add_option("--idf-log", idf_log, "e or 10");
    cmd->add_option("--out", out, "output file (default stdout)");
  }

  void configure(foodrec_config* cfg) const {
    const auto set = [cfg](const std::string& k, const std::string& v) {
      check(foodrec_config_set(cfg, k.c_str(), v.c_str()));
    };
    const auto num = [](double v) {
      std::ostringstream s;
      s.precision(17);
      s << v;
      return s.str();
    };
    if (!config_file.empty()) {
      for (const auto& [k, v] : read_config_file(config_file)) set(k, v);
    }
    for (const auto& kv : settings) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Failure{FOODREC_ERR_CONFIG, "--set expects key=value"};
      set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!measure.empty()) set("measure", measure);
    if (cutoff) set("cutoff", num(*cutoff));
    if (top_k) set("top_k", std::to_string(*top_k));
    if (alpha) set("alpha", num(*alpha));
    if (lambda) set("lambda", num(*lambda));
    if (boost_cap) set("boost_cap", num(*boost_cap));
    if (!bcosine_variant.empty()) set("bcosine_variant", bcosine_variant);
    if (split) set("split", num(*split));
    if (seed) set("seed", std::to_string(*seed));
    if (stratified) set("stratified", "true");
    if (!idf_scope.empty()) set("idf_scope", idf_scope);
    if (!idf_log.empty()) set("idf_log", idf_log);
    if (!stopwords.empty()) set("stopwords", stopwords);
    if (no_heuristics) set("heuristics", "false");
  }
};

struct Loaded {
  Corpus corpus;
  Ontology onto;
  Rules rules;
  Ratings ratings;
  Config cfg;
};

void load(const Common& c, Loaded& l) {
  check(foodrec_config_create(l.cfg.out()));
  c.configure(l.cfg.get());
  // Without a corpus, run against the built-in synthetic data set.
  const bool builtin = c.corpus.empty();
  if (builtin) {
    check(foodrec_corpus_generate(nullptr, 300, 42, l.corpus.out()));
  } else {
    check(foodrec_corpus_load(c.corpus.c_str(), nullptr, l.corpus.out()));
  }
  if (!c.onto.empty()) {
    check(foodrec_ontology_load(c.onto.c_str(), l.onto.out()));
  } else if (c.synthetic_onto || builtin) {
    check(foodrec_ontology_synthetic(l.onto.out()));
  }
  if (!c.ratings.empty()) check(foodrec_ratings_load(c.ratings.c_str(), l.ratings.out()));
  std::string rules_path = c.rules;
  if (rules_path.empty()) {
    if (const char* env = std::getenv("FOODREC_RULES"); env && *env) rules_path = env;
  }
  if (!rules_path.empty()) {
    check(foodrec_rules_load(rules_path.c_str(), l.rules.out()));
  } else {
    check(foodrec_rules_default(l.rules.out()));
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    char* end = nullptr;
    const double v = std::strtod(piece.c_str(), &end);
    if (piece.empty() || *end != '\0') throw Failure{FOODREC_ERR_CONFIG, "bad grid value '" + piece + "'"};
    grid.push_back(v);
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic food recommender and evaluation bench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(foodrec_version()));

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic corpus, ontology and ratings");
  std::size_t total = 300, users = 5;
  std::uint64_t gen_seed = 42;
  double noise = 0.0;
  std::string groups, gen_out, gen_onto_out, gen_ratings_out;
  gen->add_option("--total", total, "number of items (split across the food groups)");
  gen->add_option("--groups", groups, "explicit 'Name:count;Name:count' group sizes");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--users", users, "number of synthetic users");
  gen->add_option("--noise", noise, "probability of flipping a rating");
  gen->add_option("--out", gen_out, "corpus output (.csv or .json)")->required();
  gen->add_option("--onto-out", gen_onto_out, "write the synthetic ontology here");
  gen->add_option("--ratings-out", gen_ratings_out, "write synthetic ratings here");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "validate a corpus and annotate it with concepts");
  std::string in_corpus, in_onto, in_ratings, in_out, in_stopwords;
  ingest->add_option("--corpus", in_corpus, "food corpus")->required();
  ingest->add_option("--onto", in_onto, "ontology JSON");
  ingest->add_option("--ratings", in_ratings, "ratings JSON to validate");
  ingest->add_option("--stopwords", in_stopwords, "stop-word list");
  ingest->add_option("--out", in_out, "annotated corpus output");

  // ontology
  auto* onto_cmd = app.add_subcommand("ontology", "check an ontology or list a neighborhood");
  std::string onto_file, onto_concept;
  onto_cmd->add_option("file", onto_file, "ontology JSON")->required();
  onto_cmd->add_option("--neighborhood", onto_concept, "print the 1-hop neighborhood of a concept");

  auto* rec = app.add_subcommand("recommend", "recommend items for a user or a query");
  Common rec_opts;
  rec_opts.add_to(rec, false);
  std::string user, query;
  rec->add_option("--user", user, "user id from the ratings file");
  rec->add_option("--query", query, "free-text query");
  rec_opts.format = "table";
  rec->add_option("--format", rec_opts.format, "jsonl or table")
      ->check(CLI::IsMember({"jsonl", "table"}));

  auto* eval = app.add_subcommand("evaluate", "per-user metrics and macro averages");
  Common eval_opts;
  eval_opts.add_to(eval, true);
  eval_opts.format = "csv";
  eval->add_option("--format", eval_opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "evaluate over a grid of cutoffs");
  Common sweep_opts;
  sweep_opts.add_to(sweep, true);
  sweep_opts.format = "csv";
  std::string grid_text = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  sweep->add_option("--grid", grid_text, "comma-separated cutoffs");
  sweep->add_option("--format", sweep_opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      Corpus corpus;
      check(foodrec_corpus_generate(groups.empty() ? nullptr : groups.c_str(), total, gen_seed,
                                    corpus.out()));
      check(foodrec_corpus_save(corpus.get(), gen_out.c_str(), nullptr));
      if (!gen_onto_out.empty()) {
        Ontology onto;
        check(foodrec_ontology_synthetic(onto.out()));
        check(foodrec_ontology_save(onto.get(), gen_onto_out.c_str()));
      }
      if (!gen_ratings_out.empty()) {
        Ratings ratings;
        check(foodrec_ratings_synthetic(corpus.get(), users, gen_seed, noise, ratings.out()));
        check(foodrec_ratings_save(ratings.get(), gen_ratings_out.c_str()));
      }
      std::cerr << "generated " << foodrec_corpus_size(corpus.get()) << " items\n";
    } else if (ingest->parsed()) {
      Config cfg;
      check(foodrec_config_create(cfg.out()));
      if (!in_stopwords.empty()) check(foodrec_config_set(cfg.get(), "stopwords", in_stopwords.c_str()));
      Corpus corpus;
      check(foodrec_corpus_load(in_corpus.c_str(), nullptr, corpus.out()));
      std::size_t annotated = 0;
      if (!in_onto.empty()) {
        Ontology onto;
        check(foodrec_ontology_load(in_onto.c_str(), onto.out()));
        check(foodrec_corpus_annotate(corpus.get(), onto.get(), cfg.get()));
        for (std::size_t i = 0; i < foodrec_corpus_size(corpus.get()); ++i) {
          if (foodrec_corpus_item_concept_count(corpus.get(), i) > 0) ++annotated;
        }
      }
      if (!in_ratings.empty()) {
        Ratings ratings;
        check(foodrec_ratings_load(in_ratings.c_str(), ratings.out()));
        std::cerr << foodrec_ratings_count(ratings.get()) << " users\n";
      }
      if (!in_out.empty()) check(foodrec_corpus_save(corpus.get(), in_out.c_str(), nullptr));
      std::cerr << foodrec_corpus_size(corpus.get()) << " items";
      if (!in_onto.empty()) std::cerr << ", " << annotated << " with concepts";
      std::cerr << "\n";
    } else if (onto_cmd->parsed()) {
      Text report;
      std::size_t violations = 0;
      check(foodrec_ontology_validate_file(onto_file.c_str(), &report.p, &violations));
      if (violations > 0) {
        std::cerr << report.str();
        std::cerr << violations << " violation(s)\n";
        return kExitUsage;
      }
      if (!onto_concept.empty()) {
        Ontology onto;
        check(foodrec_ontology_load(onto_file.c_str(), onto.out()));
        Text hood;
        check(foodrec_ontology_neighborhood(onto.get(), onto_concept.c_str(), &hood.p));
        std::cout << hood.str() << "\n";
      } else {
        std::cerr << "ok\n";
      }
    } else if (rec->parsed()) {
      if (user.empty() && query.empty()) {
        std::cerr << "recommend: need --user or --query\n";
        return kExitUsage;
      }
      if (!user.empty() && rec_opts.ratings.empty()) {
        std::cerr << "recommend: --user needs --ratings\n";
        return kExitUsage;
      }
      Loaded l;
      load(rec_opts, l);
      Recs recs;
      check(foodrec_recommend(l.corpus.get(), l.onto.get(), l.rules.get(), l.ratings.get(),
                              l.cfg.get(), user.empty() ? nullptr : user.c_str(),
                              query.empty() ? nullptr : query.c_str(), recs.out()));
      Text text;
      check(foodrec_recommendations_format(recs.get(), rec_opts.format.c_str(), &text.p));
      write_text(text.str(), rec_opts.out);
    } else if (eval->parsed() || sweep->parsed()) {
      const bool is_sweep = sweep->parsed();
      const Common& opts = is_sweep ? sweep_opts : eval_opts;
      Loaded l;
      load(opts, l);
      Report report;
      if (is_sweep) {
        const auto grid = parse_grid(grid_text);
        check(foodrec_sweep(l.corpus.get(), l.onto.get(), l.rules.get(), l.ratings.get(),
                            l.cfg.get(), grid.data(), grid.size(), report.out()));
      } else {
        check(foodrec_evaluate(l.corpus.get(), l.onto.get(), l.rules.get(), l.ratings.get(),
                               l.cfg.get(), report.out()));
      }
      if (opts.out.empty() || opts.out == "-") {
        Text text;
        check(foodrec_report_format(report.get(), opts.format.c_str(), &text.p));
        std::cout << text.str();
      } else {
        check(foodrec_report_save(report.get(), opts.out.c_str(), opts.format.c_str()));
      }
      if (const auto skipped = foodrec_report_skipped_count(report.get()); skipped > 0) {
        std::cerr << skipped << " user(s) skipped\n";
      }
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << foodrec_status_string(f.status) << ": " << f.message << "\n";
    return exit_code(f.status);
  }
  return kExitOk;
}
