#include "foodrec/eval.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/core.h>

#include "foodrec/error.hpp"
#include "json.hpp"

namespace foodrec {

using nlohmann::json;

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

struct ScoredUser {
  std::string user_id;
  std::set<std::string> relevant_test;
  std::map<MeasureKind, std::vector<std::pair<std::string, double>>> scores;
};

struct ScoredRun {
  EvaluationResult skeleton;  // split, skipped users, profile sources
  std::vector<ScoredUser> users;
};

ScoredRun score_all(const Corpus& corpus, const std::vector<RatingSet>& users,
                    const Ontology* onto, const std::vector<HeuristicRule>& rules,
                    const EvalOptions& options) {
  if (corpus.empty()) throw Error(ErrorKind::validation, "evaluation needs a nonempty corpus");
  for (const auto& u : users) validate_ratings(u, corpus);
  for (const auto m : options.measures) {
    RecommenderConfig cfg = options.scoring;
    cfg.measure = m;
    cfg.cutoff = options.cutoff_for(m);
    cfg.validate();
    if (cfg.measure == MeasureKind::proposed ? cfg.proposed.alpha < 1.0 : uses_concepts(m)) {
      if (onto == nullptr) {
        throw Error(ErrorKind::config,
                    "measure '" + std::string(to_string(m)) + "' requires an ontology");
      }
    }
  }

  const Corpus annotated = onto ? onto->annotate_corpus(corpus, options.stops) : corpus;
  auto split = split_train_test(annotated, options.split);
  const TermIndex index = options.idf_scope == IdfScope::full
                              ? TermIndex(annotated, options.stops, options.log_base)
                              : TermIndex(annotated, split.train, options.stops, options.log_base);

  ScoredRun run;
  run.skeleton.train_ids = split.train.ids();
  run.skeleton.test_ids = split.test.ids();

  for (const auto& user : users) {
    UserProfile profile;
    try {
      profile = build_profile(user, split.train, onto, index);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::cold_start) throw;
      run.skeleton.skipped.push_back({user.user_id, e.what()});
      continue;
    }
    run.skeleton.profile_sources[user.user_id] = profile.source_items;

    TermList triggers;
    for (const auto& id : profile.source_items) {
      const auto& t = index.terms(id);
      triggers.insert(triggers.end(), t.begin(), t.end());
    }
    const ScoringInputs inputs{index, onto,
                               options.heuristics ? activate(rules, triggers) : BoostContext{}};

    ScoredUser scored;
    scored.user_id = user.user_id;
    for (const auto& id : user.relevant) {
      if (run.skeleton.test_ids.contains(id)) scored.relevant_test.insert(id);
    }
    for (const auto m : options.measures) {
      RecommenderConfig cfg = options.scoring;
      cfg.measure = m;
      auto& out = scored.scores[m];
      for (const auto& item : split.test.items()) {
        out.emplace_back(item.id, score_item(profile, item, cfg, inputs));
      }
    }
    run.users.push_back(std::move(scored));
  }
  if (run.users.empty()) {
    throw Error(ErrorKind::protocol, "no user has a relevant item in the training set");
  }
  return run;
}

MetricsReport threshold(const ScoredUser& user, MeasureKind measure, double cutoff,
                        const RecommenderConfig& base, const std::set<std::string>& test_ids) {
  RecommenderConfig cfg = base;
  cfg.measure = measure;
  cfg.cutoff = cutoff;
  cfg.top_k.reset();
  MetricsReport row;
  row.user = user.user_id;
  row.measure = measure;
  row.cutoff = cutoff;
  std::set<std::string> recommended;
  for (auto& rec : select(user.scores.at(measure), cfg)) recommended.insert(std::move(rec.item_id));
  row.recommended.assign(recommended.begin(), recommended.end());
  row.cm = confusion(recommended, user.relevant_test, test_ids);
  row.metrics = metrics(row.cm);
  return row;
}

MetricsReport macro_average(const std::vector<MetricsReport>& rows, MeasureKind measure,
                            double cutoff) {
  MetricsReport avg;
  avg.user = std::string(kAverageUser);
  avg.measure = measure;
  avg.cutoff = cutoff;
  avg.average = true;
  const auto mean = [&](auto field) -> std::optional<double> {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows) {
      if (r.measure != measure || r.cutoff != cutoff) continue;
      if (const auto v = r.metrics.*field) {
        sum += *v;
        ++n;
      }
    }
    return n == 0 ? std::nullopt : std::optional(sum / static_cast<double>(n));
  };
  for (const auto& r : rows) {
    if (r.measure != measure || r.cutoff != cutoff) continue;
    avg.cm.tp += r.cm.tp;
    avg.cm.fp += r.cm.fp;
    avg.cm.fn += r.cm.fn;
    avg.cm.tn += r.cm.tn;
  }
  avg.metrics.accuracy = mean(&Metrics::accuracy);
  avg.metrics.precision = mean(&Metrics::precision);
  avg.metrics.recall = mean(&Metrics::recall);
  avg.metrics.specificity = mean(&Metrics::specificity);
  avg.metrics.f_measure = mean(&Metrics::f_measure);
  return avg;
}

std::string format_metric(const std::optional<double>& v) {
  return v ? fmt::format("{:.6f}", *v) : std::string("NA");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

ConfusionMatrix confusion(const std::set<std::string>& recommended,
                          const std::set<std::string>& relevant,
                          const std::set<std::string>& test_items) {
  for (const auto& id : recommended) {
    if (!test_items.contains(id)) {
      throw Error(ErrorKind::protocol, "recommended item outside the test set: " + id);
    }
  }
  for (const auto& id : relevant) {
    if (!test_items.contains(id)) {
      throw Error(ErrorKind::protocol, "relevant item outside the test set: " + id);
    }
  }
  ConfusionMatrix cm;
  for (const auto& id : test_items) {
    const bool rec = recommended.contains(id);
    const bool rel = relevant.contains(id);
    if (rec && rel) {
      ++cm.tp;
    } else if (rec) {
      ++cm.fp;
    } else if (rel) {
      ++cm.fn;
    } else {
      ++cm.tn;
    }
  }
  return cm;
}

std::optional<double> f_measure(double precision, double recall) {
  if (precision + recall <= 0.0) return std::nullopt;
  return 2.0 * precision * recall / (precision + recall);
}

Metrics metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorKind::protocol, "metrics of an empty confusion matrix");
  Metrics m;
  m.accuracy = ratio(cm.tp + cm.tn, cm.total());
  m.precision = ratio(cm.tp, cm.tp + cm.fp);
  m.recall = ratio(cm.tp, cm.tp + cm.fn);
  m.specificity = ratio(cm.tn, cm.tn + cm.fp);
  if (m.precision && m.recall) m.f_measure = f_measure(*m.precision, *m.recall);
  return m;
}

std::vector<MetricsReport> EvaluationResult::all_rows() const {
  std::vector<MetricsReport> out = rows;
  out.insert(out.end(), averages.begin(), averages.end());
  return out;
}

EvaluationResult evaluate_all(const Corpus& corpus, const std::vector<RatingSet>& users,
                              const Ontology* onto, const std::vector<HeuristicRule>& rules,
                              const EvalOptions& options) {
  ScoredRun run = score_all(corpus, users, onto, rules, options);
  EvaluationResult result = std::move(run.skeleton);
  for (const auto& user : run.users) {
    for (const auto m : options.measures) {
      result.rows.push_back(
          threshold(user, m, options.cutoff_for(m), options.scoring, result.test_ids));
    }
  }
  for (const auto m : options.measures) {
    result.averages.push_back(macro_average(result.rows, m, options.cutoff_for(m)));
  }
  return result;
}

EvaluationResult sweep_cutoff(const Corpus& corpus, const std::vector<RatingSet>& users,
                              const Ontology* onto, const std::vector<HeuristicRule>& rules,
                              const EvalOptions& options, std::vector<double> grid) {
  if (grid.empty()) throw Error(ErrorKind::config, "cutoff grid is empty");
  for (const double c : grid) {
    if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorKind::config, "cutoffs must lie in [0, 1]");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  ScoredRun run = score_all(corpus, users, onto, rules, options);
  EvaluationResult result = std::move(run.skeleton);
  for (const auto& user : run.users) {
    for (const auto m : options.measures) {
      std::vector<std::string> previous;
      bool first = true;
      for (const double c : grid) {
        auto row = threshold(user, m, c, options.scoring, result.test_ids);
        if (!first && !std::includes(previous.begin(), previous.end(), row.recommended.begin(),
                                     row.recommended.end())) {
          throw std::logic_error(fmt::format(
              "recommendations for user {} grew when the {} cutoff rose to {}", user.user_id,
              to_string(m), c));
        }
        previous = row.recommended;
        first = false;
        result.rows.push_back(std::move(row));
      }
    }
  }
  for (const double c : grid) {
    for (const auto m : options.measures) result.averages.push_back(macro_average(result.rows, m, c));
  }
  return result;
}

std::string report_to_csv(const std::vector<MetricsReport>& reports) {
  std::string out = "user,measure,cutoff,accuracy,precision,recall,specificity,f_measure\n";
  for (const auto& r : reports) {
    out += fmt::format("{},{},{:.6f},{},{},{},{},{}\n", csv_escape(r.user), to_string(r.measure),
                       r.cutoff, format_metric(r.metrics.accuracy),
                       format_metric(r.metrics.precision), format_metric(r.metrics.recall),
                       format_metric(r.metrics.specificity), format_metric(r.metrics.f_measure));
  }
  return out;
}

std::string report_to_json(const std::vector<MetricsReport>& reports) {
  const auto value = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json doc = json::array();
  for (const auto& r : reports) {
    json j = {{"user", r.user},
              {"measure", std::string(to_string(r.measure))},
              {"cutoff", r.cutoff},
              {"average", r.average},
              {"tp", r.cm.tp},
              {"fp", r.cm.fp},
              {"fn", r.cm.fn},
              {"tn", r.cm.tn},
              {"accuracy", value(r.metrics.accuracy)},
              {"precision", value(r.metrics.precision)},
              {"recall", value(r.metrics.recall)},
              {"specificity", value(r.metrics.specificity)},
              {"f_measure", value(r.metrics.f_measure)}};
    if (!r.average) j["recommended"] = r.recommended;
    doc.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

void emit_report(const std::vector<MetricsReport>& reports, const std::filesystem::path& path,
                 ReportFormat format) {
  if (reports.empty()) throw Error(ErrorKind::validation, "no report rows to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << (format == ReportFormat::json ? report_to_json(reports) : report_to_csv(reports));
  if (!out) throw Error(ErrorKind::io, "write failed: " + path.string());
}

std::vector<MetricsReport> parse_report_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("user,measure,cutoff", 0) != 0) {
    throw Error(ErrorKind::format, "report CSV: missing header");
  }
  const auto metric = [](const std::string& s) -> std::optional<double> {
    if (s == "NA") return std::nullopt;
    return std::stod(s);
  };
  std::vector<MetricsReport> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 8) {
      throw Error(ErrorKind::format, fmt::format("report CSV line {}: expected 8 fields", line_no));
    }
    MetricsReport r;
    r.user = f[0];
    r.average = r.user == kAverageUser;
    const auto m = parse_measure(f[1]);
    if (!m) throw Error(ErrorKind::format, fmt::format("report CSV line {}: bad measure", line_no));
    r.measure = *m;
    try {
      r.cutoff = std::stod(f[2]);
      r.metrics = {metric(f[3]), metric(f[4]), metric(f[5]), metric(f[6]), metric(f[7])};
    } catch (const std::exception&) {
      throw Error(ErrorKind::format, fmt::format("report CSV line {}: bad number", line_no));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace foodrec
