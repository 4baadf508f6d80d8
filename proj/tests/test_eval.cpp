#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "foodrec/error.hpp"
#include "foodrec/eval.hpp"
#include "foodrec/synthetic.hpp"
#include "test_util.hpp"

using namespace foodrec;

namespace {

struct Bench {
  Ontology onto = synthetic_ontology();
  Corpus corpus = generate_synthetic(default_group_counts(300), 42);
  std::vector<RatingSet> users = synthetic_ratings(corpus, 5, 42);
};

const Bench& bench() {
  static const Bench b;
  return b;
}

std::set<std::string> ids(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("confusion matrix counts") {
  const auto test = ids({"a", "b", "c", "d", "e"});
  const auto cm = confusion(ids({"a", "b", "c"}), ids({"a", "d"}), test);
  CHECK(cm.tp == 1);
  CHECK(cm.fp == 2);
  CHECK(cm.fn == 1);
  CHECK(cm.tn == 1);
  CHECK(cm.total() == 5);
  CHECK_THROWS_AS(confusion(ids({"z"}), {}, test), Error);
  CHECK_THROWS_AS(confusion({}, ids({"z"}), test), Error);
}

TEST_CASE("metrics and undefined denominators") {
  const auto m = metrics({2, 2, 1, 5});
  CHECK(*m.accuracy == doctest::Approx(0.7));
  CHECK(*m.precision == doctest::Approx(0.5));
  CHECK(*m.recall == doctest::Approx(2.0 / 3.0));
  CHECK(*m.specificity == doctest::Approx(5.0 / 7.0));
  CHECK(*m.f_measure == doctest::Approx(2 * 0.5 * (2.0 / 3.0) / (0.5 + 2.0 / 3.0)));
  const auto none = metrics({0, 0, 3, 7});
  CHECK_FALSE(none.precision.has_value());
  CHECK_FALSE(none.f_measure.has_value());
  CHECK(*none.recall == 0.0);
  const auto no_pos = metrics({0, 2, 0, 8});
  CHECK_FALSE(no_pos.recall.has_value());
  CHECK(*no_pos.precision == 0.0);
  CHECK_FALSE(f_measure(0.0, 0.0).has_value());
  CHECK_THROWS_AS(metrics({0, 0, 0, 0}), Error);
}

TEST_CASE("F is the harmonic mean of P and R") {
  for (int p = 1; p <= 10; ++p) {
    for (int r = 1; r <= 10; ++r) {
      const double P = p / 10.0, R = r / 10.0;
      const double f = *f_measure(P, R);
      CHECK(f == doctest::Approx(1.0 / (0.5 / P + 0.5 / R)));
      CHECK(f <= std::max(P, R) + 1e-15);
      CHECK(f >= std::min(P, R) - 1e-15);
    }
  }
}

TEST_CASE("metrics stay consistent with their confusion matrix") {
  for (unsigned tp = 0; tp < 5; ++tp)
    for (unsigned fp = 0; fp < 5; ++fp)
      for (unsigned fn = 0; fn < 5; ++fn)
        for (unsigned tn = 0; tn < 5; ++tn) {
          const ConfusionMatrix cm{tp, fp, fn, tn};
          if (cm.total() == 0) continue;
          const auto m = metrics(cm);
          CHECK(*m.accuracy == doctest::Approx(double(tp + tn) / cm.total()));
          CHECK(m.precision.has_value() == (tp + fp > 0));
          CHECK(m.recall.has_value() == (tp + fn > 0));
          CHECK(m.specificity.has_value() == (fp + tn > 0));
          if (m.precision && m.recall && *m.precision + *m.recall > 0) {
            CHECK(*m.f_measure == doctest::Approx(2.0 * tp / (2.0 * tp + fp + fn)));
          }
        }
}

TEST_CASE("full evaluation layout") {
  const auto& b = bench();
  const auto res = evaluate_all(b.corpus, b.users, &b.onto, default_rules(), {});
  CHECK(res.rows.size() == 30);
  CHECK(res.averages.size() == 6);
  CHECK(res.skipped.empty());
  CHECK(res.train_ids.size() == 180);
  CHECK(res.test_ids.size() == 120);
  for (const auto& r : res.rows) {
    CHECK(r.cm.total() == res.test_ids.size());
    for (const auto& id : r.recommended) CHECK(res.test_ids.contains(id));
  }
  for (const auto& a : res.averages) {
    CHECK(a.user == kAverageUser);
    CHECK(a.average);
  }
  for (const auto& [user, sources] : res.profile_sources) {
    for (const auto& id : sources) CHECK(res.train_ids.contains(id));
  }
  CHECK(res.all_rows().size() == 36);
}

TEST_CASE("macro averages are means of defined user values") {
  const auto& b = bench();
  const auto res = evaluate_all(b.corpus, b.users, &b.onto, default_rules(), {});
  for (const auto& a : res.averages) {
    double sum = 0;
    int n = 0;
    for (const auto& r : res.rows) {
      if (r.measure == a.measure && r.metrics.recall) {
        sum += *r.metrics.recall;
        ++n;
      }
    }
    if (n == 0) {
      CHECK_FALSE(a.metrics.recall.has_value());
    } else {
      CHECK(*a.metrics.recall == doctest::Approx(sum / n));
    }
  }
}

TEST_CASE("cold start users are skipped, not fatal") {
  const auto& b = bench();
  auto users = b.users;
  users.push_back({"ghost", {}, {b.corpus.items().front().id}});
  const auto res = evaluate_all(b.corpus, users, &b.onto, default_rules(), {});
  REQUIRE(res.skipped.size() == 1);
  CHECK(res.skipped.front().user_id == "ghost");
  CHECK(res.rows.size() == 30);
}

TEST_CASE("unknown items in ratings are a validation error") {
  const auto& b = bench();
  std::vector<RatingSet> users{{"u", {"nope"}, {}}};
  CHECK_THROWS_AS(evaluate_all(b.corpus, users, &b.onto, {}, {}), Error);
}

TEST_CASE("per measure cutoffs and measure subsets") {
  const auto& b = bench();
  EvalOptions opt;
  opt.measures = {MeasureKind::jaccard, MeasureKind::tfidf_cosine};
  opt.cutoffs[MeasureKind::jaccard] = 0.1;
  const auto res = evaluate_all(b.corpus, b.users, &b.onto, {}, opt);
  CHECK(res.rows.size() == 10);
  CHECK(res.rows[0].measure == MeasureKind::jaccard);
  CHECK(res.rows[0].cutoff == doctest::Approx(0.1));
  CHECK(res.rows[1].cutoff == doctest::Approx(0.5));
}

TEST_CASE("concept measures without an ontology are a config error") {
  const auto& b = bench();
  try {
    (void)evaluate_all(b.corpus, b.users, nullptr, {}, {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
  EvalOptions text;
  text.measures = {MeasureKind::tfidf_cosine};
  CHECK(evaluate_all(b.corpus, b.users, nullptr, {}, text).rows.size() == 5);
}

TEST_CASE("sweep yields shrinking recommendation sets") {
  const auto& b = bench();
  const std::vector<double> grid{0.9, 0.1, 0.5, 0.3, 0.7, 0.5};
  const auto res = sweep_cutoff(b.corpus, b.users, &b.onto, default_rules(), {}, grid);
  CHECK(res.rows.size() == 5 * 6 * 5);
  CHECK(res.averages.size() == 6 * 5);
  std::map<std::pair<std::string, MeasureKind>, std::vector<const MetricsReport*>> by;
  for (const auto& r : res.rows) by[{r.user, r.measure}].push_back(&r);
  for (const auto& [key, rows] : by) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i - 1]->cutoff < rows[i]->cutoff);
      CHECK(std::includes(rows[i - 1]->recommended.begin(), rows[i - 1]->recommended.end(),
                          rows[i]->recommended.begin(), rows[i]->recommended.end()));
    }
  }
}

TEST_CASE("train-scoped idf and stratified split still produce a full report") {
  const auto& b = bench();
  EvalOptions opt;
  opt.idf_scope = IdfScope::train;
  opt.split.stratified = true;
  const auto res = evaluate_all(b.corpus, b.users, &b.onto, default_rules(), opt);
  CHECK(res.rows.size() == 30);
}

TEST_CASE("csv report round trips to six decimals") {
  const auto& b = bench();
  const auto rows = evaluate_all(b.corpus, b.users, &b.onto, default_rules(), {}).all_rows();
  const auto csv = report_to_csv(rows);
  CHECK(csv.rfind("user,measure,cutoff,accuracy,precision,recall,specificity,f_measure\n", 0) == 0);
  const auto back = parse_report_csv(csv);
  REQUIRE(back.size() == rows.size());
  const auto same = [](const std::optional<double>& a, const std::optional<double>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || std::abs(*a - *b) <= 5e-7;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].user == rows[i].user);
    CHECK(back[i].measure == rows[i].measure);
    CHECK(back[i].average == rows[i].average);
    CHECK(std::abs(back[i].cutoff - rows[i].cutoff) <= 5e-7);
    CHECK(same(back[i].metrics.accuracy, rows[i].metrics.accuracy));
    CHECK(same(back[i].metrics.precision, rows[i].metrics.precision));
    CHECK(same(back[i].metrics.recall, rows[i].metrics.recall));
    CHECK(same(back[i].metrics.specificity, rows[i].metrics.specificity));
    CHECK(same(back[i].metrics.f_measure, rows[i].metrics.f_measure));
  }
  CHECK(report_to_csv(back) == csv);
}

TEST_CASE("undefined metrics are written as NA") {
  MetricsReport r;
  r.user = "u";
  r.measure = MeasureKind::jaccard;
  r.cm = {0, 0, 2, 3};
  r.metrics = metrics(r.cm);
  const auto csv = report_to_csv({r});
  CHECK(csv.find("u,jaccard,0.500000,0.600000,NA,0.000000,1.000000,NA") != std::string::npos);
  const auto json = report_to_json({r});
  CHECK(json.find("null") != std::string::npos);
}

TEST_CASE("emit report") {
  const testutil::TempDir dir;
  MetricsReport r;
  r.user = "u";
  r.cm = {1, 0, 0, 1};
  r.metrics = metrics(r.cm);
  emit_report({r}, dir.file("r.csv"), ReportFormat::csv);
  CHECK(testutil::slurp(dir.file("r.csv")) == report_to_csv({r}));
  emit_report({r}, dir.file("r.json"), ReportFormat::json);
  CHECK(testutil::slurp(dir.file("r.json")) == report_to_json({r}));
  CHECK_THROWS_AS(emit_report({}, dir.file("e.csv"), ReportFormat::csv), Error);
  try {
    emit_report({r}, "/nonexistent/dir/r.csv", ReportFormat::csv);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}

TEST_CASE("evaluation is deterministic") {
  const auto& b = bench();
  const auto a = report_to_csv(evaluate_all(b.corpus, b.users, &b.onto, default_rules(), {}).all_rows());
  const auto c = report_to_csv(evaluate_all(b.corpus, b.users, &b.onto, default_rules(), {}).all_rows());
  CHECK(a == c);
}

}  // TEST_SUITE
