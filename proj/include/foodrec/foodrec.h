/*
 * foodrec C API.
 *
 * Every object is an opaque handle created by a *_load / *_create style
 * function and released with the matching *_free. Functions return a
 * foodrec_status; on failure the message of the most recent error on the
 * calling thread is available from foodrec_last_error(). Strings returned
 * through char** out-parameters are owned by the caller and released with
 * foodrec_string_free(); const char* results stay valid as long as the
 * handle they came from.
 */
#ifndef FOODREC_FOODREC_H
#define FOODREC_FOODREC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FOODREC_BUILDING_LIBRARY)
#    define FOODREC_API __declspec(dllexport)
#  else
#    define FOODREC_API __declspec(dllimport)
#  endif
#else
#  define FOODREC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum foodrec_status {
  FOODREC_OK = 0,
  FOODREC_ERR_INVALID_ARGUMENT = 1, /* null handle, bad key or value */
  FOODREC_ERR_FORMAT = 2,           /* unparseable input */
  FOODREC_ERR_VALIDATION = 3,       /* input violates an invariant */
  FOODREC_ERR_IO = 4,
  FOODREC_ERR_NOT_FOUND = 5,
  FOODREC_ERR_CONFIG = 6,
  FOODREC_ERR_COLD_START = 7, /* user has no relevant training item */
  FOODREC_ERR_PROTOCOL = 8,
  FOODREC_ERR_INTERNAL = 9
} foodrec_status;

typedef struct foodrec_corpus foodrec_corpus;
typedef struct foodrec_ontology foodrec_ontology;
typedef struct foodrec_rules foodrec_rules;
typedef struct foodrec_ratings foodrec_ratings;
typedef struct foodrec_config foodrec_config;
typedef struct foodrec_recommendations foodrec_recommendations;
typedef struct foodrec_report foodrec_report;

FOODREC_API const char* foodrec_version(void);
FOODREC_API const char* foodrec_status_string(foodrec_status status);
/* Message of the last failure on this thread, "" if none. */
FOODREC_API const char* foodrec_last_error(void);
FOODREC_API void foodrec_string_free(char* s);

/* ---- corpus ---------------------------------------------------------- */

/* format: "csv", "json" or NULL to pick by extension. */
FOODREC_API foodrec_status foodrec_corpus_load(const char* path, const char* format,
                                               foodrec_corpus** out);
/* groups: "Name:count;Name:count" or NULL for 300 items over the 24 USDA
 * groups; total is used only when groups is NULL. */
FOODREC_API foodrec_status foodrec_corpus_generate(const char* groups, size_t total,
                                                   uint64_t seed, foodrec_corpus** out);
FOODREC_API foodrec_status foodrec_corpus_save(const foodrec_corpus* corpus, const char* path,
                                               const char* format);
/* Replaces every item's concepts with its annotation. cfg may be NULL. */
FOODREC_API foodrec_status foodrec_corpus_annotate(foodrec_corpus* corpus,
                                                   const foodrec_ontology* onto,
                                                   const foodrec_config* cfg);
FOODREC_API size_t foodrec_corpus_size(const foodrec_corpus* corpus);
FOODREC_API const char* foodrec_corpus_item_id(const foodrec_corpus* corpus, size_t index);
FOODREC_API size_t foodrec_corpus_item_concept_count(const foodrec_corpus* corpus, size_t index);
FOODREC_API void foodrec_corpus_free(foodrec_corpus* corpus);

/* ---- ontology -------------------------------------------------------- */

FOODREC_API foodrec_status foodrec_ontology_load(const char* path, foodrec_ontology** out);
/* Concept graph matching the synthetic corpus vocabulary. */
FOODREC_API foodrec_status foodrec_ontology_synthetic(foodrec_ontology** out);
FOODREC_API foodrec_status foodrec_ontology_save(const foodrec_ontology* onto, const char* path);
/* Writes one violation per line to *report ("" when valid). Returns
 * FOODREC_OK even when violations exist; only unreadable or unparseable
 * files fail. */
FOODREC_API foodrec_status foodrec_ontology_validate_file(const char* path, char** report,
                                                          size_t* violation_count);
FOODREC_API size_t foodrec_ontology_concept_count(const foodrec_ontology* onto);
/* Comma-separated sorted neighborhood of concept_id (including itself). */
FOODREC_API foodrec_status foodrec_ontology_neighborhood(const foodrec_ontology* onto,
                                                         const char* concept_id, char** out);
FOODREC_API void foodrec_ontology_free(foodrec_ontology* onto);

/* ---- heuristic rules ------------------------------------------------- */

FOODREC_API foodrec_status foodrec_rules_load(const char* path, foodrec_rules** out);
FOODREC_API foodrec_status foodrec_rules_default(foodrec_rules** out);
FOODREC_API size_t foodrec_rules_count(const foodrec_rules* rules);
FOODREC_API void foodrec_rules_free(foodrec_rules* rules);

/* ---- ratings --------------------------------------------------------- */

FOODREC_API foodrec_status foodrec_ratings_load(const char* path, foodrec_ratings** out);
/* Group-aligned synthetic users for an existing corpus. */
FOODREC_API foodrec_status foodrec_ratings_synthetic(const foodrec_corpus* corpus, size_t users,
                                                     uint64_t seed, double noise,
                                                     foodrec_ratings** out);
FOODREC_API foodrec_status foodrec_ratings_save(const foodrec_ratings* ratings,
                                                const char* path);
FOODREC_API size_t foodrec_ratings_count(const foodrec_ratings* ratings);
FOODREC_API const char* foodrec_ratings_user_id(const foodrec_ratings* ratings, size_t index);
FOODREC_API void foodrec_ratings_free(foodrec_ratings* ratings);

/* ---- configuration --------------------------------------------------- */

/*
 * String keys, all optional:
 *   measure          tfidf|equivalence|bcosine|jaccard|semrel|proposed,
 *                    comma list, or "all" (evaluate/sweep take the list)
 *   cutoff           default cut-off for every measure, in [0,1]
 *   cutoff.<measure> per-measure cut-off
 *   top_k            positive integer, 0 clears
 *   alpha, lambda    proposed-measure blend weight and neighbor decay
 *   bcosine_variant  product|standard
 *   boost_cap        >= 1
 *   heuristics       true|false
 *   split            train fraction in (0,1)
 *   seed             unsigned integer
 *   stratified       true|false
 *   idf_scope        full|train
 *   idf_log          e|10
 *   stopwords        path to a stop-word file ("" restores the bundled list)
 */
FOODREC_API foodrec_status foodrec_config_create(foodrec_config** out);
FOODREC_API foodrec_status foodrec_config_set(foodrec_config* cfg, const char* key,
                                              const char* value);
/* Current value of key, caller frees. */
FOODREC_API foodrec_status foodrec_config_get(const foodrec_config* cfg, const char* key,
                                              char** value);
FOODREC_API void foodrec_config_free(foodrec_config* cfg);

/* ---- recommendation -------------------------------------------------- */

/*
 * Ranks candidates for one user and/or a free-text query with the first
 * configured measure.
 *  - user_id set: profile from the user's relevant items in the training
 *    split; candidates are the test-split items.
 *  - query only: profile from the query text; every item is a candidate.
 *  - both: user profile, query terms added to the heuristic triggers.
 * onto may be NULL for tfidf; rules NULL disables heuristics; ratings is
 * required when user_id is set.
 */
FOODREC_API foodrec_status foodrec_recommend(const foodrec_corpus* corpus,
                                             const foodrec_ontology* onto,
                                             const foodrec_rules* rules,
                                             const foodrec_ratings* ratings,
                                             const foodrec_config* cfg, const char* user_id,
                                             const char* query, foodrec_recommendations** out);
FOODREC_API size_t foodrec_recommendations_size(const foodrec_recommendations* recs);
FOODREC_API foodrec_status foodrec_recommendations_get(const foodrec_recommendations* recs,
                                                       size_t index, const char** item_id,
                                                       double* score);
/* format: "jsonl" (one {"item_id","score","measure"} object per line) or
 * "table". */
FOODREC_API foodrec_status foodrec_recommendations_format(const foodrec_recommendations* recs,
                                                          const char* format, char** out);
FOODREC_API void foodrec_recommendations_free(foodrec_recommendations* recs);

/* ---- evaluation ------------------------------------------------------ */

FOODREC_API foodrec_status foodrec_evaluate(const foodrec_corpus* corpus,
                                            const foodrec_ontology* onto,
                                            const foodrec_rules* rules,
                                            const foodrec_ratings* ratings,
                                            const foodrec_config* cfg, foodrec_report** out);
FOODREC_API foodrec_status foodrec_sweep(const foodrec_corpus* corpus,
                                         const foodrec_ontology* onto,
                                         const foodrec_rules* rules,
                                         const foodrec_ratings* ratings,
                                         const foodrec_config* cfg, const double* grid,
                                         size_t grid_size, foodrec_report** out);
/* Rows including the per-measure average rows. */
FOODREC_API size_t foodrec_report_size(const foodrec_report* report);
FOODREC_API size_t foodrec_report_skipped_count(const foodrec_report* report);
/* metrics: accuracy, precision, recall, specificity, f_measure; NaN marks an
 * undefined value. */
FOODREC_API foodrec_status foodrec_report_row(const foodrec_report* report, size_t index,
                                              const char** user, const char** measure,
                                              double* cutoff, double metrics[5],
                                              int* is_average);
FOODREC_API foodrec_status foodrec_report_save(const foodrec_report* report, const char* path,
                                               const char* format);
/* Rendered report ("csv" or "json"); caller frees. */
FOODREC_API foodrec_status foodrec_report_format(const foodrec_report* report,
                                                 const char* format, char** out);
FOODREC_API void foodrec_report_free(foodrec_report* report);

#ifdef __cplusplus
}
#endif

#endif /* FOODREC_FOODREC_H */
