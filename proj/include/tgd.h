#ifndef TGD_H
#define TGD_H

/* C interface to the rule-set analyzer. All functions returning tgd_status
 * use TGD_OK on success; on failure they leave outputs untouched and, when an
 * error sink is supplied, store a message the caller frees with
 * tgd_string_free. Returned strings are always owned by the caller. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tgd_program tgd_program;
typedef struct tgd_database tgd_database;
typedef struct tgd_query tgd_query;

typedef enum tgd_status {
    TGD_OK = 0,
    TGD_ERR_PARSE = 1,
    TGD_ERR_INVALID = 2,
    TGD_ERR_INTERNAL = 3
} tgd_status;

/* Verdict codes shared with the command line tool's exit codes. */
enum {
    TGD_VERDICT_MEMBER = 0,
    TGD_VERDICT_NON_MEMBER = 1,
    TGD_VERDICT_INCONCLUSIVE = 3
};

enum {
    TGD_ASK_ENTAILED = 0,
    TGD_ASK_NOT_ENTAILED = 1,
    TGD_ASK_UNKNOWN = 3
};

typedef struct tgd_limits {
    size_t max_pairs;        /* pair construction cap */
    size_t body_limit_mult;  /* pair body size cap, per max rule body size */
    size_t chase_max_atoms;  /* chase atom cap */
} tgd_limits;

void tgd_limits_default(tgd_limits* out);

typedef struct tgd_gen_params {
    uint64_t seed;
    size_t max_rules;
    size_t max_body_atoms;
    size_t max_arity;
    size_t n_predicates;
    size_t n_variables;
    double existential_probability;
} tgd_gen_params;

void tgd_gen_params_default(tgd_gen_params* out);

const char* tgd_version(void);
void tgd_string_free(char* s);

tgd_status tgd_program_parse(const char* text, tgd_program** out, char** error);
void tgd_program_free(tgd_program* p);

tgd_status tgd_database_parse(const char* text, tgd_database** out, char** error);
void tgd_database_free(tgd_database* d);

tgd_status tgd_query_parse(const char* text, tgd_query** out, char** error);
void tgd_query_free(tgd_query* q);

/* class_name: "tg", "weakly-acyclic" (alias "wa"), "guarded", "sticky",
 * "shy", or "all". verdict_code reflects "tg" when class_name is "all". */
tgd_status tgd_classify(const tgd_program* p, const char* class_name,
                        const tgd_limits* limits, int* verdict_code,
                        char** json_out, char** error);

/* Pair construction report, including the worst-case bounds. */
tgd_status tgd_extend(const tgd_program* p, const tgd_limits* limits,
                      char** json_out, char** error);

/* Witness enumeration; max_witnesses of 0 means unlimited. */
tgd_status tgd_rtc_witnesses(const tgd_program* p, const tgd_limits* limits,
                             size_t max_witnesses, char** json_out, char** error);

tgd_status tgd_chase(const tgd_program* p, const tgd_database* d, size_t depth,
                     const tgd_limits* limits, char** json_out, char** error);

tgd_status tgd_ask(const tgd_program* p, const tgd_database* d, const tgd_query* q,
                   size_t depth, const tgd_limits* limits, int* ask_code,
                   char** json_out, char** error);

/* DOT rendering of the null dependency graph. */
tgd_status tgd_graph_dot(const tgd_program* p, char** dot_out, char** error);

tgd_status tgd_nullsets(const tgd_program* p, char** json_out, char** error);

/* shape_text uses the query syntax. Chases to n_big + extra_levels and tests
 * nulls created above n_big against nulls created at or below n_small. */
tgd_status tgd_probe(const tgd_program* p, const tgd_database* d,
                     const char* shape_text, size_t n_small, size_t n_big,
                     size_t extra_levels, const tgd_limits* limits,
                     uint64_t* violations, char** json_out, char** error);

/* Deterministic ruleset generation; the JSON carries the ruleset text under
 * "ruleset". */
tgd_status tgd_gen(const tgd_gen_params* params, char** json_out, char** error);

#ifdef __cplusplus
}
#endif

#endif
