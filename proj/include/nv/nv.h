#ifndef NV_NV_H
#define NV_NV_H

/*
 * C interface to the library. Objects are opaque handles released with the
 * matching *_free function. Every call returns an nv_status; on failure the
 * message is available from nv_last_error() until the next call on the same
 * thread. Strings returned through char** are owned by the caller and must
 * be released with nv_string_free.
 */

#include <stddef.h>

#if defined(_WIN32)
#define NV_API __declspec(dllexport)
#else
#define NV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the library's error codes. */
typedef enum {
  NV_OK = 0,
  NV_RECT_NOT_IN_PATTERN = 1,
  NV_PREFIX_TOO_SHORT = 2,
  NV_STRIP_NOT_FOUND = 3,
  NV_RECT_NOT_IN_RANGE = 4,
  NV_NOT_REALIZABLE = 5,
  NV_BUDGET_EXCEEDED = 6,
  NV_MALFORMED_WORD = 7,
  NV_PARSE_ERROR = 8,
  NV_INVALID_ELEMENT = 9,
  NV_DUPLICATE_SYMBOL = 10,
  NV_UNKNOWN_SYMBOL = 11,
  NV_INDEX_OUT_OF_RANGE = 12,
  NV_RESOURCE_BUDGET_EXCEEDED = 13,
  NV_NOT_WITHIN_RADIUS = 14,
  NV_PRECONDITION_VIOLATED = 15,
  NV_ESSENTIALITY_LOST = 16,
  NV_NO_ESSENTIAL_ORIGIN = 17,
  NV_DECOMPOSITION_UNAVAILABLE = 18,
  NV_NO_IDENTITY_HALF = 19,
  NV_INCOMPLETE_TABLE = 20,
  NV_INVALID_ARGUMENT = 21,
  NV_INTERNAL = 100
} nv_status;

typedef struct nv_table nv_table;
typedef struct nv_element nv_element;
typedef struct nv_ball nv_ball;

NV_API const char* nv_status_name(int status);
/* 1 for the errors that mean a search or size budget ran out. */
NV_API int nv_status_is_budget(int status);
NV_API const char* nv_last_error(void);
NV_API void nv_string_free(char* s);

/* Generator tables. */
NV_API nv_status nv_table_builtin(nv_table** out);
NV_API nv_status nv_table_load(const char* path, nv_table** out);
NV_API nv_status nv_table_parse(const char* text, nv_table** out);
NV_API void nv_table_free(nv_table* t);
NV_API nv_status nv_table_hash(const nv_table* t, char** out);
/* One line per generator: symbol, provenance. */
NV_API nv_status nv_table_list(const nv_table* t, char** out);
/* Element text of a symbol, including family symbols such as A_3. */
NV_API nv_status nv_table_show(const nv_table* t, const char* symbol, char** out);
/* Symbols of the generating set missing from t, one per line. */
NV_API nv_status nv_table_missing(const nv_table* t, char** out);

/* Elements. */
NV_API nv_status nv_element_parse(const char* text, nv_element** out);
NV_API nv_status nv_element_from_word(const nv_table* t, const char* word, nv_element** out);
NV_API void nv_element_free(nv_element* g);
NV_API nv_status nv_element_format(const nv_element* g, char** out);
NV_API nv_status nv_multiply(const nv_element* f, const nv_element* g, nv_element** out);
NV_API nv_status nv_inverse(const nv_element* g, nv_element** out);
NV_API nv_status nv_normal_form(const nv_element* g, nv_element** out);
NV_API nv_status nv_equals(const nv_element* f, const nv_element* g, int* out);
/* Image of the point with prefixes u1, u2; written as "v1,v2". */
NV_API nv_status nv_evaluate(const nv_element* g, const char* u1, const char* u2, char** out);

/* Word metric. */
NV_API nv_status nv_ball_build(const nv_table* t, size_t radius, size_t node_cap, nv_ball** out);
NV_API void nv_ball_free(nv_ball* b);
NV_API size_t nv_ball_size(const nv_ball* b);
/* CSV with header key,distance,witness; the key is the normal form with
 * rows joined by ';'. */
NV_API nv_status nv_ball_csv(const nv_ball* b, char** out);
/* Writes lower, upper (SIZE_MAX when unknown) and exact. word may be NULL;
 * otherwise it must represent g and bounds the length from above. */
NV_API nv_status nv_length(const nv_element* g, const nv_ball* b, const nv_table* t, const char* word, size_t* lower,
                           size_t* upper, int* exact, char** witness);

/* Path certificate. ball may be NULL when word is given. cap <= 0 means no
 * exponent cap. valid receives 1 when every check passed. */
NV_API nv_status nv_divpath(const nv_element* g, const nv_table* t, const nv_ball* b, const char* word, long long M,
                            long long Q, long long cap, unsigned long long seed, char** certificate, int* valid);
/* CSV row x,phi_lower,phi_upper,exact,witness_g1,witness_g2,method. */
NV_API nv_status nv_divmeasure(const nv_table* t, size_t x, long long delta_num, long long delta_den,
                               size_t node_cap, char** row);

#ifdef __cplusplus
}
#endif

#endif
