/* C interface to the torcomb library.
 *
 * Inputs are JSON specs (explicit complexes or family presentations); results are
 * JSON strings owned by the caller and released with torcomb_string_free. Every
 * function returns a status code; on failure torcomb_last_error() describes the
 * problem for the calling thread. Vertex labels are 1-based throughout. */
#ifndef TORCOMB_H
#define TORCOMB_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(TORCOMB_BUILDING_LIBRARY)
#define TORCOMB_API __attribute__((visibility("default")))
#else
#define TORCOMB_API
#endif

typedef enum torcomb_status {
  TORCOMB_OK = 0,
  TORCOMB_ERR_INPUT = 2,       /* malformed spec or violated invariant */
  TORCOMB_ERR_DESK_SCALE = 3,  /* refused: beyond the configured size caps */
  TORCOMB_ERR_CONSISTENCY = 4, /* an internal cross-check failed */
  TORCOMB_ERR_INTERNAL = 5     /* unexpected failure (e.g. out of memory) */
} torcomb_status;

typedef struct torcomb_input torcomb_input;

typedef struct torcomb_options {
  int threads;                /* <= 0: TORCOMB_THREADS or hardware concurrency */
  long long node_cap;         /* s_real search node cap per dimension, 0 = none */
  int sreal_max_vertices;     /* refuse s_real above this m */
  int betti_max_vertices;     /* refuse Koszul Betti numbers above this m */
} torcomb_options;

TORCOMB_API const char* torcomb_version(void);
TORCOMB_API const char* torcomb_last_error(void);
TORCOMB_API void torcomb_options_default(torcomb_options* options);

TORCOMB_API torcomb_status torcomb_input_parse(const char* spec_json, torcomb_input** out);
TORCOMB_API void torcomb_input_free(torcomb_input* input);

TORCOMB_API torcomb_status torcomb_describe(const torcomb_input* input, char** out_json);
TORCOMB_API torcomb_status torcomb_buchstaber(const torcomb_input* input, const torcomb_options* options,
                                              char** out_json);
TORCOMB_API torcomb_status torcomb_betti(const torcomb_input* input, const torcomb_options* options,
                                         char** out_json);
TORCOMB_API torcomb_status torcomb_cohomology(const torcomb_input* input, char** out_json);
/* position 0 reports every admissible flip. */
TORCOMB_API torcomb_status torcomb_flip(const torcomb_input* input, int position, char** out_json);
/* target: "complex", "polygon" or "table". */
TORCOMB_API torcomb_status torcomb_convert(const torcomb_input* input, const char* target, char** out_json);

TORCOMB_API void torcomb_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* TORCOMB_H */
