/* fvs: deterministic sampling designs and sparse Fourier recovery on F_p^r.
 *
 * Every object is an opaque handle created and destroyed through this API.
 * Calls return FVS_OK on success; on failure fvs_last_error() holds a
 * human-readable detail message for the current thread.
 */

#ifndef FVS_H
#define FVS_H

#include <stdint.h>

#ifdef _WIN32
#  ifdef FVS_BUILD
#    define FVS_API __declspec(dllexport)
#  else
#    define FVS_API __declspec(dllimport)
#  endif
#else
#  define FVS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fvs_status {
  FVS_OK = 0,
  FVS_ERR_INVALID_ARGUMENT = 1,
  FVS_ERR_SINGULAR_MATRIX = 2,
  FVS_ERR_TOO_MANY_POINTS = 3,
  FVS_ERR_MISSING_SAMPLES = 4,
  FVS_ERR_EVEN_LENGTH = 5,
  FVS_ERR_DIMENSION_MISMATCH = 6,
  FVS_ERR_PARSE = 7,
  FVS_ERR_IO = 8,
  FVS_ERR_NOMEM = 9,
  FVS_ERR_INTERNAL = 10
} fvs_status;

typedef enum fvs_variant { FVS_GAMMA1 = 1, FVS_GAMMA2 = 2 } fvs_variant;

typedef struct fvs_design fvs_design;
typedef struct fvs_spectrum fvs_spectrum;
typedef struct fvs_samples fvs_samples;

FVS_API const char* fvs_status_str(fvs_status status);
FVS_API const char* fvs_last_error(void);

/* --- sampling designs ---------------------------------------------------- */

typedef struct fvs_design_info {
  uint32_t p, r, t; /* prime, dimension, sparsity */
  uint32_t h, m, n; /* subspace dimension, generating order, family size */
  uint64_t q;       /* p^h */
  uint32_t exponent_count; /* |K| */
} fvs_design_info;

FVS_API fvs_status fvs_design_build(uint32_t p, uint32_t r, uint32_t t,
                                    fvs_design** out);
FVS_API fvs_status fvs_design_load(const char* path, fvs_design** out);
FVS_API fvs_status fvs_design_save(const fvs_design* d, const char* path);
FVS_API fvs_status fvs_design_get_info(const fvs_design* d, fvs_design_info* out);

/* Number of distinct points in the requested sampling set. */
FVS_API fvs_status fvs_design_point_count(const fvs_design* d, fvs_variant variant,
                                          uint64_t* out);

/* Runs the structural checks; each flag (may be NULL) is set to 1 on pass.
 * Returns FVS_OK even when checks fail -- inspect the flags. */
FVS_API fvs_status fvs_design_verify(const fvs_design* d, int* m_generating,
                                     int* size_bounds, int* coherence);

FVS_API void fvs_design_free(fvs_design* d);

/* --- spectra -------------------------------------------------------------- */

FVS_API fvs_status fvs_spectrum_create(uint32_t p, uint32_t r, fvs_spectrum** out);
FVS_API fvs_status fvs_spectrum_set(fvs_spectrum* s, const uint32_t* label,
                                    double re, double im);

/* t random terms with distinct labels; deterministic in the seed. */
FVS_API fvs_status fvs_spectrum_random(uint32_t p, uint32_t r, uint32_t t,
                                       uint64_t seed, fvs_spectrum** out);

/* Adds a random spectrum of exact l1 mass `l1` on labels outside the current
 * support of `s`. When noise_out is non-NULL it receives the added part. */
FVS_API fvs_status fvs_spectrum_add_noise(fvs_spectrum* s, double l1, uint64_t seed,
                                          fvs_spectrum** noise_out);

FVS_API fvs_status fvs_spectrum_dims(const fvs_spectrum* s, uint32_t* p, uint32_t* r);
FVS_API fvs_status fvs_spectrum_term_count(const fvs_spectrum* s, uint64_t* out);

/* Terms are ordered lexicographically by label; label must hold r entries. */
FVS_API fvs_status fvs_spectrum_term(const fvs_spectrum* s, uint64_t index,
                                     uint32_t* label, double* re, double* im);

FVS_API fvs_status fvs_spectrum_l1_norm(const fvs_spectrum* s, double* out);
FVS_API fvs_status fvs_spectrum_l1_distance(const fvs_spectrum* a,
                                            const fvs_spectrum* b, double* out);

/* Spectrum files carry no header, so the group must be supplied. */
FVS_API fvs_status fvs_spectrum_load(const char* path, uint32_t p, uint32_t r,
                                     fvs_spectrum** out);
FVS_API fvs_status fvs_spectrum_save(const fvs_spectrum* s, const char* path);
FVS_API void fvs_spectrum_free(fvs_spectrum* s);

/* --- sample tables -------------------------------------------------------- */

FVS_API fvs_status fvs_samples_synthesize(const fvs_design* d, const fvs_spectrum* s,
                                          fvs_variant variant, fvs_samples** out);

/* Evaluates the signal on all p^r points (oracle-scale groups only). */
FVS_API fvs_status fvs_samples_full(const fvs_spectrum* s, fvs_samples** out);

FVS_API fvs_status fvs_samples_load(const char* path, fvs_samples** out);
FVS_API fvs_status fvs_samples_save(const fvs_samples* t, const char* path);
FVS_API fvs_status fvs_samples_count(const fvs_samples* t, uint64_t* out);
FVS_API fvs_status fvs_samples_dims(const fvs_samples* t, uint32_t* p, uint32_t* r);
FVS_API void fvs_samples_free(fvs_samples* t);

/* --- recovery ------------------------------------------------------------- */

/* Runs the reconstruction matching `variant` on the given samples. When
 * report_path is non-NULL a diagnostic report file is written there. */
FVS_API fvs_status fvs_reconstruct(const fvs_design* d, const fvs_samples* t,
                                   fvs_variant variant, const char* report_path,
                                   fvs_spectrum** out);

/* Exact direct transform of a complete table over F_p^r. */
FVS_API fvs_status fvs_full_dft(const fvs_samples* t, fvs_spectrum** out);

#ifdef __cplusplus
}
#endif

#endif /* FVS_H */
