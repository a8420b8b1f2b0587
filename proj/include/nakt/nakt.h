#ifndef NAKT_H
#define NAKT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes shared by every entry point. They double as CLI exit codes
 * (EINTERNAL maps to 2 like EVERIFY: both mean the tool, not the input, is
 * at fault). */
enum {
    NAKT_OK = 0,
    NAKT_EINVAL = 1,   /* malformed or invalid input */
    NAKT_EVERIFY = 2,  /* a certificate failed verification */
    NAKT_EINTERNAL = 3 /* unexpected internal failure */
};

/* Opaque result handle. Every solver call returns one (never NULL); inspect
 * the status, read the JSON or the error message, then free it. */
typedef struct nakt_result nakt_result;

const char* nakt_version(void);

/* Kantorovich ultra-norm with certificate; the certificate is re-verified
 * before returning (NAKT_EVERIFY if that self-check fails). */
nakt_result* nakt_norm(const char* instance_json);

/* Brute-force oracle bound with combination budget M. */
nakt_result* nakt_oracle(const char* instance_json, int budget);

/* Classical Kantorovich norm over a real instance; democratic != 0 solves the
 * transshipment formulation instead of the bipartite one. */
nakt_result* nakt_classical(const char* instance_json, int democratic);

/* Graev ultra-norm of an integer vector, plus the field-norm comparison. */
nakt_result* nakt_graev(const char* instance_json);

/* Re-verifies an externally supplied certificate against an instance. */
nakt_result* nakt_certify(const char* instance_json, const char* certificate_json);

/* Deterministic random instance (valid ultra-metric by construction). */
nakt_result* nakt_generate(int points, int scales, uint64_t seed,
                           const char* field_kind);

/* Reproduces the complex plane example: support-restricted infimum, full
 * norm, and the Fermat point of {0, 1, i}. */
nakt_result* nakt_appendix(double tol);

int nakt_result_status(const nakt_result* r);
/* JSON payload (UTF-8, NUL-terminated); empty string when there is none.
 * Owned by the result handle. */
const char* nakt_result_json(const nakt_result* r);
/* Human-readable error; empty string on success. Owned by the handle. */
const char* nakt_result_error(const nakt_result* r);
void nakt_result_free(nakt_result* r);

#ifdef __cplusplus
}
#endif

#endif /* NAKT_H */
