/*
 * aqc — entanglement-arrangement coding simulator, C API.
 *
 * A classical bit is encoded as one of two edge-disjoint EPR-pairing
 * arrangements over positions 1..2N; z-basis measurement statistics recover
 * it. This header is the stable ABI of the shared library: opaque handles,
 * integer status codes, and UTF-8 strings allocated by the library.
 *
 * Conventions:
 *   - Every fallible call returns aqc_status; AQC_OK is 0.
 *   - On failure, aqc_last_error() returns a thread-local message describing
 *     the most recent error on the calling thread.
 *   - char** outputs are malloc'd by the library; release with
 *     aqc_string_free(). Handles are released with their _free function.
 *   - Channel specs: "noiseless" | "flip:<p>" | "intercept:<theta>"
 *     (p in [0,1]; theta in radians, [0,pi], measured from the z axis).
 *   - Decoder specs: "statistical" | "conclusive".
 */

#ifndef AQC_H
#define AQC_H

#include <stdint.h>

#ifdef _WIN32
#define AQC_API __declspec(dllexport)
#else
#define AQC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aqc_status {
    AQC_OK = 0,
    AQC_ERROR_INVALID_ARGUMENT = 1,
    AQC_ERROR_EMPTY_INPUT = 2,
    AQC_ERROR_ODD_LENGTH = 3,
    AQC_ERROR_LABEL_COUNT = 4,
    AQC_ERROR_SIZE_MISMATCH = 5,
    AQC_ERROR_OVERLAP = 6,
    AQC_ERROR_TOO_SMALL = 7,
    AQC_ERROR_TOO_LARGE = 8,
    AQC_ERROR_RETRY_EXHAUSTED = 9,
    AQC_ERROR_LENGTH_MISMATCH = 10,
    AQC_ERROR_CONFIG = 11,
    AQC_ERROR_IO = 12,
    AQC_ERROR_INTERNAL = 13
} aqc_status;

/* Two edge-disjoint perfect matchings (the shared sequence codes). */
typedef struct aqc_codebook aqc_codebook;

AQC_API const char* aqc_version(void);
AQC_API const char* aqc_status_name(aqc_status status);

/* Thread-local message for the last failing call on this thread. */
AQC_API const char* aqc_last_error(void);

AQC_API void aqc_string_free(char* text);
AQC_API void aqc_codebook_free(aqc_codebook* cb);

/* strategy: "cyclic" | "rejection". Deterministic in (n_pairs, seed,
 * strategy). */
AQC_API aqc_status aqc_codebook_generate(int n_pairs, uint64_t seed,
                                         const char* strategy,
                                         aqc_codebook** out);

/* Letter-sequence form: 2N whitespace/comma-separated labels, each label
 * occurring exactly twice ("A B B A" pairs positions 1-4 and 2-3). */
AQC_API aqc_status aqc_codebook_from_sequences(const char* s0_text,
                                               const char* s1_text,
                                               aqc_codebook** out);

/* JSON document: {"positions":"1-based","n_pairs":N,"s0":[[lo,hi],...],
 * "s1":[[lo,hi],...]}. */
AQC_API aqc_status aqc_codebook_from_json(const char* text,
                                          aqc_codebook** out);
AQC_API aqc_status aqc_codebook_to_json(const aqc_codebook* cb, char** out);

/* Letter rendering of one arrangement (bit 0 or 1), no trailing newline. */
AQC_API aqc_status aqc_codebook_letter_sequence(const aqc_codebook* cb,
                                                int bit, char** out);

/* Returns -1 on a null handle. */
AQC_API int aqc_codebook_n_pairs(const aqc_codebook* cb);

/* Cycle half-lengths of the union of the two matchings, sorted descending.
 * Writes at most `capacity` entries; *count receives the true number. */
AQC_API aqc_status aqc_codebook_cycles(const aqc_codebook* cb, int* out,
                                       int capacity, int* count);

/* One transmission: encode the bit, sample the channel, run both decoders.
 * The transcript is a single-line JSON record with fields {seed, bit,
 * channel, outcomes, statistical:{decision, counts},
 * conclusive:{decision, pairs_examined}}. */
AQC_API aqc_status aqc_transmit(const aqc_codebook* cb, int bit,
                                const char* channel, uint64_t seed,
                                char** transcript_json);

/* Runs a sweep described by a JSON config (see README) and returns the
 * report in the config's format ("csv" or "json"); format_override, when
 * non-NULL, takes precedence. */
AQC_API aqc_status aqc_experiment_run(const char* config_json,
                                      const char* format_override,
                                      char** report_text);

/* Revalidates a CSV report's closed_form column against recomputation. */
AQC_API aqc_status aqc_report_check_csv(const char* csv_text);

#ifdef __cplusplus
}
#endif

#endif /* AQC_H */
