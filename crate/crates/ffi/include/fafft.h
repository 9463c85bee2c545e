#ifndef FAFFT_H
#define FAFFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FafftMethod {
  FAFFT_METHOD_FAFFT = 0,
  FAFFT_METHOD_SCHOOLBOOK = 1,
  FAFFT_METHOD_KARATSUBA = 2,
} FafftMethod;

typedef enum FafftStatus {
  FAFFT_STATUS_OK = 0,
  FAFFT_STATUS_NULL_POINTER = 1,
  FAFFT_STATUS_INVALID_ARGUMENT = 2,
  FAFFT_STATUS_BUFFER_TOO_SMALL = 3,
  FAFFT_STATUS_ZERO_INVERSE = 4,
  FAFFT_STATUS_PARSE = 5,
  FAFFT_STATUS_IO = 6,
  FAFFT_STATUS_PANIC = 7,
} FafftStatus;

/**
 * Opaque straight-line program handle.
 */
typedef struct FafftCircuit FafftCircuit;

/**
 * Opaque field handle.
 */
typedef struct FafftField FafftField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a [`FafftStatus`] value.
 */
const char *fafft_status_message(int32_t status);

/**
 * Creates the field GF(2^(2^k)), 1 <= k <= 6.
 *
 * # Safety
 * `field_out` must be valid for writes.
 */
enum FafftStatus fafft_field_new(uint32_t k, struct FafftField **field_out);

/**
 * # Safety
 * `field` must be null or come from [`fafft_field_new`] and not be freed already.
 */
void fafft_field_free(struct FafftField *field);

/**
 * Extension degree of the field, or 0 for a null handle.
 *
 * # Safety
 * `field` must be null or a live handle.
 */
uint32_t fafft_field_degree(const struct FafftField *field);

/**
 * # Safety
 * `field` must be a live handle and `result` valid for writes.
 */
enum FafftStatus fafft_field_mul(const struct FafftField *field,
                                 uint64_t a,
                                 uint64_t b,
                                 uint64_t *result);

/**
 * # Safety
 * `field` must be a live handle and `result` valid for writes.
 */
enum FafftStatus fafft_field_inverse(const struct FafftField *field, uint64_t a, uint64_t *result);

/**
 * Squaring, the Frobenius map.
 *
 * # Safety
 * `field` must be a live handle and `result` valid for writes.
 */
enum FafftStatus fafft_field_frobenius(const struct FafftField *field,
                                       uint64_t a,
                                       uint64_t *result);

/**
 * Product of two polynomials. `method` is a [`FafftMethod`] value; the
 * field only matters for `FAFFT_METHOD_FAFFT`. `result_len` receives the
 * number of words of the product (0 for the zero polynomial).
 *
 * # Safety
 * Pointers must be valid for the given lengths; `result` for `result_cap` words.
 */
enum FafftStatus fafft_poly_mul(const struct FafftField *field,
                                uint32_t method,
                                const uint64_t *a,
                                size_t a_len,
                                const uint64_t *b,
                                size_t b_len,
                                uint64_t *result,
                                size_t result_cap,
                                size_t *result_len);

/**
 * Cross-section values of a polynomial of length at most `2^m`, in the
 * library's output order. `values_len` receives the number of values.
 *
 * # Safety
 * Pointers must be valid for the given lengths; `values` for `values_cap` entries.
 */
enum FafftStatus fafft_faft(const struct FafftField *field,
                            const uint64_t *poly,
                            size_t poly_len,
                            uint32_t m,
                            uint64_t *values,
                            size_t values_cap,
                            size_t *values_len);

/**
 * Generates a multiplier circuit for two `n`-bit operands, `n` a power of two up to 1024.
 *
 * # Safety
 * `circuit_out` must be valid for writes.
 */
enum FafftStatus fafft_circuit_generate(size_t n, bool cse, struct FafftCircuit **circuit_out);

/**
 * # Safety
 * `circuit` must be null or a handle not freed already.
 */
void fafft_circuit_free(struct FafftCircuit *circuit);

/**
 * Operand width, AND gates and XOR gates.
 *
 * # Safety
 * `circuit` must be a live handle; outputs valid for writes.
 */
enum FafftStatus fafft_circuit_counts(const struct FafftCircuit *circuit,
                                      size_t *n,
                                      size_t *and_count,
                                      size_t *xor_count);

/**
 * Evaluates the circuit on two operands of degree below `n`.
 *
 * # Safety
 * Pointers must be valid for the given lengths; `result` for `result_cap` words.
 */
enum FafftStatus fafft_circuit_eval(const struct FafftCircuit *circuit,
                                    const uint64_t *a,
                                    size_t a_len,
                                    const uint64_t *b,
                                    size_t b_len,
                                    uint64_t *result,
                                    size_t result_cap,
                                    size_t *result_len);

/**
 * Writes the circuit in text form.
 *
 * # Safety
 * `circuit` must be a live handle and `file` a NUL-terminated path.
 */
enum FafftStatus fafft_circuit_write(const struct FafftCircuit *circuit, const char *file);

/**
 * Reads a circuit in text form.
 *
 * # Safety
 * `file` must be a NUL-terminated path and `circuit_out` valid for writes.
 */
enum FafftStatus fafft_circuit_read(const char *file, struct FafftCircuit **circuit_out);

/**
 * Checks the circuit against schoolbook multiplication on edge-case and
 * `trials` random operand pairs, or exhaustively for small `n`.
 *
 * # Safety
 * `circuit` must be a live handle and `pass` valid for writes.
 */
enum FafftStatus fafft_circuit_verify(const struct FafftCircuit *circuit,
                                      uint64_t trials,
                                      uint64_t seed,
                                      bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FAFFT_H */
