/* C interface of the polybasis library. Generated; do not edit. */

#ifndef POLYBASIS_H
#define POLYBASIS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Kernel kinds accepted by `pb_kernel_eval` and `pb_kernel_scan`.
 */
typedef enum PbKernelKind {
  /**
   * Standing kernel, regular at the origin.
   */
  PbKernelKind_Regular = 0,
  /**
   * Kernel converging toward the origin.
   */
  PbKernelKind_Incoming = 1,
  /**
   * Kernel diverging from the origin.
   */
  PbKernelKind_Outgoing = 2,
} PbKernelKind;

/**
 * Result of every fallible call in this ABI.
 */
typedef enum PbStatus {
  /**
   * Success.
   */
  PbStatus_Ok = 0,
  /**
   * An argument lies outside the function's domain.
   */
  PbStatus_Domain = 1,
  /**
   * Arguments are individually valid but mutually inconsistent.
   */
  PbStatus_Contract = 2,
  /**
   * A size or order cap was exceeded.
   */
  PbStatus_CapExceeded = 3,
  /**
   * An iteration failed to converge.
   */
  PbStatus_Numerical = 4,
  /**
   * A required pointer was null.
   */
  PbStatus_NullArgument = 5,
  /**
   * An internal panic was caught at the boundary.
   */
  PbStatus_Panic = 6,
  /**
   * Any other error.
   */
  PbStatus_Other = 7,
} PbStatus;

/**
 * Opaque truncated expansion {f_njmλ}.
 */
typedef struct PbCoefficients PbCoefficients;

/**
 * Opaque Gauss quadrature rule for the ∫dk k measure.
 */
typedef struct PbRule PbRule;

/**
 * Opaque spectrum: a set of per-(j, m, λ) sample vectors on a rule's nodes.
 */
typedef struct PbSpectrum PbSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the library version as a static NUL-terminated string.
 */
const char *pb_version(void);

/**
 * Evaluates the multipolar radial coefficient c_nj(k) at scale k0.
 *
 * # Safety
 * `out` must be a valid pointer to a double.
 */
enum PbStatus pb_multipolar_coefficient(uint32_t n, uint32_t j, double k, double k0, double *out);

/**
 * Evaluates the plane-wave expansion coefficient of |n j m λ⟩ at the wave
 * vector (k, θ, φ). `lambda` must be +1 or -1.
 *
 * # Safety
 * `out_re` and `out_im` must be valid pointers to doubles.
 */
enum PbStatus pb_planewave_coefficient(uint32_t n,
                                       uint32_t j,
                                       int32_t m,
                                       int32_t lambda,
                                       double k,
                                       double theta,
                                       double phi,
                                       double k0,
                                       double *out_re,
                                       double *out_im);

/**
 * Builds a quadrature rule of the given order for scale k0 and writes the
 * new handle to `out`. Release with `pb_rule_free`.
 *
 * # Safety
 * `out` must be a valid pointer to a `PbRule*`.
 */
enum PbStatus pb_rule_new(uintptr_t order, double k0, struct PbRule **out);

/**
 * Releases a rule handle. Null is a no-op; the handle must not be used
 * afterwards.
 *
 * # Safety
 * `rule` must be null or a pointer obtained from `pb_rule_new` that has not
 * been freed yet.
 */
void pb_rule_free(struct PbRule *rule);

/**
 * Writes the rule's order (its node count).
 *
 * # Safety
 * `rule` must be a live handle; `out` must be a valid pointer.
 */
enum PbStatus pb_rule_order(const struct PbRule *rule, uintptr_t *out);

/**
 * Copies the rule's nodes (wavenumbers, ascending) into `out`, which must
 * hold `len` doubles; `len` must equal the rule's order.
 *
 * # Safety
 * `rule` must be a live handle; `out` must point to `len` writable doubles.
 */
enum PbStatus pb_rule_nodes(const struct PbRule *rule, double *out, uintptr_t len);

/**
 * Copies the rule's weights (for the ∫dk k measure) into `out`, which must
 * hold `len` doubles; `len` must equal the rule's order.
 *
 * # Safety
 * `rule` must be a live handle; `out` must point to `len` writable doubles.
 */
enum PbStatus pb_rule_weights(const struct PbRule *rule, double *out, uintptr_t len);

/**
 * Creates an empty spectrum and writes the new handle to `out`. Release
 * with `pb_spectrum_free`.
 *
 * # Safety
 * `out` must be a valid pointer to a `PbSpectrum*`.
 */
enum PbStatus pb_spectrum_new(struct PbSpectrum **out);

/**
 * Releases a spectrum handle. Null is a no-op.
 *
 * # Safety
 * `spectrum` must be null or a pointer obtained from `pb_spectrum_new` that
 * has not been freed yet.
 */
void pb_spectrum_free(struct PbSpectrum *spectrum);

/**
 * Appends one (j, m, λ) channel sampled on a rule's nodes: `len` values
 * with real parts `re[i]` and imaginary parts `im[i]`. A channel with the
 * same labels must not already be present if the spectrum is later fed to a
 * functional.
 *
 * # Safety
 * `spectrum` must be a live handle; `re` and `im` must point to `len`
 * readable doubles.
 */
enum PbStatus pb_spectrum_add_channel(struct PbSpectrum *spectrum,
                                      uint32_t j,
                                      int32_t m,
                                      int32_t lambda,
                                      const double *re,
                                      const double *im,
                                      uintptr_t len);

/**
 * Appends the spectrum of the basis vector |n j m λ⟩ sampled on the rule's
 * nodes at scale k0.
 *
 * # Safety
 * `spectrum` and `rule` must be live handles.
 */
enum PbStatus pb_spectrum_add_basis_state(struct PbSpectrum *spectrum,
                                          uint32_t n,
                                          uint32_t j,
                                          int32_t m,
                                          int32_t lambda,
                                          const struct PbRule *rule,
                                          double k0);

/**
 * Writes the photon number ⟨f|f⟩ of the spectrum under the rule.
 *
 * # Safety
 * `spectrum` and `rule` must be live handles; `out` must be valid.
 */
enum PbStatus pb_photon_number(const struct PbSpectrum *spectrum,
                               const struct PbRule *rule,
                               double *out);

/**
 * Writes the field energy in joules for the spectrum at scale k0.
 *
 * # Safety
 * `spectrum` and `rule` must be live handles; `out` must be valid.
 */
enum PbStatus pb_energy(const struct PbSpectrum *spectrum,
                        const struct PbRule *rule,
                        double k0,
                        double *out);

/**
 * Writes the scalar product ⟨f|g⟩ (antilinear in `f`) under the rule.
 *
 * # Safety
 * `f`, `g`, and `rule` must be live handles; `out_re`/`out_im` must be
 * valid.
 */
enum PbStatus pb_inner_product(const struct PbSpectrum *f,
                               const struct PbSpectrum *g,
                               const struct PbRule *rule,
                               double *out_re,
                               double *out_im);

/**
 * Expands the spectrum in the basis up to n_max at scale k0 and writes the
 * new coefficient handle to `out`. The rule must have been built for the
 * same k0. Release with `pb_coefficients_free`.
 *
 * # Safety
 * `spectrum` and `rule` must be live handles; `out` must be a valid pointer
 * to a `PbCoefficients*`.
 */
enum PbStatus pb_project(const struct PbSpectrum *spectrum,
                         uint32_t n_max,
                         const struct PbRule *rule,
                         double k0,
                         struct PbCoefficients **out);

/**
 * Releases a coefficient handle. Null is a no-op.
 *
 * # Safety
 * `coeffs` must be null or a pointer obtained from `pb_project` that has
 * not been freed yet.
 */
void pb_coefficients_free(struct PbCoefficients *coeffs);

/**
 * Writes the number of stored coefficients.
 *
 * # Safety
 * `coeffs` must be a live handle; `out` must be valid.
 */
enum PbStatus pb_coefficients_len(const struct PbCoefficients *coeffs, uintptr_t *out);

/**
 * Writes the coefficient at (n, j, m, λ); an admissible index that was not
 * populated reads as zero.
 *
 * # Safety
 * `coeffs` must be a live handle; `out_re`/`out_im` must be valid.
 */
enum PbStatus pb_coefficients_get(const struct PbCoefficients *coeffs,
                                  uint32_t n,
                                  uint32_t j,
                                  int32_t m,
                                  int32_t lambda,
                                  double *out_re,
                                  double *out_im);

/**
 * Writes the truncation residual ⟨f|f⟩ − Σ|f_njmλ|²: `out_raw` keeps the
 * (possibly tiny negative) difference, `out_clamped` floors it at zero.
 *
 * # Safety
 * `spectrum`, `coeffs`, and `rule` must be live handles; `out_raw` and
 * `out_clamped` must be valid.
 */
enum PbStatus pb_residual(const struct PbSpectrum *spectrum,
                          const struct PbCoefficients *coeffs,
                          const struct PbRule *rule,
                          double *out_raw,
                          double *out_clamped);

/**
 * Evaluates the (n, j) kernel of the given kind in partial wave l at radius
 * r and time ct (both in meters; the scale is fixed at k0 = 1). `kind` is
 * one of the `PbKernelKind` values.
 *
 * # Safety
 * `out_re` and `out_im` must be valid pointers to doubles.
 */
enum PbStatus pb_kernel_eval(uint32_t n,
                             uint32_t j,
                             uint32_t l,
                             int32_t kind,
                             double r,
                             double ct,
                             double *out_re,
                             double *out_im);

/**
 * Evaluates the kernel on an ascending ct grid of `len` points, writing
 * real and imaginary parts to `out_re` and `out_im`.
 *
 * # Safety
 * `ct` must point to `len` readable doubles; `out_re` and `out_im` must
 * point to `len` writable doubles.
 */
enum PbStatus pb_kernel_scan(uint32_t n,
                             uint32_t j,
                             uint32_t l,
                             int32_t kind,
                             double r,
                             const double *ct,
                             uintptr_t len,
                             double *out_re,
                             double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYBASIS_H */
