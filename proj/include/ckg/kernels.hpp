#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace ckg::kernels {

using cplx = std::complex<double>;

/// Hot inner loops of the solver, as a function-pointer table so a SIMD
/// build can be swapped in at runtime. Every entry has a portable scalar
/// reference implementation; vector builds must agree with it up to
/// rounding (FMA contraction changes the last bits of reductions).
///
/// Complex arrays are std::complex<double>, i.e. interleaved re/im pairs;
/// vector kernels reinterpret them as double arrays of length 2n.
/// Real-valued per-mode tables (cos_t, sinc_t, mu, scale_t) have one entry
/// per complex element.
struct Ops {
    /// out[i] = psi0[i]*cos_t[i] + (phi0[i] + half_tau*f0[i])*sinc_t[i]
    void (*psi_first)(cplx* out, const cplx* psi0, const cplx* phi0,
                      const cplx* f0, const double* cos_t, const double* sinc_t,
                      double half_tau, std::size_t n);

    /// out[i] = -prev[i] + 2*curr[i]*cos_t[i] + tau*f[i]*sinc_t[i]
    void (*psi_recurrence)(cplx* out, const cplx* prev, const cplx* curr,
                           const cplx* f, const double* cos_t, const double* sinc_t,
                           double tau, std::size_t n);

    /// q[i] = exp_t[i]*q[i] + q_plus[i]*g_new[i] + q_minus_exp[i]*g_old[i]
    /// (all coefficient tables complex)
    void (*q_update)(cplx* q, const cplx* g_new, const cplx* g_old,
                     const cplx* exp_t, const cplx* q_plus, const cplx* q_minus_exp,
                     std::size_t n);

    /// out[i] = scale_t[i]*(next[i] - prev[i])
    void (*mode_scaled_diff)(cplx* out, const cplx* next, const cplx* prev,
                             const double* scale_t, std::size_t n);

    /// out[i] = (i*mu[i])*in[i]
    void (*mode_derivative)(cplx* out, const cplx* in, const double* mu,
                            std::size_t n);

    /// acc[j] += v[j]*v[j]
    void (*accumulate_square)(double* acc, const double* v, std::size_t n);

    /// out[j] = 2*(ssq[j] + q[j])*psi[j]
    void (*nonlinear_f)(double* out, const double* ssq, const double* q,
                        const double* psi, std::size_t n);

    /// out[j] = c*v[j]
    void (*scale)(double* out, const double* v, double c, std::size_t n);

    /// max_j |v[j]|. Assumes finite input; NaNs may be dropped.
    double (*max_abs)(const double* v, std::size_t n);

    /// max_j |x[j]-y[j]|. Assumes finite input.
    double (*max_abs_diff)(const double* x, const double* y, std::size_t n);

    /// sum_j v[j]^2
    double (*sum_sq)(const double* v, std::size_t n);

    /// true iff |v[j]| <= limit for all j. NaN-safe: any NaN returns false.
    bool (*within_limit)(const double* v, double limit, std::size_t n);
};

/// Active table. Defaults to the best backend the CPU supports; the
/// CKG_KERNEL_BACKEND environment variable ("scalar" or "avx2") overrides.
const Ops& ops();

/// The portable reference table, independent of dispatch state.
const Ops& scalar_ops();

/// Select a backend by name ("scalar" or "avx2").
/// Throws ParamError if the name is unknown or the CPU lacks support.
void force_backend(const std::string& name);

/// Name of the table ops() currently returns.
std::string backend_name();

/// true if this build and CPU can run the AVX2 table.
bool avx2_available();

} // namespace ckg::kernels
