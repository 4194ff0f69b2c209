// AVX2+FMA variants of the kernel table. Compiled with -mavx2 -mfma for
// this translation unit only; dispatch.cpp decides at runtime whether the
// CPU can execute it.

#include <cmath>
#include <immintrin.h>

#include "tables.hpp"

#if defined(CKG_HAVE_AVX2_BUILD)

namespace ckg::kernels {
namespace {

// [t0, t1] -> [t0, t0, t1, t1]: one real table entry per complex element.
inline __m256d expand2(const double* t) {
    return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(t)), 0x50);
}

// Element-wise complex product of interleaved re/im vectors.
inline __m256d cmul(__m256d x, __m256d y) {
    __m256d yr = _mm256_movedup_pd(y);
    __m256d yi = _mm256_permute_pd(y, 0xF);
    __m256d xs = _mm256_permute_pd(x, 0x5);
    return _mm256_fmaddsub_pd(x, yr, _mm256_mul_pd(xs, yi));
}

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

void psi_first_avx2(cplx* out, const cplx* psi0, const cplx* phi0,
                    const cplx* f0, const double* cos_t, const double* sinc_t,
                    double half_tau, std::size_t n) {
    const __m256d vht = _mm256_set1_pd(half_tau);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vp = _mm256_loadu_pd(dp(psi0) + 2 * i);
        __m256d vh = _mm256_loadu_pd(dp(phi0) + 2 * i);
        __m256d vf = _mm256_loadu_pd(dp(f0) + 2 * i);
        __m256d vc = expand2(cos_t + i);
        __m256d vs = expand2(sinc_t + i);
        __m256d t = _mm256_fmadd_pd(vht, vf, vh);
        __m256d r = _mm256_fmadd_pd(t, vs, _mm256_mul_pd(vp, vc));
        _mm256_storeu_pd(dp(out) + 2 * i, r);
    }
    for (; i < n; ++i)
        out[i] = psi0[i] * cos_t[i] + (phi0[i] + half_tau * f0[i]) * sinc_t[i];
}

void psi_recurrence_avx2(cplx* out, const cplx* prev, const cplx* curr,
                         const cplx* f, const double* cos_t, const double* sinc_t,
                         double tau, std::size_t n) {
    const __m256d vtau = _mm256_set1_pd(tau);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vprev = _mm256_loadu_pd(dp(prev) + 2 * i);
        __m256d vcurr = _mm256_loadu_pd(dp(curr) + 2 * i);
        __m256d vf = _mm256_loadu_pd(dp(f) + 2 * i);
        __m256d vc = expand2(cos_t + i);
        __m256d vs = _mm256_mul_pd(expand2(sinc_t + i), vtau);
        __m256d vcurr2 = _mm256_add_pd(vcurr, vcurr);
        __m256d r = _mm256_fmadd_pd(vf, vs, _mm256_fmsub_pd(vcurr2, vc, vprev));
        _mm256_storeu_pd(dp(out) + 2 * i, r);
    }
    for (; i < n; ++i)
        out[i] = -prev[i] + 2.0 * curr[i] * cos_t[i] + tau * f[i] * sinc_t[i];
}

void q_update_avx2(cplx* q, const cplx* g_new, const cplx* g_old,
                   const cplx* exp_t, const cplx* q_plus, const cplx* q_minus_exp,
                   std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vq = _mm256_loadu_pd(dp(q) + 2 * i);
        __m256d vgn = _mm256_loadu_pd(dp(g_new) + 2 * i);
        __m256d vgo = _mm256_loadu_pd(dp(g_old) + 2 * i);
        __m256d ve = _mm256_loadu_pd(dp(exp_t) + 2 * i);
        __m256d vqp = _mm256_loadu_pd(dp(q_plus) + 2 * i);
        __m256d vqm = _mm256_loadu_pd(dp(q_minus_exp) + 2 * i);
        __m256d r = _mm256_add_pd(cmul(ve, vq),
                                  _mm256_add_pd(cmul(vqp, vgn), cmul(vqm, vgo)));
        _mm256_storeu_pd(dp(q) + 2 * i, r);
    }
    for (; i < n; ++i)
        q[i] = exp_t[i] * q[i] + q_plus[i] * g_new[i] + q_minus_exp[i] * g_old[i];
}

void mode_scaled_diff_avx2(cplx* out, const cplx* next, const cplx* prev,
                           const double* scale_t, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vn = _mm256_loadu_pd(dp(next) + 2 * i);
        __m256d vp = _mm256_loadu_pd(dp(prev) + 2 * i);
        __m256d vs = expand2(scale_t + i);
        _mm256_storeu_pd(dp(out) + 2 * i, _mm256_mul_pd(vs, _mm256_sub_pd(vn, vp)));
    }
    for (; i < n; ++i)
        out[i] = scale_t[i] * (next[i] - prev[i]);
}

void mode_derivative_avx2(cplx* out, const cplx* in, const double* mu,
                          std::size_t n) {
    const __m256d signs = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vin = _mm256_loadu_pd(dp(in) + 2 * i);
        __m256d vmu = _mm256_xor_pd(expand2(mu + i), signs);
        __m256d r = _mm256_mul_pd(_mm256_permute_pd(vin, 0x5), vmu);
        _mm256_storeu_pd(dp(out) + 2 * i, r);
    }
    for (; i < n; ++i)
        out[i] = cplx(-mu[i] * in[i].imag(), mu[i] * in[i].real());
}

void accumulate_square_avx2(double* acc, const double* v, std::size_t n) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d vv = _mm256_loadu_pd(v + j);
        __m256d va = _mm256_loadu_pd(acc + j);
        _mm256_storeu_pd(acc + j, _mm256_fmadd_pd(vv, vv, va));
    }
    for (; j < n; ++j)
        acc[j] += v[j] * v[j];
}

void nonlinear_f_avx2(double* out, const double* ssq, const double* q,
                      const double* psi, std::size_t n) {
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d t = _mm256_add_pd(_mm256_loadu_pd(ssq + j), _mm256_loadu_pd(q + j));
        t = _mm256_mul_pd(_mm256_mul_pd(two, t), _mm256_loadu_pd(psi + j));
        _mm256_storeu_pd(out + j, t);
    }
    for (; j < n; ++j)
        out[j] = 2.0 * (ssq[j] + q[j]) * psi[j];
}

void scale_avx2(double* out, const double* v, double c, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4)
        _mm256_storeu_pd(out + j, _mm256_mul_pd(vc, _mm256_loadu_pd(v + j)));
    for (; j < n; ++j)
        out[j] = c * v[j];
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
    return _mm_cvtsd_f64(s);
}

const __m256d ABS_MASK = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

double max_abs_avx2(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4)
        acc = _mm256_max_pd(acc, _mm256_and_pd(ABS_MASK, _mm256_loadu_pd(v + j)));
    double m = hmax(acc);
    for (; j < n; ++j)
        m = std::max(m, std::fabs(v[j]));
    return m;
}

double max_abs_diff_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j));
        acc = _mm256_max_pd(acc, _mm256_and_pd(ABS_MASK, d));
    }
    double m = hmax(acc);
    for (; j < n; ++j)
        m = std::max(m, std::fabs(x[j] - y[j]));
    return m;
}

double sum_sq_avx2(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d vv = _mm256_loadu_pd(v + j);
        acc = _mm256_fmadd_pd(vv, vv, acc);
    }
    double s = hsum(acc);
    for (; j < n; ++j)
        s += v[j] * v[j];
    return s;
}

bool within_limit_avx2(const double* v, double limit, std::size_t n) {
    const __m256d vlim = _mm256_set1_pd(limit);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d a = _mm256_and_pd(ABS_MASK, _mm256_loadu_pd(v + j));
        // NLE_UQ is true for |v| > limit and for NaN
        __m256d bad = _mm256_cmp_pd(a, vlim, _CMP_NLE_UQ);
        if (_mm256_movemask_pd(bad) != 0)
            return false;
    }
    for (; j < n; ++j)
        if (!(std::fabs(v[j]) <= limit))
            return false;
    return true;
}

} // namespace

const Ops& avx2_table() {
    static const Ops table = {
        psi_first_avx2,
        psi_recurrence_avx2,
        q_update_avx2,
        mode_scaled_diff_avx2,
        mode_derivative_avx2,
        accumulate_square_avx2,
        nonlinear_f_avx2,
        scale_avx2,
        max_abs_avx2,
        max_abs_diff_avx2,
        sum_sq_avx2,
        within_limit_avx2,
    };
    return table;
}

} // namespace ckg::kernels

#endif // CKG_HAVE_AVX2_BUILD
