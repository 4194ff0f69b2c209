#include <cmath>

#include "tables.hpp"

namespace ckg::kernels {
namespace {

void psi_first_scalar(cplx* out, const cplx* psi0, const cplx* phi0,
                      const cplx* f0, const double* cos_t, const double* sinc_t,
                      double half_tau, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = psi0[i] * cos_t[i] + (phi0[i] + half_tau * f0[i]) * sinc_t[i];
}

void psi_recurrence_scalar(cplx* out, const cplx* prev, const cplx* curr,
                           const cplx* f, const double* cos_t, const double* sinc_t,
                           double tau, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = -prev[i] + 2.0 * curr[i] * cos_t[i] + tau * f[i] * sinc_t[i];
}

void q_update_scalar(cplx* q, const cplx* g_new, const cplx* g_old,
                     const cplx* exp_t, const cplx* q_plus, const cplx* q_minus_exp,
                     std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        q[i] = exp_t[i] * q[i] + q_plus[i] * g_new[i] + q_minus_exp[i] * g_old[i];
}

void mode_scaled_diff_scalar(cplx* out, const cplx* next, const cplx* prev,
                             const double* scale_t, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = scale_t[i] * (next[i] - prev[i]);
}

void mode_derivative_scalar(cplx* out, const cplx* in, const double* mu,
                            std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = cplx(-mu[i] * in[i].imag(), mu[i] * in[i].real());
}

void accumulate_square_scalar(double* acc, const double* v, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j)
        acc[j] += v[j] * v[j];
}

void nonlinear_f_scalar(double* out, const double* ssq, const double* q,
                        const double* psi, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j)
        out[j] = 2.0 * (ssq[j] + q[j]) * psi[j];
}

void scale_scalar(double* out, const double* v, double c, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j)
        out[j] = c * v[j];
}

double max_abs_scalar(const double* v, std::size_t n) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        m = std::max(m, std::fabs(v[j]));
    return m;
}

double max_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        m = std::max(m, std::fabs(x[j] - y[j]));
    return m;
}

double sum_sq_scalar(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        s += v[j] * v[j];
    return s;
}

bool within_limit_scalar(const double* v, double limit, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j)
        if (!(std::fabs(v[j]) <= limit))
            return false;
    return true;
}

} // namespace

const Ops& scalar_table() {
    static const Ops table = {
        psi_first_scalar,
        psi_recurrence_scalar,
        q_update_scalar,
        mode_scaled_diff_scalar,
        mode_derivative_scalar,
        accumulate_square_scalar,
        nonlinear_f_scalar,
        scale_scalar,
        max_abs_scalar,
        max_abs_diff_scalar,
        sum_sq_scalar,
        within_limit_scalar,
    };
    return table;
}

} // namespace ckg::kernels
