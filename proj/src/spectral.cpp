#include "ckg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "ckg/kernels.hpp"

namespace ckg {
namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

void check_len(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw ShapeError(std::string(what) + ": expected length " +
                         std::to_string(want) + ", got " + std::to_string(got));
}

} // namespace

struct SpectralTransform::Impl {
    int M = 0;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Impl(int M_) : M(M_) {
        in = fftw_alloc_complex(static_cast<std::size_t>(M));
        out = fftw_alloc_complex(static_cast<std::size_t>(M));
        std::lock_guard<std::mutex> lock(plan_mutex());
        fwd = fftw_plan_dft_1d(M, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(M, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~Impl() {
        {
            std::lock_guard<std::mutex> lock(plan_mutex());
            if (fwd)
                fftw_destroy_plan(fwd);
            if (bwd)
                fftw_destroy_plan(bwd);
        }
        fftw_free(in);
        fftw_free(out);
    }
};

SpectralTransform::SpectralTransform(const GridSpec& grid)
    : impl_(std::make_unique<Impl>(grid.M)) {}

SpectralTransform::~SpectralTransform() = default;
SpectralTransform::SpectralTransform(SpectralTransform&&) noexcept = default;
SpectralTransform& SpectralTransform::operator=(SpectralTransform&&) noexcept = default;

int SpectralTransform::size() const { return impl_->M; }

SpectralField SpectralTransform::forward(std::span<const double> v) {
    const int M = impl_->M;
    check_len(v.size(), static_cast<std::size_t>(M), "forward_dft input");
    for (int j = 0; j < M; ++j) {
        impl_->in[j][0] = v[j];
        impl_->in[j][1] = 0.0;
    }
    fftw_execute(impl_->fwd);
    SpectralField coeffs(M);
    const double inv_m = 1.0 / M;
    for (int s = 0; s < M; ++s)
        coeffs[s] = cplx(impl_->out[s][0] * inv_m, impl_->out[s][1] * inv_m);
    return coeffs;
}

SpectralField SpectralTransform::forward(std::span<const cplx> v) {
    const int M = impl_->M;
    check_len(v.size(), static_cast<std::size_t>(M), "forward_dft input");
    std::memcpy(impl_->in, v.data(), sizeof(cplx) * M);
    fftw_execute(impl_->fwd);
    SpectralField coeffs(M);
    const double inv_m = 1.0 / M;
    for (int s = 0; s < M; ++s)
        coeffs[s] = cplx(impl_->out[s][0] * inv_m, impl_->out[s][1] * inv_m);
    return coeffs;
}

std::vector<cplx> SpectralTransform::inverse(const SpectralField& field) {
    const int M = impl_->M;
    check_len(field.size(), static_cast<std::size_t>(M), "inverse_dft input");
    std::memcpy(impl_->in, field.data(), sizeof(cplx) * M);
    fftw_execute(impl_->bwd);
    std::vector<cplx> v(M);
    std::memcpy(v.data(), impl_->out, sizeof(cplx) * M);
    return v;
}

void SpectralTransform::inverse_real_into(const SpectralField& field,
                                          std::span<double> out, double* max_imag,
                                          double* max_imag_paired) {
    const int M = impl_->M;
    check_len(field.size(), static_cast<std::size_t>(M), "inverse_dft input");
    check_len(out.size(), static_cast<std::size_t>(M), "inverse_dft output");
    std::memcpy(impl_->in, field.data(), sizeof(cplx) * M);
    fftw_execute(impl_->bwd);
    double mi = 0.0, mp = 0.0;
    const double im_nyq = field[M / 2].imag();
    for (int j = 0; j < M; ++j) {
        out[j] = impl_->out[j][0];
        const double im = impl_->out[j][1];
        mi = std::max(mi, std::fabs(im));
        mp = std::max(mp, std::fabs(im - (j % 2 == 0 ? im_nyq : -im_nyq)));
    }
    if (max_imag)
        *max_imag = mi;
    if (max_imag_paired)
        *max_imag_paired = mp;
}

std::vector<double> SpectralTransform::inverse_real(const SpectralField& field,
                                                    double* max_imag) {
    std::vector<double> v(impl_->M);
    inverse_real_into(field, v, max_imag);
    return v;
}

SpectralField forward_dft(std::span<const double> values, const GridSpec& grid) {
    SpectralTransform tr(grid);
    return tr.forward(values);
}

SpectralField forward_dft(std::span<const cplx> values, const GridSpec& grid) {
    SpectralTransform tr(grid);
    return tr.forward(values);
}

std::vector<cplx> inverse_dft(const SpectralField& field, const GridSpec& grid) {
    SpectralTransform tr(grid);
    return tr.inverse(field);
}

SpectralField spectral_dx(const SpectralField& field, const ModeTable& modes,
                          bool zero_nyquist) {
    check_len(field.size(), static_cast<std::size_t>(modes.M), "spectral_dx input");
    SpectralField out(field.size());
    kernels::ops().mode_derivative(out.data(), field.data(), modes.mu.data(),
                                   field.size());
    if (zero_nyquist)
        out[modes.nyquist_index()] = 0.0;
    return out;
}

SpectralField dealias_23(const SpectralField& field, const ModeTable& modes) {
    check_len(field.size(), static_cast<std::size_t>(modes.M), "dealias input");
    SpectralField out = field;
    const int cut = modes.M / 3;
    for (int s = 0; s < modes.M; ++s)
        if (std::abs(modes.logical_mode(s)) > cut)
            out[s] = 0.0;
    return out;
}

} // namespace ckg
