#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ckg/grid.hpp"

namespace ckg {

/// FFT-backed discrete Fourier transform bound to one grid size.
///
/// Conventions (storage order per ModeTable):
///   forward:  coeffs[l] = (1/M) sum_{j=0}^{M-1} v_j exp(-i mu_l (x_j - a))
///   inverse:  v_j = sum_l coeffs[l] exp(2 pi i j l / M)
/// so inverse(forward(v)) == v to round-off. Plans are created once at
/// construction; apply methods reuse internal scratch buffers, hence
/// non-const. One instance must not be shared between threads.
class SpectralTransform {
public:
    explicit SpectralTransform(const GridSpec& grid);
    ~SpectralTransform();

    SpectralTransform(SpectralTransform&&) noexcept;
    SpectralTransform& operator=(SpectralTransform&&) noexcept;
    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    int size() const;

    SpectralField forward(std::span<const double> v);
    SpectralField forward(std::span<const cplx> v);
    std::vector<cplx> inverse(const SpectralField& field);

    /// Inverse transform keeping the real part. If max_imag is non-null it
    /// receives the largest |imaginary part| seen in the output. The
    /// unpaired Nyquist mode of Hermitian data contributes an imaginary
    /// residue of (-1)^j Im(coeffs[M/2]) per point; max_imag_paired, if
    /// requested, reports the residue with that contribution removed, which
    /// is the honest realness check for fields evolved with a literal
    /// Nyquist wavenumber.
    std::vector<double> inverse_real(const SpectralField& field,
                                     double* max_imag = nullptr);
    void inverse_real_into(const SpectralField& field, std::span<double> out,
                           double* max_imag = nullptr,
                           double* max_imag_paired = nullptr);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot conveniences (plan per call; fine for tests and setup paths).
SpectralField forward_dft(std::span<const double> values, const GridSpec& grid);
SpectralField forward_dft(std::span<const cplx> values, const GridSpec& grid);
std::vector<cplx> inverse_dft(const SpectralField& field, const GridSpec& grid);

/// Mode-wise first derivative: out[l] = i*mu_l*coeffs[l]. The unpaired
/// Nyquist mode keeps its literal wavenumber -pi*M/(b-a) by default, which
/// makes the derivative of real data very slightly non-real; zero_nyquist
/// drops that mode instead.
SpectralField spectral_dx(const SpectralField& field, const ModeTable& modes,
                          bool zero_nyquist = false);

/// 2/3-rule dealiasing: zero all modes with |l| > M/3. Off by default
/// everywhere; exists as an option only.
SpectralField dealias_23(const SpectralField& field, const ModeTable& modes);

} // namespace ckg
