#pragma once

#include <complex>
#include <vector>

#include "ckg/errors.hpp"

namespace ckg {

using cplx = std::complex<double>;

/// One complex spectral coefficient per grid mode, FFT storage order.
using SpectralField = std::vector<cplx>;

/// Uniform periodic grid on [a, b) with M points. x_j = a + j*h, h = (b-a)/M.
/// The right endpoint b is identified with a and carries no sample.
struct GridSpec {
    GridSpec(double a, double b, int M);

    double a;
    double b;
    int M;
    double h;

    double x(int j) const { return a + j * h; }
    double length() const { return b - a; }
};

/// Per-mode wavenumbers in FFT storage order.
///
/// Storage slot s holds logical mode l = s for s < M/2 and l = s - M for
/// s >= M/2. Slot M/2 is the unpaired Nyquist mode l = -M/2.
///
///   mu[s]     = 2*pi*l / (b - a)
///   lambda[s] = sqrt(mu[s]^2 + 1)
struct ModeTable {
    explicit ModeTable(const GridSpec& grid);

    int M;
    std::vector<double> mu;
    std::vector<double> lambda;

    int logical_mode(int s) const { return s < M / 2 ? s : s - M; }
    int storage_index(int l) const { return l >= 0 ? l : l + M; }
    int nyquist_index() const { return M / 2; }
};

} // namespace ckg
