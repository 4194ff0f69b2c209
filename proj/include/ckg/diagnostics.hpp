#pragma once

#include <cstdint>

#include "ckg/integrator.hpp"

namespace ckg {

struct EnergySample {
    double t;
    double E;
};

struct ErrorSample {
    double t;
    double e;
};

/// Conserved functional
///   E = integral of sum_k[(dt psi_k)^2 + (dx psi_k)^2 + psi_k^2]
///       - (sum_k psi_k^2)^2 + Q^2/2
/// by the rectangle rule over the M periodic points. At step 0 the sampled
/// d/dt initial data supplies dt psi; at later steps it is recovered from a
/// throwaway evaluation of the next psi level, so calling this does not
/// advance the state (the transform scratch makes the state non-const).
EnergySample energy(SimState& state, const GridSpec& grid, const StepOperator& op);

/// e(t) = sum_k max_j |psi_k - exact psi_k| + max_j |Q - exact Q| over the M
/// grid points, with the exact one-soliton of `exact` evaluated at x_j + x0
/// and split over components by its amplitudes (one per component required).
ErrorSample max_error(const SimState& state, const GridSpec& grid,
                      const SolitonSpec& exact);

/// Add white Gaussian noise at the given signal-to-noise ratio:
/// sigma^2 = (sum v^2 / n) / 10^(snr_db/10). Deterministic per seed across
/// platforms (seeded 64-bit Mersenne Twister + polar method, no libm
/// distribution involved). Zero input returns the input unchanged.
/// If sigma_out is non-null it receives the sigma used.
std::vector<double> add_noise(const std::vector<double>& values, double snr_db,
                              std::uint64_t seed, double* sigma_out = nullptr);

/// Name of the noise generator recorded in run manifests.
const char* noise_rng_name();

} // namespace ckg
