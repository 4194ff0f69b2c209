#pragma once

#include <vector>

#include "ckg/solutions.hpp"
#include "ckg/spectral.hpp"

namespace ckg {

/// Pointwise nonlinearities evaluated at one time level:
///   f_k[j] = 2*(sum_p psi_p[j]^2 + Q[j])*psi_k[j]
///   g[j]   = -2*sum_p psi_p[j]^2
struct NonlinearTerms {
    std::vector<std::vector<double>> f;
    std::vector<double> g;
};

/// Complete evolving state of an N-component run.
///
/// psi holds two time levels because the update is a two-step recurrence;
/// Q needs one. phi_curr holds the transform of the sampled d/dt initial
/// data and is meaningful at step 0 only; later time derivatives are
/// recovered on demand from the two psi levels. Physical-space views of the
/// current level are cached so the nonlinearity needs no extra transforms;
/// at step 0 they are the literal initial samples.
struct SimState {
    GridSpec grid;
    int n_components = 0;
    long step = 0;
    double tau = 0.0; // set when stepping starts

    std::vector<SpectralField> psi_prev; // level n-1 (= level 0 before stepping)
    std::vector<SpectralField> psi_curr; // level n
    SpectralField q_curr;
    std::vector<SpectralField> phi_curr; // d/dt psi at t=0

    std::vector<std::vector<double>> psi_phys; // level n, cached
    std::vector<double> q_phys;
    std::vector<std::vector<double>> phi_phys0; // initial samples, step 0 only

    SpectralField g_tilde;         // g at level n, maintained while stepping
    double max_imag_residual = 0.0;  // worst raw |Im| over all inverses so far
    double last_paired_imag = 0.0;   // Nyquist-compensated residue, last inverse
    bool dealias = false;            // optional 2/3-rule truncation of f, g
    bool zero_nonlinearity = false;  // validation hook: evolve the linear part only

    SpectralTransform transform;

    explicit SimState(const GridSpec& g) : grid(g), transform(g) {}

    double time() const { return step * tau; }

    /// Inverse-transform field into out, tracking imaginary residues.
    void to_physical(const SpectralField& field, std::vector<double>& out);
};

/// Sample initial data on the grid and transform. The raw samples stay
/// cached so snapshots at step 0 reproduce them bit-for-bit.
SimState init_state(const InitialCondition& ic, const GridSpec& grid);

/// Same, from already-sampled vectors (noise is applied to samples upstream).
SimState init_state_from_samples(std::vector<std::vector<double>> psi0,
                                 std::vector<std::vector<double>> psi1,
                                 std::vector<double> q0, const GridSpec& grid);

/// Pointwise nonlinear terms at the state's current level, from the cached
/// physical views. Throws BlowUpError if any field is non-finite or beyond
/// the blow-up limit.
NonlinearTerms eval_nonlinear(SimState& state, const GridSpec& grid);

/// psi_1..psi_N and Q in physical space, each of length M+1 with the
/// periodic endpoint duplicated from j=0.
std::vector<std::vector<double>> physical_snapshot(const SimState& state,
                                                   const GridSpec& grid);

/// Blow-up predicate threshold: max-abs above this (or any NaN/Inf) aborts.
inline constexpr double BLOWUP_LIMIT = 1e8;

/// Throws BlowUpError unless every cached physical field is finite and
/// within the blow-up limit.
void check_fields(const SimState& state);

} // namespace ckg
