#pragma once

#include "ckg/state.hpp"

namespace ckg {

/// Per-mode propagation factors for one (grid, tau) pair, precomputed so the
/// per-step cost is dominated by the transforms.
struct StepOperator {
    double tau = 0.0;
    std::vector<double> cos_table;  // cos(lambda_l tau)
    std::vector<double> sinc_table; // sin(lambda_l tau)/lambda_l
    std::vector<double> phi_scale;  // lambda_l/(2 sin(lambda_l tau))
    std::vector<cplx> exp_table;    // exp(i mu_l tau)
    std::vector<cplx> q_plus;       // i mu_l tau/2 + 1
    std::vector<cplx> q_minus_exp;  // (i mu_l tau/2 - 1) exp(i mu_l tau)
    double min_abs_sin = 1.0;       // min_l |sin(lambda_l tau)|
    int resonant_mode = 0;          // logical mode attaining the minimum
};

/// Threshold below which phi_recover refuses to divide by sin(lambda tau).
inline constexpr double RESONANCE_TOL = 1e-8;

/// Build the factor tables. Warns on stderr when some mode is nearly
/// resonant (|sin(lambda_l tau)| < 1e-6); only phi_recover hard-fails.
StepOperator make_step_operator(const ModeTable& modes, double tau);

/// Advance a freshly initialized state (step 0) to step 1:
///   psi^1 = psi^(0) cos(lambda tau) + phi^(0) sinc + (tau/2) f^0 sinc
/// then Q^1 from q_step with g^0 and g^1 (g^1 from the new psi^1).
void first_step(SimState& state, const StepOperator& op);

/// The three-term recurrence at the state's current level:
///   psi^{n+1} = -psi^{n-1} + 2 psi^n cos(lambda tau) + tau f^n sinc.
/// Does not mutate the time levels; returns the N new fields.
std::vector<SpectralField> psi_step(SimState& state, const NonlinearTerms& nl,
                                    const StepOperator& op);

/// Exponential-trapezoidal transport update:
///   Q^{n+1} = e^{i mu tau} Q^n + (i mu tau/2 + 1) g^{n+1}
///           + (i mu tau/2 - 1) e^{i mu tau} g^n.
SpectralField q_step(const SpectralField& q_curr, const SpectralField& g_n,
                     const SpectralField& g_np1, const StepOperator& op);

/// Centered recovery of the time derivative:
///   phi^n = lambda (psi^{n+1} - psi^{n-1}) / (2 sin(lambda tau)).
/// Throws ResonanceError if any mode has |sin(lambda tau)| < RESONANCE_TOL.
SpectralField phi_recover(const SpectralField& psi_prev, const SpectralField& psi_next,
                          const StepOperator& op);

/// Run `steps` full update cycles (first_step applied internally when the
/// state is still at step 0). Each cycle: nonlinearity at level n, psi
/// recurrence, g at n+1, Q update, rotate.
void advance(SimState& state, const StepOperator& op, long steps);

} // namespace ckg
