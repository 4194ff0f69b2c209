#include "ckg/integrator.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <utility>

#include "ckg/kernels.hpp"

namespace ckg {
namespace {

void check_step_state(const SimState& state, const StepOperator& op) {
    if (static_cast<int>(op.cos_table.size()) != state.grid.M)
        throw ShapeError("step operator size does not match state grid");
    if (state.step > 0 && state.tau != op.tau)
        throw ParamError("step operator tau does not match the tau this state was advanced with");
}

// forward-transform of the nonlinearity, with optional 2/3 truncation
SpectralField nl_transform(SimState& state, const std::vector<double>& v) {
    SpectralField out = state.transform.forward(std::span<const double>(v));
    if (state.dealias) {
        ModeTable modes(state.grid);
        out = dealias_23(out, modes);
    }
    return out;
}

SpectralField g_transform(SimState& state) {
    const auto& k = kernels::ops();
    const std::size_t M = static_cast<std::size_t>(state.grid.M);
    if (state.zero_nonlinearity)
        return SpectralField(M, cplx(0.0, 0.0));
    std::vector<double> ssq(M, 0.0);
    for (int c = 0; c < state.n_components; ++c)
        k.accumulate_square(ssq.data(), state.psi_phys[c].data(), M);
    std::vector<double> g(M);
    k.scale(g.data(), ssq.data(), -2.0, M);
    return nl_transform(state, g);
}

} // namespace

StepOperator make_step_operator(const ModeTable& modes, double tau) {
    if (!(tau > 0.0))
        throw ParamError("time step must be positive, got tau = " + std::to_string(tau));
    const int M = modes.M;
    StepOperator op;
    op.tau = tau;
    op.cos_table.resize(M);
    op.sinc_table.resize(M);
    op.phi_scale.resize(M);
    op.exp_table.resize(M);
    op.q_plus.resize(M);
    op.q_minus_exp.resize(M);
    for (int s = 0; s < M; ++s) {
        const double lam = modes.lambda[s];
        const double mu = modes.mu[s];
        const double sn = std::sin(lam * tau);
        op.cos_table[s] = std::cos(lam * tau);
        op.sinc_table[s] = sn / lam;
        op.phi_scale[s] = lam / (2.0 * sn);
        op.exp_table[s] = std::polar(1.0, mu * tau);
        op.q_plus[s] = cplx(1.0, mu * tau / 2.0);
        op.q_minus_exp[s] = cplx(-1.0, mu * tau / 2.0) * op.exp_table[s];
        if (std::fabs(sn) < op.min_abs_sin) {
            op.min_abs_sin = std::fabs(sn);
            op.resonant_mode = modes.logical_mode(s);
        }
    }
    if (op.min_abs_sin < 1e-6)
        std::fprintf(stderr,
                     "warning: tau = %g is nearly resonant for mode l = %d "
                     "(|sin(lambda*tau)| = %.3e); time-derivative recovery will be "
                     "ill-conditioned\n",
                     tau, op.resonant_mode, op.min_abs_sin);
    return op;
}

void first_step(SimState& state, const StepOperator& op) {
    check_step_state(state, op);
    if (state.step != 0)
        throw ParamError("first_step requires a state at step 0, got step " +
                         std::to_string(state.step));
    const auto& k = kernels::ops();
    const std::size_t M = static_cast<std::size_t>(state.grid.M);
    state.tau = op.tau;

    NonlinearTerms nl = eval_nonlinear(state, state.grid);
    SpectralField g_old = nl_transform(state, nl.g);

    std::vector<SpectralField> next(state.n_components);
    for (int c = 0; c < state.n_components; ++c) {
        SpectralField f_t = nl_transform(state, nl.f[c]);
        next[c].resize(M);
        k.psi_first(next[c].data(), state.psi_curr[c].data(), state.phi_curr[c].data(),
                    f_t.data(), op.cos_table.data(), op.sinc_table.data(),
                    op.tau / 2.0, M);
    }

    state.psi_prev = std::move(state.psi_curr);
    state.psi_curr = std::move(next);
    state.step = 1;
    for (int c = 0; c < state.n_components; ++c) {
        state.to_physical(state.psi_curr[c], state.psi_phys[c]);
        assert(state.last_paired_imag < 1e-10);
    }
    check_fields(state);

    SpectralField g_new = g_transform(state);
    state.q_curr = q_step(state.q_curr, g_old, g_new, op);
    state.to_physical(state.q_curr, state.q_phys);
    assert(state.last_paired_imag < 1e-10);
    check_fields(state);
    state.g_tilde = std::move(g_new);
}

std::vector<SpectralField> psi_step(SimState& state, const NonlinearTerms& nl,
                                    const StepOperator& op) {
    check_step_state(state, op);
    if (state.step < 1)
        throw ParamError("psi_step needs two populated time levels; run first_step");
    const auto& k = kernels::ops();
    const std::size_t M = static_cast<std::size_t>(state.grid.M);
    std::vector<SpectralField> next(state.n_components);
    for (int c = 0; c < state.n_components; ++c) {
        SpectralField f_t = nl_transform(state, nl.f[c]);
        next[c].resize(M);
        k.psi_recurrence(next[c].data(), state.psi_prev[c].data(),
                         state.psi_curr[c].data(), f_t.data(), op.cos_table.data(),
                         op.sinc_table.data(), op.tau, M);
    }
    return next;
}

SpectralField q_step(const SpectralField& q_curr, const SpectralField& g_n,
                     const SpectralField& g_np1, const StepOperator& op) {
    const std::size_t M = op.cos_table.size();
    if (q_curr.size() != M || g_n.size() != M || g_np1.size() != M)
        throw ShapeError("q_step: field lengths must match the step operator");
    SpectralField q = q_curr;
    kernels::ops().q_update(q.data(), g_np1.data(), g_n.data(), op.exp_table.data(),
                            op.q_plus.data(), op.q_minus_exp.data(), M);
    return q;
}

SpectralField phi_recover(const SpectralField& psi_prev, const SpectralField& psi_next,
                          const StepOperator& op) {
    const std::size_t M = op.cos_table.size();
    if (psi_prev.size() != M || psi_next.size() != M)
        throw ShapeError("phi_recover: field lengths must match the step operator");
    if (op.min_abs_sin < RESONANCE_TOL)
        throw ResonanceError(
            "time step resonates with mode l = " + std::to_string(op.resonant_mode) +
                " (|sin(lambda*tau)| = " + std::to_string(op.min_abs_sin) +
                "); the time-derivative recovery is singular, choose a different tau",
            op.resonant_mode);
    SpectralField phi(M);
    kernels::ops().mode_scaled_diff(phi.data(), psi_next.data(), psi_prev.data(),
                                    op.phi_scale.data(), M);
    return phi;
}

void advance(SimState& state, const StepOperator& op, long steps) {
    check_step_state(state, op);
    if (steps < 0)
        throw ParamError("advance: steps must be nonnegative");
    if (steps == 0)
        return;
    if (state.step == 0) {
        first_step(state, op);
        --steps;
    }
    for (long i = 0; i < steps; ++i) {
        NonlinearTerms nl = eval_nonlinear(state, state.grid);
        std::vector<SpectralField> next = psi_step(state, nl, op);

        state.psi_prev = std::move(state.psi_curr);
        state.psi_curr = std::move(next);
        ++state.step;
        for (int c = 0; c < state.n_components; ++c) {
            state.to_physical(state.psi_curr[c], state.psi_phys[c]);
            assert(state.last_paired_imag < 1e-10);
        }
        check_fields(state);

        SpectralField g_new = g_transform(state);
        state.q_curr = q_step(state.q_curr, state.g_tilde, g_new, op);
        state.to_physical(state.q_curr, state.q_phys);
        assert(state.last_paired_imag < 1e-10);
        check_fields(state);
        state.g_tilde = std::move(g_new);
    }
}

} // namespace ckg
