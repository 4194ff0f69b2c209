#include "ckg/state.hpp"

#include <cassert>
#include <utility>

#include "ckg/kernels.hpp"

namespace ckg {

void SimState::to_physical(const SpectralField& field, std::vector<double>& out) {
    out.resize(grid.M);
    double mi = 0.0, mp = 0.0;
    transform.inverse_real_into(field, out, &mi, &mp);
    if (mi > max_imag_residual)
        max_imag_residual = mi;
    last_paired_imag = mp;
}

SimState init_state_from_samples(std::vector<std::vector<double>> psi0,
                                 std::vector<std::vector<double>> psi1,
                                 std::vector<double> q0, const GridSpec& grid) {
    const std::size_t M = static_cast<std::size_t>(grid.M);
    if (psi0.empty() || psi0.size() != psi1.size())
        throw ShapeError("initial data must supply matching psi0/psi1 component lists");
    for (const auto& v : psi0)
        if (v.size() != M)
            throw ShapeError("psi0 sample length does not match grid");
    for (const auto& v : psi1)
        if (v.size() != M)
            throw ShapeError("psi1 sample length does not match grid");
    if (q0.size() != M)
        throw ShapeError("q0 sample length does not match grid");

    SimState st(grid);
    st.n_components = static_cast<int>(psi0.size());
    for (const auto& v : psi0)
        st.psi_curr.push_back(st.transform.forward(std::span<const double>(v)));
    for (const auto& v : psi1)
        st.phi_curr.push_back(st.transform.forward(std::span<const double>(v)));
    st.q_curr = st.transform.forward(std::span<const double>(q0));
    st.psi_prev = st.psi_curr;
    st.psi_phys = std::move(psi0);
    st.phi_phys0 = std::move(psi1);
    st.q_phys = std::move(q0);
    return st;
}

SimState init_state(const InitialCondition& ic, const GridSpec& grid) {
    const int M = grid.M;
    const int N = static_cast<int>(ic.psi0.size());
    if (N == 0 || ic.psi1.size() != ic.psi0.size() || !ic.q0)
        throw ShapeError("initial condition must define psi0/psi1 for each component and q0");
    std::vector<std::vector<double>> psi0(N, std::vector<double>(M));
    std::vector<std::vector<double>> psi1(N, std::vector<double>(M));
    std::vector<double> q0(M);
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < M; ++j) {
            psi0[k][j] = ic.psi0[k](grid.x(j));
            psi1[k][j] = ic.psi1[k](grid.x(j));
        }
    for (int j = 0; j < M; ++j)
        q0[j] = ic.q0(grid.x(j));
    return init_state_from_samples(std::move(psi0), std::move(psi1), std::move(q0), grid);
}

void check_fields(const SimState& state) {
    const auto& k = kernels::ops();
    const std::size_t M = state.q_phys.size();
    for (int c = 0; c < state.n_components; ++c)
        if (!k.within_limit(state.psi_phys[c].data(), BLOWUP_LIMIT, M))
            throw BlowUpError("psi_" + std::to_string(c + 1) +
                              " exceeded the blow-up limit or went non-finite",
                              state.step);
    if (!k.within_limit(state.q_phys.data(), BLOWUP_LIMIT, M))
        throw BlowUpError("Q exceeded the blow-up limit or went non-finite", state.step);
}

NonlinearTerms eval_nonlinear(SimState& state, const GridSpec& grid) {
    const std::size_t M = static_cast<std::size_t>(grid.M);
    if (state.q_phys.size() != M)
        throw ShapeError("state does not match grid");
    check_fields(state);
    assert(state.last_paired_imag < 1e-10);

    if (state.zero_nonlinearity) {
        NonlinearTerms nl;
        nl.f.resize(state.n_components, std::vector<double>(M, 0.0));
        nl.g.assign(M, 0.0);
        return nl;
    }

    const auto& k = kernels::ops();
    std::vector<double> ssq(M, 0.0);
    for (int c = 0; c < state.n_components; ++c)
        k.accumulate_square(ssq.data(), state.psi_phys[c].data(), M);

    NonlinearTerms nl;
    nl.f.resize(state.n_components, std::vector<double>(M));
    for (int c = 0; c < state.n_components; ++c)
        k.nonlinear_f(nl.f[c].data(), ssq.data(), state.q_phys.data(),
                      state.psi_phys[c].data(), M);
    nl.g.resize(M);
    k.scale(nl.g.data(), ssq.data(), -2.0, M);
    return nl;
}

std::vector<std::vector<double>> physical_snapshot(const SimState& state,
                                                   const GridSpec& grid) {
    const std::size_t M = static_cast<std::size_t>(grid.M);
    if (state.q_phys.size() != M)
        throw ShapeError("state does not match grid");
    std::vector<std::vector<double>> out;
    out.reserve(state.n_components + 1);
    for (int c = 0; c < state.n_components; ++c) {
        std::vector<double> v = state.psi_phys[c];
        v.push_back(v.front());
        out.push_back(std::move(v));
    }
    std::vector<double> q = state.q_phys;
    q.push_back(q.front());
    out.push_back(std::move(q));
    return out;
}

} // namespace ckg
