#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ckg/diagnostics.hpp"
#include "ckg/integrator.hpp"
#include "ckg/kernels.hpp"
#include "naive_dft.hpp"

using namespace ckg;

namespace {

SimState soliton_state(const GridSpec& grid) {
    return init_state(build_single_soliton_ic({0.4, {1.0}, 0.0}, 1), grid);
}

SimState cosine_mode_state(const GridSpec& grid, int l) {
    const double mu = 2.0 * std::numbers::pi * l / grid.length();
    std::vector<double> psi0(grid.M), zeros(grid.M, 0.0);
    for (int j = 0; j < grid.M; ++j)
        psi0[j] = std::cos(mu * (grid.x(j) - grid.a));
    SimState st = init_state_from_samples({psi0}, {zeros}, zeros, grid);
    st.zero_nonlinearity = true;
    return st;
}

double max_err_vs_cosine(const SimState& st, const GridSpec& grid, int l, double t) {
    const double mu = 2.0 * std::numbers::pi * l / grid.length();
    const double lam = std::sqrt(mu * mu + 1.0);
    double worst = 0.0;
    for (int j = 0; j < grid.M; ++j) {
        const double exact = std::cos(mu * (grid.x(j) - grid.a)) * std::cos(lam * t);
        worst = std::max(worst, std::fabs(st.psi_phys[0][j] - exact));
    }
    return worst;
}

} // namespace

TEST_CASE("step operator tables satisfy their defining identities") {
    GridSpec grid(-8.0, 8.0, 64);
    ModeTable modes(grid);
    const double tau = 0.02;
    StepOperator op = make_step_operator(modes, tau);
    REQUIRE(op.cos_table.size() == 64);
    CHECK(op.tau == tau);
    for (int s = 0; s < 64; ++s) {
        const double lam = modes.lambda[s], mu = modes.mu[s];
        const double c = op.cos_table[s], snc = op.sinc_table[s];
        CHECK(std::fabs(c * c + snc * lam * snc * lam - 1.0) < 1e-14);
        CHECK(std::fabs(std::abs(op.exp_table[s]) - 1.0) < 1e-14);
        CHECK(op.q_plus[s] == cplx(1.0, mu * tau / 2.0));
        CHECK(std::abs(op.q_minus_exp[s] - cplx(-1.0, mu * tau / 2.0) * op.exp_table[s]) <
              1e-15);
        CHECK(std::fabs(op.phi_scale[s] * 2.0 * std::sin(lam * tau) - lam) < 1e-13);
    }
    CHECK(op.min_abs_sin > 1e-3);
    CHECK_THROWS_AS(make_step_operator(modes, 0.0), ParamError);
    CHECK_THROWS_AS(make_step_operator(modes, -0.5), ParamError);
}

TEST_CASE("zero data stays zero through the whole update cycle") {
    GridSpec grid(-8.0, 8.0, 32);
    std::vector<double> z(32, 0.0);
    SimState st = init_state_from_samples({z}, {z}, z, grid);
    StepOperator op = make_step_operator(ModeTable(grid), 0.05);
    advance(st, op, 7);
    CHECK(st.step == 7);
    for (double v : st.psi_phys[0])
        CHECK(v == 0.0);
    for (double v : st.q_phys)
        CHECK(v == 0.0);
}

TEST_CASE("free single-mode evolution reproduces the exact cosine") {
    GridSpec grid(-8.0, 8.0, 64);
    SimState st = cosine_mode_state(grid, 3);
    StepOperator op = make_step_operator(ModeTable(grid), 0.02);
    advance(st, op, 100);
    CHECK(max_err_vs_cosine(st, grid, 3, st.time()) < 1e-12);
    for (double v : st.q_phys)
        CHECK(std::fabs(v) < 1e-15);
}

TEST_CASE("first step converges at its stated order") {
    GridSpec grid(-32.0, 32.0, 256);
    const SolitonSpec exact{0.4, {1.0}, 0.0};
    auto one_step_error = [&](double tau) {
        SimState st = soliton_state(grid);
        StepOperator op = make_step_operator(ModeTable(grid), tau);
        first_step(st, op);
        CHECK(st.step == 1);
        return max_error(st, grid, exact).e;
    };
    const double e1 = one_step_error(0.01);
    const double e2 = one_step_error(0.005);
    const double e3 = one_step_error(0.0025);
    CHECK(e1 < 1e-4);
    // local error is O(tau^3): halving tau must shrink it well below the
    // factor 4 a second-order-local defect would give
    CHECK(e2 < 0.2 * e1);
    CHECK(e3 < 0.2 * e2);

    SimState st = soliton_state(grid);
    StepOperator op = make_step_operator(ModeTable(grid), 0.01);
    first_step(st, op);
    CHECK_THROWS_AS(first_step(st, op), ParamError);
}

TEST_CASE("recurrence equals a mode-by-mode scalar re-evaluation") {
    GridSpec grid(-16.0, 16.0, 64);
    ModeTable modes(grid);
    SimState st = soliton_state(grid);
    StepOperator op = make_step_operator(modes, 0.02);
    advance(st, op, 3);

    NonlinearTerms nl = eval_nonlinear(st, grid);
    std::vector<SpectralField> next = psi_step(st, nl, op);

    const SpectralField f_t = naive_forward(nl.f[0], grid);
    double worst = 0.0;
    for (int s = 0; s < grid.M; ++s) {
        const double lam = modes.lambda[s];
        const cplx expected = -st.psi_prev[0][s] +
                              2.0 * std::cos(lam * op.tau) * st.psi_curr[0][s] +
                              op.tau * (std::sin(lam * op.tau) / lam) * f_t[s];
        worst = std::max(worst, std::abs(next[0][s] - expected));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("transport update: mean mode is exact, free transport preserves modulus") {
    GridSpec grid(-8.0, 8.0, 32);
    StepOperator op = make_step_operator(ModeTable(grid), 0.04);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField q(32), g0(32), g1(32), zero(32, cplx(0.0, 0.0));
    for (int s = 0; s < 32; ++s) {
        q[s] = cplx(u(rng), u(rng));
        g0[s] = cplx(u(rng), u(rng));
        g1[s] = cplx(u(rng), u(rng));
    }

    SpectralField free_q = q_step(q, zero, zero, op);
    for (int s = 0; s < 32; ++s)
        CHECK(std::abs(std::abs(free_q[s]) - std::abs(q[s])) < 1e-15);

    // mu = 0: the update reduces to Q + g^{n+1} - g^n, which is exact there
    SpectralField forced = q_step(q, g0, g1, op);
    CHECK(std::abs(forced[0] - (q[0] + g1[0] - g0[0])) < 1e-15);

    SpectralField wrong(31);
    CHECK_THROWS_AS(q_step(wrong, g0, g1, op), ShapeError);
}

TEST_CASE("derivative recovery is exact on free modes") {
    GridSpec grid(-8.0, 8.0, 32);
    ModeTable modes(grid);
    const double tau = 0.03;
    StepOperator op = make_step_operator(modes, tau);
    const int n = 5;
    SpectralField prev(32, cplx(0.0, 0.0)), next(32, cplx(0.0, 0.0));
    const int s = modes.storage_index(4);
    const double lam = modes.lambda[s];
    prev[s] = std::cos(lam * (n - 1) * tau);
    next[s] = std::cos(lam * (n + 1) * tau);
    SpectralField phi = phi_recover(prev, next, op);
    CHECK(std::abs(phi[s] - cplx(-lam * std::sin(lam * n * tau), 0.0)) < 1e-13);
    for (int r = 0; r < 32; ++r)
        if (r != s)
            CHECK(std::abs(phi[r]) == 0.0);
}

TEST_CASE("recovered time derivative tracks the soliton") {
    GridSpec grid(-32.0, 32.0, 256);
    SimState st = soliton_state(grid);
    const double tau = 0.02;
    StepOperator op = make_step_operator(ModeTable(grid), tau);
    advance(st, op, 50); // t = 1

    NonlinearTerms nl = eval_nonlinear(st, grid);
    std::vector<SpectralField> next = psi_step(st, nl, op);
    SpectralField phi_t = phi_recover(st.psi_prev[0], next[0], op);
    std::vector<double> phi;
    st.to_physical(phi_t, phi);
    double worst = 0.0;
    for (int j = 0; j < grid.M; ++j)
        worst = std::max(worst,
                         std::fabs(phi[j] - soliton_psi_t(0.4, 1.0, grid.x(j), st.time())));
    CHECK(worst < 1e-3);
    // the raw residue includes the unpaired Nyquist mode; the paired one is
    // the realness invariant
    CHECK(st.max_imag_residual < 1e-5);
    CHECK(st.last_paired_imag < 1e-10);
}

TEST_CASE("resonant time step is detected and refuses derivative recovery") {
    GridSpec grid(0.0, 2.0 * std::numbers::pi, 8);
    ModeTable modes(grid);
    // mode l = 0 has lambda = 1, so tau = pi lands exactly on sin(lambda tau) = 0
    StepOperator op = make_step_operator(modes, std::numbers::pi);
    CHECK(op.min_abs_sin < RESONANCE_TOL);
    CHECK(op.resonant_mode == 0);
    SpectralField a(8, cplx(0.0, 0.0));
    CHECK_THROWS_AS(phi_recover(a, a, op), ResonanceError);
    try {
        phi_recover(a, a, op);
    } catch (const ResonanceError& e) {
        CHECK(std::string(e.what()).find("mode") != std::string::npos);
        CHECK(e.mode() == 0);
    }
    // the plain evolution does not divide by sin and still runs
    SimState st = cosine_mode_state(grid, 2);
    advance(st, op, 3);
    CHECK(st.step == 3);
}

TEST_CASE("operator/state mismatches are rejected") {
    GridSpec grid(-8.0, 8.0, 32);
    GridSpec other(-8.0, 8.0, 64);
    SimState st = soliton_state(grid);
    StepOperator op = make_step_operator(ModeTable(grid), 0.02);
    StepOperator wrong_size = make_step_operator(ModeTable(other), 0.02);
    StepOperator wrong_tau = make_step_operator(ModeTable(grid), 0.01);
    CHECK_THROWS_AS(advance(st, wrong_size, 1), ShapeError);
    advance(st, op, 2);
    CHECK_THROWS_AS(advance(st, wrong_tau, 1), ParamError);
    CHECK_THROWS_AS(advance(st, op, -1), ParamError);

    SimState fresh = soliton_state(grid);
    NonlinearTerms nl = eval_nonlinear(fresh, grid);
    CHECK_THROWS_AS(psi_step(fresh, nl, op), ParamError); // needs first_step
}

TEST_CASE("the two-step recurrence runs backward to its start") {
    GridSpec grid(-16.0, 16.0, 128);
    SimState st = soliton_state(grid);
    const double tau = 0.02;
    StepOperator op = make_step_operator(ModeTable(grid), tau);
    advance(st, op, 1);
    const SpectralField start0 = st.psi_prev[0]; // level 0
    const SpectralField start1 = st.psi_curr[0]; // level 1

    const int k = 50;
    std::vector<SpectralField> f_hist;
    for (int i = 0; i < k; ++i) {
        NonlinearTerms nl = eval_nonlinear(st, grid);
        f_hist.push_back(st.transform.forward(std::span<const double>(nl.f[0])));
        advance(st, op, 1);
    }

    // replay the recorded forcing in reverse;
    // psi^{n-1} = -psi^{n+1} + 2 cos psi^n + tau sinc f^n is the same kernel
    SpectralField p = st.psi_curr[0]; // level k+1
    SpectralField c = st.psi_prev[0]; // level k
    const auto& kr = kernels::ops();
    for (int i = k - 1; i >= 0; --i) {
        SpectralField out(grid.M);
        kr.psi_recurrence(out.data(), p.data(), c.data(), f_hist[static_cast<std::size_t>(i)].data(),
                          op.cos_table.data(), op.sinc_table.data(), op.tau,
                          static_cast<std::size_t>(grid.M));
        p = std::move(c);
        c = std::move(out);
    }
    double worst = 0.0;
    for (int s = 0; s < grid.M; ++s)
        worst = std::max(worst, std::abs(c[s] - start0[s]));
    CHECK(worst < 1e-10);
    double worst1 = 0.0;
    for (int s = 0; s < grid.M; ++s)
        worst1 = std::max(worst1, std::abs(p[s] - start1[s]));
    CHECK(worst1 < 1e-10);
}
