#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ckg/diagnostics.hpp"

using namespace ckg;

namespace {

SimState soliton_state(const GridSpec& grid) {
    return init_state(build_single_soliton_ic({0.4, {1.0}, 0.0}, 1), grid);
}

} // namespace

TEST_CASE("energy of the zero state is zero") {
    GridSpec grid(-8.0, 8.0, 32);
    std::vector<double> z(32, 0.0);
    SimState st = init_state_from_samples({z}, {z}, z, grid);
    StepOperator op = make_step_operator(ModeTable(grid), 0.02);
    EnergySample s = energy(st, grid, op);
    CHECK(s.t == 0.0);
    CHECK(s.E == 0.0);
}

TEST_CASE("energy of the c=0.4 soliton matches the closed form and is conserved") {
    GridSpec grid(-24.0, 104.0, 512);
    SimState st = soliton_state(grid);
    StepOperator op = make_step_operator(ModeTable(grid), 0.02);

    // closed-form value of the invariant for this soliton: 20 sqrt(0.84)/27;
    // at h = 1/4 the quadrature carries ~1.7e-11 aliasing in the quartic term
    const double exact = 20.0 * std::sqrt(0.84) / 27.0;
    const double e0 = energy(st, grid, op).E;
    CHECK(std::fabs(e0 - exact) < 1e-10);

    advance(st, op, 10);
    EnergySample s = energy(st, grid, op);
    CHECK(s.t == doctest::Approx(0.2));
    CHECK(std::fabs(s.E - e0) < 1e-6);

    // measuring energy must not advance the run
    const long step_before = st.step;
    const std::vector<double> psi_before = st.psi_phys[0];
    energy(st, grid, op);
    CHECK(st.step == step_before);
    CHECK(st.psi_phys[0] == psi_before);
}

TEST_CASE("energy measurement at a resonant time step refuses to divide") {
    GridSpec grid(0.0, 2.0 * std::numbers::pi, 8);
    std::vector<double> psi0(8), z(8, 0.0);
    for (int j = 0; j < 8; ++j)
        psi0[j] = std::cos(2.0 * (grid.x(j) - grid.a));
    SimState st = init_state_from_samples({psi0}, {z}, z, grid);
    st.zero_nonlinearity = true;
    StepOperator op = make_step_operator(ModeTable(grid), std::numbers::pi);
    advance(st, op, 2);
    CHECK_THROWS_AS(energy(st, grid, op), ResonanceError);
}

TEST_CASE("solution error is zero on the initial data and grows after stepping") {
    GridSpec grid(-24.0, 40.0, 256);
    SimState st = soliton_state(grid);
    const SolitonSpec exact{0.4, {1.0}, 0.0};
    ErrorSample e0 = max_error(st, grid, exact);
    CHECK(e0.t == 0.0);
    CHECK(e0.e == 0.0);

    StepOperator op = make_step_operator(ModeTable(grid), 0.02);
    advance(st, op, 10);
    ErrorSample e1 = max_error(st, grid, exact);
    CHECK(e1.e > 0.0);
    CHECK(e1.e < 1e-3);
}

TEST_CASE("solution error accounts for the component split and the shift") {
    GridSpec grid(-24.0, 40.0, 128);
    SimState st = init_state(build_single_soliton_ic({0.4, {0.6, 0.8}, 5.0}, 2), grid);
    ErrorSample e = max_error(st, grid, SolitonSpec{0.4, {0.6, 0.8}, 5.0});
    CHECK(e.e < 1e-14);

    CHECK_THROWS_AS(max_error(st, grid, SolitonSpec{0.4, {1.0}, 5.0}), ShapeError);
    // wrong shift misses the crest entirely
    CHECK(max_error(st, grid, SolitonSpec{0.4, {0.6, 0.8}, 0.0}).e > 1.0);
}

TEST_CASE("noise hits the prescribed power") {
    const std::size_t n = 10000;
    std::vector<double> v(n, 1e4);
    double sigma = 0.0;
    std::vector<double> noisy = add_noise(v, 50.0, 99, &sigma);
    // signal power 1e8, SNR 50 dB -> noise power 1e3
    CHECK(sigma == doctest::Approx(std::sqrt(1000.0)).epsilon(1e-15));
    double power = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = noisy[j] - v[j];
        power += d * d;
    }
    power /= static_cast<double>(n);
    CHECK(power == doctest::Approx(1000.0).epsilon(0.05));
}

TEST_CASE("noise is deterministic per seed") {
    std::vector<double> v(64);
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = std::sin(0.1 * static_cast<double>(j));
    std::vector<double> a = add_noise(v, 50.0, 12345);
    std::vector<double> b = add_noise(v, 50.0, 12345);
    std::vector<double> c = add_noise(v, 50.0, 12346);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a != v);
}

TEST_CASE("noise edge cases: huge SNR, zero signal") {
    GridSpec grid(-24.0, 40.0, 128);
    std::vector<double> v(128);
    for (int j = 0; j < 128; ++j)
        v[j] = soliton_psi(0.4, 1.0, grid.x(j), 0.0);
    std::vector<double> quiet = add_noise(v, 300.0, 1);
    double worst = 0.0;
    for (int j = 0; j < 128; ++j)
        worst = std::max(worst, std::fabs(quiet[j] - v[j]));
    CHECK(worst < 1e-12);

    double sigma = -1.0;
    std::vector<double> z(32, 0.0);
    CHECK(add_noise(z, 50.0, 1, &sigma) == z);
    CHECK(sigma == 0.0);
    CHECK(add_noise({}, 50.0, 1).empty());
}

TEST_CASE("the recorded generator name is stable") {
    CHECK(std::string(noise_rng_name()) == "mt19937_64+marsaglia-polar");
}
