#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ckg/spectral.hpp"
#include "naive_dft.hpp"

using namespace ckg;
using std::numbers::pi;

namespace {

std::vector<double> random_vec(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v)
        x = dist(rng);
    return v;
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("GridSpec basics and validation") {
    GridSpec g(-24.0, 104.0, 512);
    CHECK(g.h == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.x(0) == -24.0);
    CHECK(g.x(512) == doctest::Approx(104.0));
    CHECK(g.length() == 128.0);

    CHECK_THROWS_AS(GridSpec(-1.0, 1.0, 511), ParamError);
    CHECK_THROWS_AS(GridSpec(-1.0, 1.0, 2), ParamError);
    CHECK_THROWS_AS(GridSpec(1.0, 1.0, 8), ParamError);
    CHECK_THROWS_AS(GridSpec(2.0, -2.0, 8), ParamError);
}

TEST_CASE("ModeTable wavenumbers and index maps") {
    GridSpec g(-4.0, 4.0, 16);
    ModeTable mt(g);

    CHECK(mt.lambda[0] == 1.0);
    for (int s = 0; s < 16; ++s) {
        CHECK(mt.lambda[s] >= 1.0);
        const int l = mt.logical_mode(s);
        CHECK(mt.storage_index(l) == s);
        CHECK(mt.mu[s] == doctest::Approx(2.0 * pi * l / 8.0).epsilon(1e-15));
        CHECK(mt.lambda[s] ==
              doctest::Approx(std::sqrt(mt.mu[s] * mt.mu[s] + 1.0)).epsilon(1e-15));
    }
    CHECK(mt.nyquist_index() == 8);
    CHECK(mt.logical_mode(8) == -8);
    // paired modes are antisymmetric; the Nyquist mode has no partner
    for (int l = 1; l < 8; ++l)
        CHECK(mt.mu[mt.storage_index(-l)] == -mt.mu[mt.storage_index(l)]);
    CHECK(mt.mu[8] == doctest::Approx(-pi * 16 / 8.0));
}

TEST_CASE("forward_dft of constant field is a pure DC mode") {
    GridSpec g(0.0, 2.0, 16);
    std::vector<double> v(16, 1.0);
    auto c = forward_dft(v, g);
    CHECK(std::abs(c[0] - 1.0) < 1e-14);
    for (int s = 1; s < 16; ++s)
        CHECK(std::abs(c[s]) < 1e-14);
}

TEST_CASE("forward_dft of a single cosine mode splits into the +-1 pair") {
    GridSpec g(-3.0, 5.0, 8);
    ModeTable mt(g);
    std::vector<double> v(8);
    for (int j = 0; j < 8; ++j)
        v[j] = std::cos(mt.mu[1] * (g.x(j) - g.a));
    auto c = forward_dft(v, g);
    CHECK(std::abs(c[mt.storage_index(1)] - 0.5) < 1e-14);
    CHECK(std::abs(c[mt.storage_index(-1)] - 0.5) < 1e-14);
    for (int s = 0; s < 8; ++s)
        if (s != 1 && s != 7)
            CHECK(std::abs(c[s]) < 1e-14);
}

TEST_CASE("forward_dft matches the naive definition sum") {
    for (int M : {4, 8, 16, 64}) {
        GridSpec g(-2.5, 7.5, M);
        auto v = random_vec(M, 1000 + M);
        auto fast = forward_dft(v, g);
        auto slow = naive_forward(v, g);
        CHECK(max_abs_diff(fast, slow) < 1e-12);
    }
}

TEST_CASE("inverse_dft matches the naive reconstruction sum") {
    GridSpec g(0.0, 1.0, 16);
    auto v = random_vec(16, 7);
    auto c = forward_dft(v, g);
    auto fast = inverse_dft(c, g);
    auto slow = naive_inverse(c, g);
    double m = 0.0;
    for (int j = 0; j < 16; ++j)
        m = std::max(m, std::abs(fast[j] - slow[j]));
    CHECK(m < 1e-12);
}

TEST_CASE("round-trip is the identity for M = 4..256") {
    for (int M = 4; M <= 256; M *= 2) {
        GridSpec g(-24.0, 104.0, M);
        auto v = random_vec(M, M);
        auto back = inverse_dft(forward_dft(v, g), g);
        double m = 0.0;
        for (int j = 0; j < M; ++j)
            m = std::max(m, std::abs(back[j] - v[j]));
        CHECK(m < 1e-12);
    }
}

TEST_CASE("DC-only coefficients reconstruct a constant") {
    GridSpec g(0.0, 4.0, 8);
    SpectralField c(8, cplx(0.0));
    c[0] = cplx(2.5, 0.0);
    auto v = inverse_dft(c, g);
    for (auto& x : v) {
        CHECK(x.real() == doctest::Approx(2.5).epsilon(1e-15));
        CHECK(std::abs(x.imag()) < 1e-15);
    }
}

TEST_CASE("Hermitian-symmetric coefficients give real output") {
    GridSpec g(0.0, 1.0, 32);
    // build Hermitian data by transforming a real vector
    auto v = random_vec(32, 3);
    auto c = forward_dft(v, g);
    for (int l = 1; l < 16; ++l) {
        auto a = c[l];
        auto b = std::conj(c[32 - l]);
        CHECK(std::abs(a - b) < 1e-14);
    }
    double max_imag = 0.0;
    SpectralTransform tr(g);
    auto w = tr.inverse_real(c, &max_imag);
    CHECK(max_imag < 1e-12);
    for (int j = 0; j < 32; ++j)
        CHECK(std::fabs(w[j] - v[j]) < 1e-13);
}

TEST_CASE("Parseval identity") {
    for (int M : {8, 64, 256}) {
        GridSpec g(-5.0, 5.0, M);
        auto v = random_vec(M, 17 * M);
        auto c = forward_dft(v, g);
        double phys = 0.0, spec = 0.0;
        for (double x : v)
            phys += x * x;
        phys /= M;
        for (auto& z : c)
            spec += std::norm(z);
        CHECK(spec == doctest::Approx(phys).epsilon(1e-12));
    }
}

TEST_CASE("shape mismatches are rejected") {
    GridSpec g(0.0, 1.0, 8);
    std::vector<double> v(7, 0.0);
    CHECK_THROWS_AS(forward_dft(v, g), ShapeError);
    SpectralField c(9);
    CHECK_THROWS_AS(inverse_dft(c, g), ShapeError);
    ModeTable mt(g);
    CHECK_THROWS_AS(spectral_dx(c, mt), ShapeError);
}

TEST_CASE("spectral_dx of a constant is zero") {
    GridSpec g(0.0, 1.0, 8);
    ModeTable mt(g);
    std::vector<double> v(8, 3.0);
    auto d = spectral_dx(forward_dft(v, g), mt);
    for (auto& z : d)
        CHECK(std::abs(z) < 1e-14);
}

TEST_CASE("spectral_dx differentiates a resolved sine exactly") {
    GridSpec g(-3.0, 5.0, 32);
    ModeTable mt(g);
    std::vector<double> v(32);
    for (int j = 0; j < 32; ++j)
        v[j] = std::sin(mt.mu[1] * (g.x(j) - g.a));
    auto d = inverse_dft(spectral_dx(forward_dft(v, g), mt), g);
    for (int j = 0; j < 32; ++j) {
        const double want = mt.mu[1] * std::cos(mt.mu[1] * (g.x(j) - g.a));
        CHECK(std::fabs(d[j].real() - want) < 1e-13);
        CHECK(std::fabs(d[j].imag()) < 1e-13);
    }
}

TEST_CASE("spectral_dx twice equals multiplication by -mu^2") {
    GridSpec g(-1.0, 1.0, 16);
    ModeTable mt(g);
    auto v = random_vec(16, 5);
    auto c = forward_dft(v, g);
    auto dd = spectral_dx(spectral_dx(c, mt), mt);
    for (int s = 0; s < 16; ++s)
        CHECK(std::abs(dd[s] - (-mt.mu[s] * mt.mu[s]) * c[s]) < 1e-12);
}

TEST_CASE("spectral_dx of a sech profile matches the analytic derivative") {
    GridSpec g(-32.0, 32.0, 512);
    ModeTable mt(g);
    std::vector<double> v(512);
    for (int j = 0; j < 512; ++j)
        v[j] = 1.0 / std::cosh(g.x(j));
    auto d = inverse_dft(spectral_dx(forward_dft(v, g), mt), g);
    double m = 0.0;
    for (int j = 0; j < 512; ++j) {
        const double x = g.x(j);
        const double want = -std::tanh(x) / std::cosh(x);
        m = std::max(m, std::abs(d[j].real() - want));
    }
    CHECK(m < 1e-8);
}

TEST_CASE("Nyquist mode keeps its literal wavenumber unless zeroed") {
    GridSpec g(0.0, 2.0, 8);
    ModeTable mt(g);
    SpectralField c(8, cplx(0.0));
    c[mt.nyquist_index()] = cplx(1.0, 0.0);
    auto d = spectral_dx(c, mt);
    CHECK(std::abs(d[mt.nyquist_index()] - cplx(0.0, mt.mu[4])) < 1e-15);
    CHECK(mt.mu[4] == doctest::Approx(-pi * 8 / 2.0));
    auto dz = spectral_dx(c, mt, /*zero_nyquist=*/true);
    CHECK(std::abs(dz[mt.nyquist_index()]) == 0.0);
}

TEST_CASE("dealias_23 zeros only the top third of modes") {
    GridSpec g(0.0, 1.0, 12);
    ModeTable mt(g);
    SpectralField c(12, cplx(1.0, -1.0));
    auto out = dealias_23(c, mt);
    for (int s = 0; s < 12; ++s) {
        if (std::abs(mt.logical_mode(s)) > 4)
            CHECK(out[s] == cplx(0.0));
        else
            CHECK(out[s] == cplx(1.0, -1.0));
    }
}

TEST_CASE("SpectralTransform is reusable and movable") {
    GridSpec g(0.0, 1.0, 64);
    SpectralTransform tr(g);
    auto v1 = random_vec(64, 1);
    auto v2 = random_vec(64, 2);
    auto c1 = tr.forward(std::span<const double>(v1));
    auto c2 = tr.forward(std::span<const double>(v2));
    SpectralTransform tr2 = std::move(tr);
    CHECK(tr2.size() == 64);
    auto b1 = tr2.inverse_real(c1);
    auto b2 = tr2.inverse_real(c2);
    for (int j = 0; j < 64; ++j) {
        CHECK(std::fabs(b1[j] - v1[j]) < 1e-13);
        CHECK(std::fabs(b2[j] - v2[j]) < 1e-13);
    }
}
