#include "ckg/diagnostics.hpp"

#include <cmath>
#include <random>

#include "ckg/kernels.hpp"

namespace ckg {

EnergySample energy(SimState& state, const GridSpec& grid, const StepOperator& op) {
    const std::size_t M = static_cast<std::size_t>(grid.M);
    if (state.q_phys.size() != M)
        throw ShapeError("state does not match grid");
    ModeTable modes(grid);

    std::vector<std::vector<double>> phi(state.n_components);
    if (state.step == 0) {
        phi = state.phi_phys0;
    } else {
        NonlinearTerms nl = eval_nonlinear(state, grid);
        std::vector<SpectralField> next = psi_step(state, nl, op);
        for (int c = 0; c < state.n_components; ++c) {
            SpectralField ph = phi_recover(state.psi_prev[c], next[c], op);
            state.to_physical(ph, phi[c]);
        }
    }

    std::vector<double> dpsi(M);
    double sum = 0.0;
    std::vector<double> ssq(M, 0.0);
    const auto& k = kernels::ops();
    for (int c = 0; c < state.n_components; ++c)
        k.accumulate_square(ssq.data(), state.psi_phys[c].data(), M);

    std::vector<double> quad(M, 0.0);
    for (int c = 0; c < state.n_components; ++c) {
        state.to_physical(spectral_dx(state.psi_curr[c], modes), dpsi);
        k.accumulate_square(quad.data(), dpsi.data(), M);
        k.accumulate_square(quad.data(), phi[c].data(), M);
    }
    for (std::size_t j = 0; j < M; ++j) {
        const double q = state.q_phys[j];
        sum += quad[j] + ssq[j] - ssq[j] * ssq[j] + 0.5 * q * q;
    }
    return {state.time(), grid.h * sum};
}

ErrorSample max_error(const SimState& state, const GridSpec& grid,
                      const SolitonSpec& exact) {
    const std::size_t M = static_cast<std::size_t>(grid.M);
    if (state.q_phys.size() != M)
        throw ShapeError("state does not match grid");
    if (static_cast<int>(exact.alpha.size()) != state.n_components)
        throw ShapeError("reference soliton must carry one amplitude per component");
    const double t = state.time();
    std::vector<double> unit(M), eq(M);
    for (std::size_t j = 0; j < M; ++j) {
        const double x = grid.x(static_cast<int>(j)) + exact.x0;
        unit[j] = soliton_psi(exact.c, 1.0, x, t);
        eq[j] = soliton_q(exact.c, x, t);
    }
    const auto& k = kernels::ops();
    std::vector<double> epsi(M);
    double e = k.max_abs_diff(state.q_phys.data(), eq.data(), M);
    for (int c = 0; c < state.n_components; ++c) {
        k.scale(epsi.data(), unit.data(), exact.alpha[static_cast<std::size_t>(c)], M);
        e += k.max_abs_diff(state.psi_phys[c].data(), epsi.data(), M);
    }
    return {t, e};
}

namespace {

// Polar-method Gaussians over an explicitly mapped uniform, so output bits
// do not depend on the platform's std::normal_distribution.
class PolarGaussian {
public:
    explicit PolarGaussian(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_ = true;
        return u * m;
    }

private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    bool have_ = false;
    double spare_ = 0.0;
};

} // namespace

const char* noise_rng_name() { return "mt19937_64+marsaglia-polar"; }

std::vector<double> add_noise(const std::vector<double>& values, double snr_db,
                              std::uint64_t seed, double* sigma_out) {
    if (sigma_out)
        *sigma_out = 0.0;
    if (values.empty())
        return values;
    const double power =
        kernels::ops().sum_sq(values.data(), values.size()) / values.size();
    if (power == 0.0)
        return values;
    const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
    if (sigma_out)
        *sigma_out = sigma;
    PolarGaussian gauss(seed);
    std::vector<double> out(values.size());
    for (std::size_t j = 0; j < values.size(); ++j)
        out[j] = values[j] + sigma * gauss.next();
    return out;
}

} // namespace ckg
