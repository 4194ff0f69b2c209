#include "ckg/solutions.hpp"

#include <cmath>
#include <string>

#include "ckg/kernels.hpp"
#include "ckg/spectral.hpp"

namespace ckg {
namespace {

// cosh overflows near |x| ~ 710; beyond 350 sech underflows to 0 anyway
double sech(double x) {
    if (std::fabs(x) > 350.0)
        return 0.0;
    return 1.0 / std::cosh(x);
}

void check_speed(double c) {
    if (!(std::fabs(c) < 1.0))
        throw ParamError("soliton speed must satisfy |c| < 1, got c = " +
                         std::to_string(c));
}

double amp(double c, double alpha) {
    return alpha * std::sqrt((1.0 + c) / (1.0 - c));
}

} // namespace

double soliton_psi(double c, double alpha, double x, double t) {
    check_speed(c);
    const double gamma = std::sqrt(1.0 - c * c);
    return amp(c, alpha) * sech((x - c * t) / gamma);
}

double soliton_psi_t(double c, double alpha, double x, double t) {
    check_speed(c);
    const double gamma = std::sqrt(1.0 - c * c);
    const double th = (x - c * t) / gamma;
    return amp(c, alpha) * (c / gamma) * sech(th) * std::tanh(th);
}

double soliton_psi_tt(double c, double alpha, double x, double t) {
    check_speed(c);
    const double g2 = 1.0 - c * c;
    const double th = (x - c * t) / std::sqrt(g2);
    const double s = sech(th), tnh = std::tanh(th);
    return -amp(c, alpha) * (c * c / g2) * s * (s * s - tnh * tnh);
}

double soliton_q(double c, double x, double t) {
    check_speed(c);
    const double gamma = std::sqrt(1.0 - c * c);
    const double s = sech((x - c * t) / gamma);
    return (2.0 * c / (c - 1.0)) * s * s;
}

double soliton_q_t(double c, double x, double t) {
    check_speed(c);
    const double gamma = std::sqrt(1.0 - c * c);
    const double th = (x - c * t) / gamma;
    const double s = sech(th);
    return (2.0 * c / (c - 1.0)) * (2.0 * c / gamma) * s * s * std::tanh(th);
}

InitialCondition build_single_soliton_ic(const SolitonSpec& spec, int n_components) {
    check_speed(spec.c);
    if (n_components < 1)
        throw ParamError("n_components must be >= 1");
    if (static_cast<int>(spec.alpha.size()) != n_components)
        throw ParamError("expected " + std::to_string(n_components) +
                         " amplitudes, got " + std::to_string(spec.alpha.size()));
    double asq = 0.0;
    for (double a : spec.alpha)
        asq += a * a;
    if (std::fabs(asq - 1.0) > 1e-12)
        throw ParamError("single-soliton amplitudes must satisfy sum alpha^2 = 1, got " +
                         std::to_string(asq));

    InitialCondition ic;
    const double c = spec.c, x0 = spec.x0;
    for (int k = 0; k < n_components; ++k) {
        const double a = spec.alpha[k];
        ic.psi0.push_back([c, a, x0](double x) { return soliton_psi(c, a, x + x0, 0.0); });
        ic.psi1.push_back([c, a, x0](double x) { return soliton_psi_t(c, a, x + x0, 0.0); });
    }
    ic.q0 = [c, x0](double x) { return soliton_q(c, x + x0, 0.0); };
    return ic;
}

InitialCondition build_collision_ic_1c(double x0) {
    if (!(x0 > 0.0))
        throw ParamError("collision dislocation x0 must be positive, got " +
                         std::to_string(x0));
    InitialCondition ic;
    ic.psi0.push_back([x0](double x) {
        return soliton_psi(0.6, 1.0, x + x0, 0.0) + soliton_psi(-0.25, 1.0, x - x0, 0.0);
    });
    ic.psi1.push_back([x0](double x) {
        return soliton_psi_t(0.6, 1.0, x + x0, 0.0) + soliton_psi_t(-0.25, 1.0, x - x0, 0.0);
    });
    ic.q0 = [x0](double x) {
        return soliton_q(0.6, x + x0, 0.0) + soliton_q(-0.25, x - x0, 0.0);
    };
    return ic;
}

InitialCondition build_collision_ic_3c(double x0) {
    if (!(x0 > 0.0))
        throw ParamError("collision dislocation x0 must be positive, got " +
                         std::to_string(x0));
    const double rt2 = std::sqrt(0.5);
    const double rt3h = std::sqrt(3.0) / 2.0;
    InitialCondition ic;
    ic.psi0 = {
        [x0, rt2](double x) {
            return soliton_psi(0.6, rt2, x + x0, 0.0) + soliton_psi(-0.25, -0.5, x - x0, 0.0);
        },
        [x0, rt2](double x) { return soliton_psi(0.6, -rt2, x + x0, 0.0); },
        [x0, rt3h](double x) { return soliton_psi(-0.25, rt3h, x - x0, 0.0); },
    };
    ic.psi1 = {
        [x0, rt2](double x) {
            return soliton_psi_t(0.6, rt2, x + x0, 0.0) +
                   soliton_psi_t(-0.25, -0.5, x - x0, 0.0);
        },
        [x0, rt2](double x) { return soliton_psi_t(0.6, -rt2, x + x0, 0.0); },
        [x0, rt3h](double x) { return soliton_psi_t(-0.25, rt3h, x - x0, 0.0); },
    };
    ic.q0 = [x0](double x) {
        return soliton_q(0.6, x + x0, 0.0) + soliton_q(-0.25, x - x0, 0.0);
    };
    return ic;
}

double pde_residual(const std::vector<double>& psi, const std::vector<double>& q,
                    const GridSpec& grid, double c) {
    const std::size_t M = static_cast<std::size_t>(grid.M);
    if (psi.size() != M || q.size() != M)
        throw ShapeError("pde_residual: field lengths must match grid");
    check_speed(c);

    ModeTable modes(grid);
    SpectralTransform tr(grid);

    auto psi_h = tr.forward(std::span<const double>(psi));
    auto q_h = tr.forward(std::span<const double>(q));

    auto dpsi_h = spectral_dx(psi_h, modes);
    auto psi_x = tr.inverse_real(dpsi_h);
    auto psi_xx = tr.inverse_real(spectral_dx(dpsi_h, modes));
    auto q_x = tr.inverse_real(spectral_dx(q_h, modes));

    // traveling profile: psi_tt = c^2 psi_xx, psi_t = -c psi_x, q_t = -c q_x
    double r1 = 0.0, r2 = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        const double wave = c * c * psi_xx[j] - psi_xx[j] + psi[j] -
                            2.0 * (psi[j] * psi[j] + q[j]) * psi[j];
        const double psi_t = -c * psi_x[j];
        const double transport = -c * q_x[j] - q_x[j] + 2.0 * 2.0 * psi[j] * psi_t;
        r1 = std::max(r1, std::fabs(wave));
        r2 = std::max(r2, std::fabs(transport));
    }
    return std::max(r1, r2);
}

} // namespace ckg
