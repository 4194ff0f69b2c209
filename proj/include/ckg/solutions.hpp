#pragma once

#include <functional>
#include <vector>

#include "ckg/grid.hpp"

namespace ckg {

/// Parameters of an exact one-soliton solution: speed c, per-component
/// amplitudes alpha_k, and a spatial shift applied as x + x0.
struct SolitonSpec {
    double c = 0.0;
    std::vector<double> alpha;
    double x0 = 0.0;
};

/// Initial data as callables so sampling happens exactly once, on the grid
/// the run uses.
struct InitialCondition {
    using Fn = std::function<double(double)>;
    std::vector<Fn> psi0; // N components at t=0
    std::vector<Fn> psi1; // d/dt of each component at t=0
    Fn q0;
};

/// psi_(c,alpha)(x,t) = alpha*sqrt((1+c)/(1-c))*sech((x-ct)/sqrt(1-c^2))
double soliton_psi(double c, double alpha, double x, double t);

/// Analytic d/dt of soliton_psi:
/// alpha*sqrt((1+c)/(1-c))*(c/sqrt(1-c^2))*sech(th)*tanh(th)
double soliton_psi_t(double c, double alpha, double x, double t);

/// Analytic d2/dt2 of soliton_psi:
/// -alpha*sqrt((1+c)/(1-c))*(c^2/(1-c^2))*sech(th)*(sech(th)^2 - tanh(th)^2)
double soliton_psi_tt(double c, double alpha, double x, double t);

/// Q_c(x,t) = (2c/(c-1))*sech^2((x-ct)/sqrt(1-c^2))
double soliton_q(double c, double x, double t);

/// Analytic d/dt of soliton_q: (2c/(c-1))*(2c/sqrt(1-c^2))*sech^2(th)*tanh(th)
double soliton_q_t(double c, double x, double t);

/// Exact one-soliton initial data spread over n_components amplitudes;
/// requires sum alpha_k^2 = 1 (within 1e-12) and |c| < 1.
InitialCondition build_single_soliton_ic(const SolitonSpec& spec, int n_components);

/// Two-soliton collision data for the one-component system: a c=0.6 soliton
/// centered at -x0 plus a c=-0.25 soliton centered at +x0.
InitialCondition build_collision_ic_1c(double x0);

/// Three-component collision data: the c=0.6 soliton split over components
/// 1,2 with amplitudes 1/sqrt(2), -1/sqrt(2); the c=-0.25 soliton split over
/// components 1,3 with amplitudes -1/2, sqrt(3)/2.
InitialCondition build_collision_ic_3c(double x0);

/// Max-abs residual of both governing equations for a traveling profile of
/// speed c sampled at the grid points (single component). Time derivatives
/// use the traveling-wave identities d/dt = -c d/dx, d2/dt2 = c^2 d2/dx2;
/// space derivatives are spectral. Near zero only if (psi, q) is an actual
/// solution traveling at speed c.
double pde_residual(const std::vector<double>& psi, const std::vector<double>& q,
                    const GridSpec& grid, double c);

} // namespace ckg
