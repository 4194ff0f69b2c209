#include "ckg/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ckg {

GridSpec::GridSpec(double a_, double b_, int M_) : a(a_), b(b_), M(M_) {
    if (!(b > a))
        throw ParamError("grid requires b > a, got [" + std::to_string(a) + ", " +
                         std::to_string(b) + "]");
    if (M < 4 || M % 2 != 0)
        throw ParamError("grid requires even M >= 4, got M = " + std::to_string(M));
    h = (b - a) / M;
}

ModeTable::ModeTable(const GridSpec& grid) : M(grid.M), mu(grid.M), lambda(grid.M) {
    const double k0 = 2.0 * std::numbers::pi / grid.length();
    for (int s = 0; s < M; ++s) {
        const int l = logical_mode(s);
        mu[s] = k0 * l;
        lambda[s] = std::sqrt(mu[s] * mu[s] + 1.0);
    }
}

} // namespace ckg
