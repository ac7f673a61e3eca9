#pragma once

#include <functional>
#include <vector>

#include "qmoment/numeric.hpp"

namespace qmoment {

// Gauss-Legendre rule on [-1, 1]: nodes from double-precision Chebyshev
// estimates polished by Newton iteration on P_n at the working precision.
struct GaussLegendre {
    std::vector<Real> nodes;    // ascending
    std::vector<Real> weights;

    static const GaussLegendre& order(int n, long bits);
};

// Integrates a vector-valued integrand over [a, b] split into the given
// panels, applying the rule panel by panel.  The integrand fills `out` with
// its component values at x.
void integrate_panels(const std::vector<Real>& panel_edges, const GaussLegendre& rule,
                      const std::function<void(const Real& x, std::vector<Real>& out)>& fn,
                      std::vector<Real>& accum);

// Panel edges 0 < e_1 < ... <= R placed geometrically with the given ratio,
// matched to the zero spacing of the q-entire functions; both signs.
std::vector<Real> symmetric_geometric_panels(const Real& R, const Real& first, const Real& ratio);

}  // namespace qmoment
