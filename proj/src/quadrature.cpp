#include "qmoment/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace qmoment {

namespace {

// Legendre P_n and P_n' at x by the three-term recurrence.
void legendre_pair(int n, const Real& x, Real& p, Real& dp) {
    Real p0 = upsized(Real(1), prec_of(x));
    Real p1 = x;
    for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1);
}

GaussLegendre build_rule(int n, long bits) {
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    long work = bits + 32;
    for (int i = 0; i < n / 2 + n % 2; ++i) {
        double guess = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        Real x = upsized(Real(guess), work);
        Real p, dp;
        // Newton doubles correct digits per step; iterate past the target
        for (int it = 0; it < 64; ++it) {
            legendre_pair(n, x, p, dp);
            Real step = p / dp;
            x -= step;
            if (step == 0 || exp_of(step) < -(work - 8)) break;
        }
        legendre_pair(n, x, p, dp);
        Real w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

std::mutex rule_mutex;
std::map<std::pair<int, long>, GaussLegendre> rule_cache;

}  // namespace

const GaussLegendre& GaussLegendre::order(int n, long bits) {
    std::lock_guard<std::mutex> lock(rule_mutex);
    auto key = std::make_pair(n, bits);
    auto it = rule_cache.find(key);
    if (it == rule_cache.end()) it = rule_cache.emplace(key, build_rule(n, bits)).first;
    return it->second;
}

void integrate_panels(const std::vector<Real>& panel_edges, const GaussLegendre& rule,
                      const std::function<void(const Real& x, std::vector<Real>& out)>& fn,
                      std::vector<Real>& accum) {
    std::vector<Real> vals;
    for (size_t p = 0; p + 1 < panel_edges.size(); ++p) {
        const Real& a = panel_edges[p];
        const Real& b = panel_edges[p + 1];
        Real mid = (a + b) / 2;
        Real half = (b - a) / 2;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            Real x = mid + half * rule.nodes[i];
            fn(x, vals);
            Real w = half * rule.weights[i];
            for (size_t k = 0; k < vals.size(); ++k) accum[k] += w * vals[k];
        }
    }
}

std::vector<Real> symmetric_geometric_panels(const Real& R, const Real& first,
                                             const Real& ratio) {
    std::vector<Real> pos;
    Real e = first;
    while (e < R) {
        pos.push_back(e);
        e *= ratio;
    }
    std::vector<Real> edges;
    edges.push_back(-R);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) edges.push_back(-*it);
    edges.push_back(Real(0));
    for (const auto& x : pos) edges.push_back(x);
    edges.push_back(R);
    return edges;
}

}  // namespace qmoment
