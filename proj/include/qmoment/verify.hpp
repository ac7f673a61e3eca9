#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmoment/nevanlinna.hpp"

namespace qmoment {

struct CheckResult {
    std::string name;
    Real residual;   // worst residual observed (0 for exact boolean checks)
    Real tolerance;  // 0 means the check must hold exactly
    bool pass = false;
    std::string note;
};

using CheckList = std::vector<CheckResult>;

// Seeded uniform dyadic in [-a, a] (or [lo, hi]); the grids behind every
// randomized suite are reproducible from the RunConfig seed.
class RandomGrid {
  public:
    explicit RandomGrid(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    Real uniform(double lo, double hi);
    Real nonzero(double a);  // uniform in [-a,a] bounded away from 0

  private:
    std::uint64_t next();
    std::uint64_t state_;
};

CheckList verify_series(const QContext& ctx, std::uint64_t seed);
CheckList verify_functions(const QContext& ctx, std::uint64_t seed);
CheckList verify_polynomials(const QContext& ctx, std::uint64_t seed);
CheckList verify_cassini(const QContext& ctx);
CheckList verify_nevanlinna(const QContext& ctx, std::uint64_t seed);
CheckList verify_orthogonality_suite(const QContext& ctx, const std::optional<MeasureParam>& param,
                                     long n_max, long count, const Real& tol);
CheckList verify_moments_suite(const QContext& ctx, long k_max);
CheckList verify_aq(const QContext& ctx, long n_max, long count);

}  // namespace qmoment
