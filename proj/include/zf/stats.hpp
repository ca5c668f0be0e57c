#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zf/conditions.hpp"
#include "zf/exact.hpp"
#include "zf/model.hpp"
#include "zf/rng.hpp"

namespace zf {

struct CltReport {
    long n = 0;                  // variable count behind the law
    double mean = 0, stddev = 0; // from the exact law
    double d_kolmogorov = 0;     // sup_t |F(t) - Phi((t-mean)/sd)|
    double scaled = 0;           // d_K * sqrt(n) / log(n)
};

CltReport clt_report(const ExactDistribution& dist, long n);

struct LcltReport {
    long n = 0;
    double mean = 0, stddev = 0;
    double sup_error = 0;  // sup_t |P(X=t) - density/sd|
    double scaled = 0;     // sup * n / log(n)^{7/2}
};

LcltReport lclt_report(const ExactDistribution& dist, long n);

// High-precision standard normal CDF via erfc.
double normal_cdf(double z);

struct LocalUniformityRow {
    int var = 0;
    double marginal = 0;  // P(sigma_v in special bucket)
    double lower = 0, upper = 0;
    bool inside = false;
};
struct LocalUniformityReport {
    std::vector<LocalUniformityRow> rows;
    bool all_inside = true;
    bool condition_passed = true;  // the LLL-type precondition; failures warn
};

// Marginal of the special symbol per variable vs lambda/(q-1+lambda) * (1 +- 1/(dk));
// delta and k are taken from the atomic formula.
LocalUniformityReport local_uniformity_check(const AtomicCsp& csp, const ProjectionScheme& special,
                                             const Rat& lam, std::size_t budget = kDefaultEnumBudget);

struct ChebyshevRow {
    double delta_rel = 0;   // relative deviation
    double tail = 0;        // exact P(|X - E| >= delta * E)
    double bound = 0;
    bool vacuous = false;   // bound >= 1
    bool ok = true;         // tail <= bound (or vacuous)
};
struct ChebyshevReport {
    bool condition_passed = false;
    double mean = 0, variance = 0;
    double variance_bound = 0;  // 4 dk (dk+1) n
    double mean_lower = 0;      // lambda/(q-1+lambda) (1 - 1/(dk)) n
    bool variance_ok = false, mean_ok = false;
    std::vector<ChebyshevRow> rows;
    bool all_ok = true;
};

// Exact-law tail check against the Chebyshev-type bound for an atomic
// (k, delta)-formula whose law is `dist` on n variables.
ChebyshevReport chebyshev_verify(const ExactDistribution& dist, long n, int k, int delta, int q,
                                 const Rat& lam, const std::vector<double>& delta_grid);

// sum over u != v of |P(u special | v = value) - P(u special)|
double total_influence_exact(const AtomicCsp& csp, const ProjectionScheme& special, const Rat& lam,
                             int v, int value, std::size_t budget = kDefaultEnumBudget);

// bound from the coupling analysis, valid when the CLT condition passes
double total_influence_bound(int k, int delta, int q, int q_star, const Rat& lam);

struct MarkingResult {
    bool success = false;
    std::vector<std::uint8_t> marked;
    int attempts_used = 0;
    long long resample_steps = 0;
    std::uint64_t seed = 0;
    int min_marked_per_clause = 0, min_unmarked_per_clause = 0;
    long marked_total = 0, unmarked_total = 0;
};

// Moser-Tardos marking: each variable marked independently with probability
// (1+alpha-beta)/2; resample the variables of any violated count event until
// none. Deterministic given the seed; step cap 6n per attempt.
MarkingResult moser_tardos_marking(const CnfFormula& f, const CnfParams& params,
                                   std::uint64_t seed, double fail_probability = 1e-6);

// independent re-verification of the count invariants
bool verify_marking(const CnfFormula& f, const CnfParams& params,
                    const std::vector<std::uint8_t>& marked);

}  // namespace zf
