#pragma once

#include <string>
#include <vector>

#include "zf/exact.hpp"
#include "zf/model.hpp"

namespace zf {

// coeff[j] = number of assignments violating exactly j constraints
PartitionPolynomial fisher_partition_poly(const AtomicCsp& csp,
                                          std::size_t budget = kDefaultEnumBudget);

// Reduction to an external-field instance: each constraint gains a fresh
// binary variable, the forbidden row extends by 0 there, and the field
// lambda = beta/(1-beta) sits on the new variables at value 1.
struct ReducedInstance {
    AtomicCsp csp;
    ProjectionScheme proj;            // new variables carry the field
    std::vector<int> new_vars;        // one per original constraint
    CD lambda;
};
ReducedInstance fisher_reduce(const AtomicCsp& csp, CD beta);

// Z^fs(beta) == (1-beta)^|C| * Z^ly(beta/(1-beta)); checked as an exact
// polynomial identity and at sampled complex beta.
struct ReductionIdentityReport {
    bool polynomial_identity = false;
    double max_sample_error = 0;
    int samples = 0;
};
ReductionIdentityReport verify_reduction_identity(const AtomicCsp& csp,
                                                  const std::vector<CD>& betas,
                                                  std::size_t budget = kDefaultEnumBudget);

// Taylor coefficients of Z^fs(1+x): a_j = sum over j-subsets of constraints
// of the number of assignments violating all of them. Enumeration is a DFS
// over constraint subsets; inconsistent partial assignments prune the branch.
struct ClusterSeries {
    std::vector<Int> a;  // a[0..J]
    int order = 0;
};
ClusterSeries cluster_series(const AtomicCsp& csp, int J);

// closed form for coloring-derived formulas: sum over edge subsets F of
// q^{components(F)} * q^{n - |vbl(F)|}; validates the generic path
ClusterSeries cluster_series_coloring(const Hypergraph& h, int q, int J);

// Partial estimates of ln Z^fs(0) from the truncated formal log of the series
// evaluated at x = -1; estimates[j] uses orders 1..j.
struct TruncatedLogCount {
    std::vector<double> estimates;    // index 0 = ln a_0 (order 0)
    double exact = 0;                 // ln |Omega|, when available
    bool exact_known = false;
    std::vector<double> errors() const;
};
TruncatedLogCount truncated_log_count(const ClusterSeries& series, int J,
                                      const Int* exact_count = nullptr);

}  // namespace zf
