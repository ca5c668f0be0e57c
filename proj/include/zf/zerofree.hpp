#pragma once

#include <string>
#include <vector>

#include "zf/bigcomplex.hpp"
#include "zf/exact.hpp"
#include "zf/model.hpp"

namespace zf {

struct CertifiedRoot {
    BigComplex value;
    BigFloat radius;     // a-posteriori inclusion radius (rounded up)
    BigFloat residual;   // upper bound on |P(value)|
    int multiplicity = 1;

    CD approx() const { return value.to_cd(); }
};

struct RootSet {
    std::vector<CertifiedRoot> roots;
    int precision_bits = 0;
    int degree = 0;  // sum of multiplicities equals this
    bool converged = true;
    std::string note;

    double max_radius() const;
    double max_residual() const;
};

// All complex roots with multiplicities. Exact square-free decomposition
// (Yun over Q) first, then Aberth-Ehrlich simultaneous iteration on each
// square-free factor, Newton polishing, and interval certification.
RootSet find_roots(const PartitionPolynomial& poly, int precision_bits);

// min over t in [0,1] of |z - t|: |Im z| if Re z in [0,1], else min(|z|, |z-1|)
double distance_to_unit_segment(CD z);
// same, computed at working precision and rounded toward zero (safe lower bound)
BigFloat distance_to_unit_segment_lower(const BigComplex& z);

struct StripVerdict {
    Rat gamma;
    double min_distance = 0;  // over roots: distance minus certification radius
    bool pass = false;
    bool boundary = false;  // interval straddled gamma; fails closed
    RootSet roots;

    std::string to_json() const;
};

StripVerdict verify_strip(const PartitionPolynomial& poly, const Rat& gamma,
                          int precision_bits = 256);

// Constraint-wise self-reduction ratios Z_i/Z_{i-1}, computed two ways and
// compared: by evaluating prefix partition polynomials, and as
// 1 - mu_{i-1}(c_i violated) from exact conditional marginals.
struct SelfReductionStep {
    CD ratio_by_poly;
    CD ratio_by_marginal;
    double disagreement = 0;
    bool marginal_norm_ge_one = false;  // |mu_{i-1}(c_i violated)| >= 1
};

struct SelfReductionChain {
    CD z0 = 1;                     // field-only partition value
    std::vector<SelfReductionStep> steps;
    int zero_index = -1;           // first i with Z_i(lambda) = 0, or -1
    double telescoping_error = 0;  // |prod ratios * Z_0 - Z|
};

SelfReductionChain self_reduction_chain(const AtomicCsp& csp, const ProjectionScheme& special,
                                        CD lam, const std::vector<int>& constraint_order,
                                        std::size_t budget = kDefaultEnumBudget);

}  // namespace zf
