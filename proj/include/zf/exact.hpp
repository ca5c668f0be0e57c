#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zf/bigcomplex.hpp"
#include "zf/model.hpp"
#include "zf/numbers.hpp"

namespace zf {

// Integer-coefficient polynomial in the external field (lambda) or the
// per-violation penalty (beta); coeff[m] counts assignments at exponent m.
struct PartitionPolynomial {
    enum class Var { lambda, beta };
    Var var = Var::lambda;
    std::vector<Int> coeff;

    int degree() const;
    void trim();
    bool is_zero() const;
    Int eval_int(const Int& x) const;
    Rat eval_rat(const Rat& x) const;
    CD eval(CD x) const;
    BigComplex eval_big(const BigComplex& x) const;

    std::string to_json() const;  // array of decimal strings
    static PartitionPolynomial from_json(const std::string& text, Var var = Var::lambda);
};

PartitionPolynomial poly_mul(const PartitionPolynomial& a, const PartitionPolynomial& b);
PartitionPolynomial poly_pow(const PartitionPolynomial& a, unsigned m);
bool poly_equal(const PartitionPolynomial& a, const PartitionPolynomial& b);

// Mixed-radix index space over per-variable alphabet sizes; enumeration order
// is lexicographic with variable 0 slowest.
struct MixedRadix {
    std::vector<int> radix;
    std::vector<std::size_t> stride;
    std::size_t total = 1;

    MixedRadix() = default;
    explicit MixedRadix(std::vector<int> r);
    std::size_t index(const std::vector<int>& digits) const;
    void decode(std::size_t idx, std::vector<int>& digits) const;
};

struct ComplexMeasure {
    MixedRadix space;
    std::vector<CD> w;

    CD sum() const;
    double l1() const;
    double l1_diff(const ComplexMeasure& o) const;
};

// Law of the special-bucket count: exact rationals over support 0..degree.
struct ExactDistribution {
    std::vector<Rat> p;

    Rat mean() const;
    Rat variance() const;
    std::string to_csv() const;  // m, numerator, denominator
};

inline constexpr std::size_t kDefaultEnumBudget = 100'000'000;

std::size_t state_space_size(const AtomicCsp& csp);
std::size_t projected_space_size(const ProjectionScheme& f);

bool satisfies_all(const AtomicCsp& csp, const std::vector<int>& assignment);

// coeff[m] = number of satisfying assignments with exactly m variables whose
// symbol lands in the special bucket of `special`.
PartitionPolynomial brute_force_partition_poly(const AtomicCsp& csp, const ProjectionScheme& special,
                                               std::size_t budget = kDefaultEnumBudget);

// Same polynomial via connected-component factorization of the variable
// interaction graph; components are solved by brute force and convolved.
PartitionPolynomial factorized_partition_poly(const AtomicCsp& csp, const ProjectionScheme& special,
                                              std::size_t budget = kDefaultEnumBudget);

// (lambda + q - 1)^k - lambda^k - (q - 1): one k-edge, field on color 0.
PartitionPolynomial single_edge_closed_form(int k, int q);

// Normalized complex measure over the full original space (zero off the
// satisfying set), weight lambda^{#special}/Z.
ComplexMeasure gibbs_measure(const AtomicCsp& csp, const ProjectionScheme& special, CD lam,
                             std::size_t budget = kDefaultEnumBudget);

// Pushforward of the Gibbs measure onto the bucket space of `proj`.
ComplexMeasure projected_measure(const AtomicCsp& csp, const ProjectionScheme& proj, CD lam,
                                 std::size_t budget = kDefaultEnumBudget);

ExactDistribution exact_law_of_special_count(const PartitionPolynomial& poly, const Rat& lam);

// mu(event | pin) for the Gibbs measure with field lambda; pin may be given
// at the original or the projected level.
CD conditional_marginal(const AtomicCsp& csp, const ProjectionScheme& special, CD lam,
                        const Assignment& pin, const std::function<bool(const std::vector<int>&)>& event,
                        const ProjectionScheme* proj_for_pin = nullptr,
                        std::size_t budget = kDefaultEnumBudget);

// --- coloring fast path -----------------------------------------------------
//
// Exact count of proper colorings consistent with a partial bucket assignment,
// by inclusion-exclusion over monochromatic edge subsets. Exponential in the
// edge count only, so it reaches q far beyond the enumeration budget. Always
// cross-checked against brute force in tests.
Int coloring_count_pinned(const Hypergraph& h, int q, const ProjectionScheme& proj,
                          const std::vector<int>& bucket_pin);

// counts split by the bucket of `var` (pin must leave `var` unassigned)
std::vector<Int> coloring_counts_by_bucket(const Hypergraph& h, int q, const ProjectionScheme& proj,
                                           std::vector<int> bucket_pin, int var);

}  // namespace zf
