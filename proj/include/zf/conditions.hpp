#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zf/exact.hpp"
#include "zf/interval.hpp"
#include "zf/model.hpp"
#include "zf/numbers.hpp"

namespace zf {

struct ConditionItem {
    std::string name;
    Verdict verdict = Verdict::Indeterminate;
    std::string lhs, rhs;  // decimal intermediates at the precision that settled it
};

struct ConditionReport {
    std::string condition_id;
    bool pass = false;
    bool indeterminate = false;  // some item never settled at the precision cap
    std::vector<ConditionItem> items;
    std::map<std::string, std::string> quantities;

    std::string to_json() const;
};

struct ColoringParams {
    int k = 0;
    int delta = 0;
    int q = 0;
    int B = 0;
    int s = 0;               // floor((q-1)/B)
    Rat lambda_c = Rat(1);   // center of the disk, in [0,1]
    Rat gamma;               // 1/(16 delta^2 k^5)
    Int rho;                 // 608 q delta^2 k^5

    static ColoringParams make(int k, int delta, int q, int B, std::optional<Rat> lambda_c = {});
};

struct CnfParams {
    int k = 0;
    int delta = 0;
    int k_mk = 0;
    int k_umk = 0;
    double alpha = 0;      // marked fraction target (k_mk / k when derived)
    double beta_frac = 0;  // unmarked fraction target
    Rat lambda_c = Rat(1);
    Rat gamma;             // 1/(2000 delta^2 k^5)
    Int s_cnf;             // 2000 delta^2 k^5

    static CnfParams make(int k, int delta, double alpha, double beta_frac,
                          std::optional<Rat> lambda_c = {});
};

// Items: s^k >= 608 e q^2 d^3 k^5;  16 e^2 d^2 k^4 q (4s/q)^k <= 1;
// lambda_c in [0,1] (and |lambda - lambda_c| <= gamma when lambda given).
ConditionReport check_coloring_condition(const ColoringParams& p, std::optional<CD> lambda = {});

// q = ceil(700 * delta^(5/(k-10))), B = floor(q^(2/5)), s = floor((q-1)/B);
// the resulting parameters must pass check_coloring_condition.
ColoringParams derive_coloring_params(int k, int delta);

ConditionReport check_cnf_condition(const CnfParams& p, std::optional<CD> lambda = {});

double zeta(double r_max);
RInterval zeta_interval(const RInterval& r_max, mpfr_prec_t prec);

// (8e)^3 * max(1, 1/lambda) * r_max^(k-1) * (dk+1)^(2+zeta) <= 1,
// r_max = max(1, lambda)/(q - 1 + lambda)
ConditionReport check_chebyshev_condition(int k, int delta, int q, const Rat& lam);

// 16 e^2 * (q - q* + q* l)^2/(l (q - q*)) * r_max^(2(k-1)/(2+zeta)) * (dk+1)^4 <= 1
ConditionReport check_clt_condition(int k, int delta, int q, int q_star, const Rat& lam);

// Two-step projection condition; delta is the hyperedge degree and the
// atomized degree q*delta enters the dependency factors.
ConditionReport check_lclt_condition(int k, int delta, int q, int q_star, const Rat& lam, int B1,
                                     int B2);

// Per-variable oblivious measures b_v over buckets plus bot. Values are kept
// in the exact field Q(i) so normalization is an identity, with complex-double
// views for the dynamics.
struct DecompositionScheme {
    enum class Tag { Coloring, Cnf, Custom };
    Tag tag = Tag::Custom;
    std::vector<std::vector<GaussRat>> b;  // [v][bucket]
    std::vector<GaussRat> b_bot;
    // |lambda - lambda_c| <= gamma, decided exactly; out-of-window schemes are
    // legal for experiments, this only records the warning
    bool lambda_in_window = true;

    CD b_cd(int v, int bucket) const { return b[v][bucket].to_cd(); }
    CD bot_cd(int v) const { return b_bot[v].to_cd(); }
    GaussRat sum(int v) const;
};

// lambda as an exact complex rational (re, im)
GaussRat gauss_from(const Rat& re, const Rat& im);

DecompositionScheme build_coloring_decomposition(const ColoringParams& p, const GaussRat& lam,
                                                 const ProjectionScheme& proj);

// exp(1/s) enters the CNF scheme; it is evaluated to `digits` decimal digits
// and rounded to a rational, after which normalization is restored exactly by
// solving for b(bot). Tests pin the formula values at double accuracy.
DecompositionScheme build_cnf_decomposition(const CnfParams& p, const GaussRat& lam,
                                            const ProjectionScheme& proj, int digits = 40);

struct InductionBounds {
    double n_hat = 0;
    double m_hat = 0;
    enum class Mode { ExactOnInstance, ClosedFormBound } mode = Mode::ExactOnInstance;
    double product_log = 0;  // log of 4 e d^2 k^4 * n_hat * m_hat^(4 d^2 k^5)
    bool product_le_quarter = false;
    std::vector<std::string> notes;
};

// Exact N-hat / M-hat by enumerating every extendable projected pinning of a
// coloring instance; conditionals come from inclusion-exclusion counts, so q
// may exceed the enumeration budget. Constraints are grouped per hyperedge.
// c_star (edge index) is excluded from the measure but included in the max.
InductionBounds compute_nhat_mhat_exact(const Hypergraph& h, int q, const ProjectionScheme& proj,
                                        CD lam, const DecompositionScheme& scheme,
                                        int c_star = -1, std::size_t pin_budget = 600000);

// Closed forms from the coloring analysis: N <= e q (4s/q)^k, M <= 1 + 1/(4 d^2 k^5).
InductionBounds closed_form_bounds(const ColoringParams& p);
// CNF analogue: N <= e (max(1, l_c + g)/(1 + l_c - g))^k_mk, same M bound.
InductionBounds closed_form_bounds(const CnfParams& p);

}  // namespace zf
