#include "zf/stats.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace zf {

double normal_cdf(double z) {
    // Phi(z) = erfc(-z/sqrt(2))/2 at 256 bits; the doubles around it are the
    // only precision loss left
    mpfr_t x, r;
    mpfr_init2(x, 256);
    mpfr_init2(r, 256);
    mpfr_set_d(x, z, MPFR_RNDN);
    mpfr_sqrt_ui(r, 2, MPFR_RNDN);
    mpfr_div(x, x, r, MPFR_RNDN);
    mpfr_neg(x, x, MPFR_RNDN);
    mpfr_erfc(r, x, MPFR_RNDN);
    mpfr_div_ui(r, r, 2, MPFR_RNDN);
    double out = mpfr_get_d(r, MPFR_RNDN);
    mpfr_clear(x);
    mpfr_clear(r);
    return out;
}

namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2 * M_PI); }

}  // namespace

CltReport clt_report(const ExactDistribution& dist, long n) {
    CltReport rep;
    rep.n = n;
    Rat mean = dist.mean(), var = dist.variance();
    if (var <= 0) throw std::domain_error("clt_report: degenerate distribution");
    rep.mean = mean.get_d();
    rep.stddev = std::sqrt(var.get_d());

    // the CDF gap against Phi is extremal at jump points, from either side
    double d = 0;
    Rat cdf(0);
    for (size_t t = 0; t < dist.p.size(); ++t) {
        double z = (static_cast<double>(t) - rep.mean) / rep.stddev;
        double phi = normal_cdf(z);
        double below = cdf.get_d();  // F(t-)
        cdf += dist.p[t];
        double at = cdf.get_d();  // F(t)
        d = std::max(d, std::abs(at - phi));
        d = std::max(d, std::abs(below - phi));
    }
    rep.d_kolmogorov = d;
    rep.scaled = d * std::sqrt(static_cast<double>(n)) / std::log(static_cast<double>(n));
    return rep;
}

LcltReport lclt_report(const ExactDistribution& dist, long n) {
    LcltReport rep;
    rep.n = n;
    Rat mean = dist.mean(), var = dist.variance();
    if (var <= 0) throw std::domain_error("lclt_report: degenerate distribution");
    rep.mean = mean.get_d();
    rep.stddev = std::sqrt(var.get_d());

    long lo = -static_cast<long>(6 * rep.stddev) - 2;
    long hi = static_cast<long>(dist.p.size()) + static_cast<long>(6 * rep.stddev) + 2;
    double sup = 0;
    for (long t = lo; t <= hi; ++t) {
        double pt = (t >= 0 && t < static_cast<long>(dist.p.size())) ? dist.p[t].get_d() : 0.0;
        double z = (static_cast<double>(t) - rep.mean) / rep.stddev;
        sup = std::max(sup, std::abs(pt - normal_pdf(z) / rep.stddev));
    }
    rep.sup_error = sup;
    double ln = std::log(static_cast<double>(n));
    rep.scaled = sup * static_cast<double>(n) / std::pow(ln, 3.5);
    return rep;
}

LocalUniformityReport local_uniformity_check(const AtomicCsp& csp, const ProjectionScheme& special,
                                             const Rat& lam, std::size_t budget) {
    LocalUniformityReport rep;
    int k = csp.max_arity();
    int delta = csp.max_constraint_degree();
    if (k >= 2 && delta >= 1) {
        rep.condition_passed = check_chebyshev_condition(k, delta, csp.domains[0], lam).pass;
    }
    double dk = std::max(static_cast<double>(delta) * k, 1.0);
    CD lamc(lam.get_d(), 0);
    for (int v = 0; v < csp.var_count(); ++v) {
        if (special.special[v] < 0) continue;
        Assignment none = Assignment::empty(csp.var_count());
        CD marg = conditional_marginal(
            csp, special, lamc, none,
            [&](const std::vector<int>& a) {
                return special.bucket_of[v][a[v]] == special.special[v];
            },
            nullptr, budget);
        int q = csp.domains[v];
        double base = lam.get_d() / (q - 1 + lam.get_d());
        LocalUniformityRow row;
        row.var = v;
        row.marginal = marg.real();
        row.lower = base - base / dk;
        row.upper = base + base / dk;
        row.inside = row.marginal >= row.lower - 1e-13 && row.marginal <= row.upper + 1e-13;
        rep.rows.push_back(row);
        if (!row.inside) rep.all_inside = false;
    }
    return rep;
}

ChebyshevReport chebyshev_verify(const ExactDistribution& dist, long n, int k, int delta, int q,
                                 const Rat& lam, const std::vector<double>& delta_grid) {
    ChebyshevReport rep;
    rep.condition_passed = check_chebyshev_condition(k, delta, q, lam).pass;
    Rat mean = dist.mean(), var = dist.variance();
    rep.mean = mean.get_d();
    rep.variance = var.get_d();

    double dk = static_cast<double>(delta) * k;
    rep.variance_bound = 4.0 * dk * (dk + 1) * static_cast<double>(n);
    double base = lam.get_d() / (q - 1 + lam.get_d());
    rep.mean_lower = base * (1 - 1 / dk) * static_cast<double>(n);
    rep.variance_ok = rep.variance <= rep.variance_bound;
    rep.mean_ok = rep.mean >= rep.mean_lower;
    if (!rep.variance_ok || !rep.mean_ok) rep.all_ok = false;

    for (double d : delta_grid) {
        ChebyshevRow row;
        row.delta_rel = d;
        // exact tail: sum p_t over |t - E| >= d*E, in rationals; d converts
        // exactly from its binary expansion
        Rat e = mean;
        Rat dd;
        {
            mpq_t tmp;
            mpq_init(tmp);
            mpq_set_d(tmp, d);
            dd = Rat(mpq_class(tmp));
            mpq_clear(tmp);
        }
        Rat radius = dd * e;
        Rat tail(0);
        for (size_t t = 0; t < dist.p.size(); ++t) {
            Rat dev = Rat(static_cast<long>(t)) - e;
            if (dev < 0) dev = -dev;
            if (dev >= radius) tail += dist.p[t];
        }
        row.tail = tail.get_d();
        row.bound = 4.0 * dk * (dk + 1) /
                    (d * d * base * base * (1 - 1 / dk) * (1 - 1 / dk) * static_cast<double>(n));
        row.vacuous = row.bound >= 1.0;
        row.ok = row.vacuous || row.tail <= row.bound;
        if (!row.ok) rep.all_ok = false;
        rep.rows.push_back(row);
    }
    return rep;
}

double total_influence_exact(const AtomicCsp& csp, const ProjectionScheme& special, const Rat& lam,
                             int v, int value, std::size_t budget) {
    CD lamc(lam.get_d(), 0);
    Assignment pin = Assignment::empty(csp.var_count());
    pin.values[v] = value;
    Assignment none = Assignment::empty(csp.var_count());
    double total = 0;
    for (int u = 0; u < csp.var_count(); ++u) {
        if (u == v || special.special[u] < 0) continue;
        auto event = [&](const std::vector<int>& a) {
            return special.bucket_of[u][a[u]] == special.special[u];
        };
        CD with_pin = conditional_marginal(csp, special, lamc, pin, event, nullptr, budget);
        CD without = conditional_marginal(csp, special, lamc, none, event, nullptr, budget);
        total += std::abs(with_pin - without);
    }
    return total;
}

double total_influence_bound(int k, int delta, int q, int q_star, const Rat& lam) {
    double l = lam.get_d();
    double dk = static_cast<double>(delta) * k;
    double denom = (q - q_star) + q_star * l;
    return 0.5 / q_star * (q_star * l) * (q - q_star) / (denom * denom) * (dk - 1) / dk * (dk - 1) /
           dk;
}

namespace {

struct CountEvents {
    const CnfFormula& f;
    int k_mk, k_umk;
    long alpha_n, beta_n;

    // returns index of first violated event: clause index, or m for the global
    // event, or -1 if none
    int first_violated(const std::vector<std::uint8_t>& marked) const {
        for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
            int m = 0;
            for (int v : f.clauses[ci].vars) m += marked[v];
            int u = static_cast<int>(f.clauses[ci].vars.size()) - m;
            if (m < k_mk || u < k_umk) return static_cast<int>(ci);
        }
        long mt = 0;
        for (std::uint8_t b : marked) mt += b;
        long ut = static_cast<long>(marked.size()) - mt;
        if (mt < alpha_n || ut < beta_n) return static_cast<int>(f.clauses.size());
        return -1;
    }
};

}  // namespace

MarkingResult moser_tardos_marking(const CnfFormula& f, const CnfParams& params,
                                   std::uint64_t seed, double fail_probability) {
    f.validate();
    // precondition: the Chernoff exponent must beat the LLL threshold
    {
        double a = params.alpha, b = params.beta_frac;
        double p_bad = 2 * std::exp(-(1 - a - b) * (1 - a - b) / (6 * (1 + a - b)) * f.k);
        double lll = 1.0 / (2 * std::exp(1.0) * std::max(f.max_degree(), 1) * f.k);
        if (p_bad > lll)
            throw std::domain_error("moser_tardos_marking: marking condition fails at these k, delta");
    }
    MarkingResult res;
    res.seed = seed;
    long n = f.n;
    CountEvents events{f, static_cast<int>(std::ceil(params.alpha * f.k)),
                       static_cast<int>(std::ceil(params.beta_frac * f.k)),
                       static_cast<long>(std::ceil(params.alpha * n)),
                       static_cast<long>(std::ceil(params.beta_frac * n))};
    double mark_p = (1 + params.alpha - params.beta_frac) / 2;
    int attempts = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / fail_probability))));
    long long cap = 6 * n;

    for (int attempt = 0; attempt < attempts; ++attempt) {
        CounterRng rng(seed, static_cast<std::uint64_t>(attempt));
        std::vector<std::uint8_t> marked(n);
        for (long v = 0; v < n; ++v) marked[v] = rng.next_double() < mark_p ? 1 : 0;
        long long steps = 0;
        int bad = events.first_violated(marked);
        while (bad >= 0 && steps < cap) {
            ++steps;
            if (bad < static_cast<int>(f.clauses.size())) {
                for (int v : f.clauses[bad].vars) marked[v] = rng.next_double() < mark_p ? 1 : 0;
            } else {
                for (long v = 0; v < n; ++v) marked[v] = rng.next_double() < mark_p ? 1 : 0;
            }
            bad = events.first_violated(marked);
        }
        res.resample_steps += steps;
        res.attempts_used = attempt + 1;
        if (bad < 0) {
            res.success = true;
            res.marked = std::move(marked);
            break;
        }
    }
    if (res.success) {
        res.min_marked_per_clause = f.k;
        res.min_unmarked_per_clause = f.k;
        for (const auto& c : f.clauses) {
            int m = 0;
            for (int v : c.vars) m += res.marked[v];
            res.min_marked_per_clause = std::min(res.min_marked_per_clause, m);
            res.min_unmarked_per_clause =
                std::min(res.min_unmarked_per_clause, static_cast<int>(c.vars.size()) - m);
        }
        for (std::uint8_t b : res.marked) res.marked_total += b;
        res.unmarked_total = n - res.marked_total;
    }
    return res;
}

bool verify_marking(const CnfFormula& f, const CnfParams& params,
                    const std::vector<std::uint8_t>& marked) {
    if (static_cast<long>(marked.size()) != f.n) return false;
    int k_mk = static_cast<int>(std::ceil(params.alpha * f.k));
    int k_umk = static_cast<int>(std::ceil(params.beta_frac * f.k));
    for (const auto& c : f.clauses) {
        int m = 0;
        for (int v : c.vars) m += marked[v];
        if (m < k_mk || static_cast<int>(c.vars.size()) - m < k_umk) return false;
    }
    long mt = 0;
    for (std::uint8_t b : marked) mt += b;
    if (mt < static_cast<long>(std::ceil(params.alpha * f.n))) return false;
    if (f.n - mt < static_cast<long>(std::ceil(params.beta_frac * f.n))) return false;
    return true;
}

}  // namespace zf
