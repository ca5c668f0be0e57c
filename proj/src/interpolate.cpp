#include "zf/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace zf {

PartitionPolynomial fisher_partition_poly(const AtomicCsp& csp, std::size_t budget) {
    csp.validate();
    std::size_t total = state_space_size(csp);
    if (total > budget) throw ResourceError("fisher_partition_poly: state space exceeds budget");
    MixedRadix space(csp.domains);
    PartitionPolynomial p;
    p.var = PartitionPolynomial::Var::beta;
    p.coeff.assign(csp.constraints.size() + 1, Int(0));
    std::vector<int> a(csp.var_count(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        int violated = 0;
        for (const auto& c : csp.constraints) {
            bool hit = true;
            for (size_t i = 0; i < c.vars.size(); ++i)
                if (a[c.vars[i]] != c.forbidden[i]) {
                    hit = false;
                    break;
                }
            if (hit) ++violated;
        }
        p.coeff[violated] += 1;
        for (int v = csp.var_count() - 1; v >= 0; --v) {
            if (++a[v] < csp.domains[v]) break;
            a[v] = 0;
        }
    }
    p.trim();
    return p;
}

ReducedInstance fisher_reduce(const AtomicCsp& csp, CD beta) {
    if (beta == CD(1, 0)) throw std::domain_error("fisher_reduce: beta = 1 is excluded");
    csp.validate();
    ReducedInstance out;
    out.csp.domains = csp.domains;
    int base = csp.var_count();
    for (size_t i = 0; i < csp.constraints.size(); ++i) {
        out.csp.domains.push_back(2);
        out.new_vars.push_back(base + static_cast<int>(i));
        Constraint c = csp.constraints[i];
        c.vars.push_back(base + static_cast<int>(i));
        c.forbidden.push_back(0);
        out.csp.constraints.push_back(std::move(c));
    }
    // field only on the fresh binary variables, at value 1
    out.proj.bucket_of.resize(out.csp.var_count());
    out.proj.bucket_count.resize(out.csp.var_count());
    out.proj.special.resize(out.csp.var_count());
    for (int v = 0; v < base; ++v) {
        int q = out.csp.domains[v];
        out.proj.bucket_of[v].resize(q);
        for (int s = 0; s < q; ++s) out.proj.bucket_of[v][s] = s;
        out.proj.bucket_count[v] = q;
        out.proj.special[v] = -1;
    }
    for (int v = base; v < out.csp.var_count(); ++v) {
        out.proj.bucket_of[v] = {0, 1};
        out.proj.bucket_count[v] = 2;
        out.proj.special[v] = 1;
    }
    out.lambda = beta / (CD(1, 0) - beta);
    return out;
}

ReductionIdentityReport verify_reduction_identity(const AtomicCsp& csp,
                                                  const std::vector<CD>& betas,
                                                  std::size_t budget) {
    ReductionIdentityReport rep;
    PartitionPolynomial zfs = fisher_partition_poly(csp, budget);
    ReducedInstance red = fisher_reduce(csp, CD(0.5, 0));  // structure only; lambda per sample
    PartitionPolynomial zly = brute_force_partition_poly(red.csp, red.proj, budget);

    // polynomial identity: Z^fs(beta) = sum_j c_j beta^j (1-beta)^{|C|-j}
    int m = static_cast<int>(csp.constraints.size());
    PartitionPolynomial rhs;
    rhs.var = PartitionPolynomial::Var::beta;
    rhs.coeff.assign(m + 1, Int(0));
    PartitionPolynomial beta_pow;  // beta^j as polynomial
    for (int j = 0; j <= m && j < static_cast<int>(zly.coeff.size()); ++j) {
        // (1-beta)^(m-j) expanded
        for (int i = 0; i <= m - j; ++i) {
            Int term = zly.coeff[j] * binomial(m - j, i);
            if (i % 2 == 0) rhs.coeff[j + i] += term;
            else rhs.coeff[j + i] -= term;
        }
    }
    rhs.trim();
    rep.polynomial_identity = poly_equal(zfs, rhs);

    for (CD beta : betas) {
        if (beta == CD(1, 0)) continue;
        CD lam = beta / (CD(1, 0) - beta);
        CD lhs = zfs.eval(beta);
        CD factor = std::pow(CD(1, 0) - beta, m);
        CD rhs_val = factor * zly.eval(lam);
        double scale = std::max({std::abs(lhs), std::abs(rhs_val), 1.0});
        rep.max_sample_error = std::max(rep.max_sample_error, std::abs(lhs - rhs_val) / scale);
        ++rep.samples;
    }
    return rep;
}

namespace {

// DFS over constraint subsets in index order; the partial assignment forced so
// far prunes every superset once two constraints disagree on a variable.
struct SubsetEnumerator {
    const AtomicCsp& csp;
    int J;
    std::vector<Int>& a;
    std::vector<int> forced;     // -1 free
    Int free_product;            // product of domain sizes over free variables

    void run() {
        a.assign(J + 1, Int(0));
        Int total = 1;
        for (int q : csp.domains) total *= q;
        a[0] = total;
        free_product = total;
        recurse(0, 0);
    }

    void recurse(int next, int size) {
        if (size == J) return;
        for (int ci = next; ci < static_cast<int>(csp.constraints.size()); ++ci) {
            const Constraint& c = csp.constraints[ci];
            std::vector<std::pair<int, int>> newly;  // (var, old value in forced)
            bool consistent = true;
            Int divided = 1;
            for (size_t i = 0; i < c.vars.size() && consistent; ++i) {
                int v = c.vars[i], val = c.forbidden[i];
                if (forced[v] == -1) {
                    newly.push_back({v, -1});
                    forced[v] = val;
                    divided *= csp.domains[v];
                } else if (forced[v] != val) {
                    consistent = false;
                }
            }
            if (consistent) {
                free_product /= divided;
                a[size + 1] += free_product;
                recurse(ci + 1, size + 1);
                free_product *= divided;
            }
            for (auto& [v, old] : newly) forced[v] = old;
        }
    }
};

}  // namespace

ClusterSeries cluster_series(const AtomicCsp& csp, int J) {
    if (J < 0 || J > 12) throw std::invalid_argument("cluster_series: J in [0, 12]");
    csp.validate();
    ClusterSeries out;
    out.order = J;
    SubsetEnumerator en{csp, J, out.a, std::vector<int>(csp.var_count(), -1), Int(1)};
    en.run();
    return out;
}

ClusterSeries cluster_series_coloring(const Hypergraph& h, int q, int J) {
    h.validate();
    ClusterSeries out;
    out.order = J;
    out.a.assign(J + 1, Int(0));
    int m = static_cast<int>(h.edges.size());
    if (m > 24) throw ResourceError("cluster_series_coloring: too many edges");

    std::function<void(int, std::vector<int>&)> rec = [&](int next, std::vector<int>& chosen) {
        if (!chosen.empty()) {
            int j = static_cast<int>(chosen.size());
            if (j <= J) {
                // components of the chosen edge set share one color each
                std::vector<int> parent(h.n);
                std::iota(parent.begin(), parent.end(), 0);
                std::function<int(int)> find = [&](int x) {
                    while (parent[x] != x) x = parent[x] = parent[parent[x]];
                    return x;
                };
                std::vector<char> touched(h.n, 0);
                for (int ei : chosen) {
                    const auto& e = h.edges[ei];
                    for (int v : e) touched[v] = 1;
                    for (size_t i = 1; i < e.size(); ++i) parent[find(e[i])] = find(e[0]);
                }
                int comps = 0, covered = 0;
                for (int v = 0; v < h.n; ++v) {
                    if (!touched[v]) continue;
                    ++covered;
                    if (find(v) == v) ++comps;
                }
                out.a[j] += int_pow(Int(q), comps) * int_pow(Int(q), h.n - covered);
            }
        }
        if (static_cast<int>(chosen.size()) == J) return;
        for (int ei = next; ei < m; ++ei) {
            chosen.push_back(ei);
            rec(ei + 1, chosen);
            chosen.pop_back();
        }
    };
    std::vector<int> chosen;
    out.a[0] = int_pow(Int(q), h.n);
    rec(0, chosen);
    return out;
}

TruncatedLogCount truncated_log_count(const ClusterSeries& series, int J, const Int* exact_count) {
    if (series.a.empty() || series.a[0] <= 0)
        throw std::invalid_argument("truncated_log_count: a_0 must be positive");
    J = std::min<int>(J, static_cast<int>(series.a.size()) - 1);

    // formal log of A(x) = sum a_j/a_0 x^j: j l_j = j abar_j - sum_{i<j} i l_i abar_{j-i}
    std::vector<Rat> abar(J + 1), l(J + 1, Rat(0));
    for (int j = 0; j <= J; ++j) abar[j] = Rat(series.a[j]) / Rat(series.a[0]);
    for (int j = 1; j <= J; ++j) {
        Rat acc = Rat(static_cast<long>(j)) * abar[j];
        for (int i = 1; i < j; ++i) acc -= Rat(static_cast<long>(i)) * l[i] * abar[j - i];
        l[j] = acc / Rat(static_cast<long>(j));
    }

    TruncatedLogCount out;
    double ln_a0 = std::log(series.a[0].get_d());
    if (!std::isfinite(ln_a0))
        ln_a0 = mpz_sizeinbase(series.a[0].get_mpz_t(), 2) * std::log(2.0);
    out.estimates.assign(1, ln_a0);
    double run = ln_a0;
    for (int j = 1; j <= J; ++j) {
        // evaluate the log series at x = -1 term by term
        double term = l[j].get_d();
        run += (j % 2 == 0) ? term : -term;
        out.estimates.push_back(run);
    }
    if (exact_count && *exact_count > 0) {
        out.exact = std::log(exact_count->get_d());
        out.exact_known = true;
    }
    return out;
}

std::vector<double> TruncatedLogCount::errors() const {
    std::vector<double> e;
    if (!exact_known) return e;
    for (double v : estimates) e.push_back(std::abs(v - exact));
    return e;
}

}  // namespace zf
