#include "zf/exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <thread>

#include <json.hpp>

namespace zf {

int PartitionPolynomial::degree() const {
    for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i)
        if (coeff[i] != 0) return i;
    return 0;
}

void PartitionPolynomial::trim() {
    while (coeff.size() > 1 && coeff.back() == 0) coeff.pop_back();
}

bool PartitionPolynomial::is_zero() const {
    for (const auto& c : coeff)
        if (c != 0) return false;
    return true;
}

Int PartitionPolynomial::eval_int(const Int& x) const {
    Int r = 0;
    for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i) r = r * x + coeff[i];
    return r;
}

Rat PartitionPolynomial::eval_rat(const Rat& x) const {
    Rat r = 0;
    for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i) r = r * x + Rat(coeff[i]);
    return r;
}

CD PartitionPolynomial::eval(CD x) const {
    CD r = 0;
    for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i) r = r * x + CD(coeff[i].get_d());
    return r;
}

BigComplex PartitionPolynomial::eval_big(const BigComplex& x) const {
    BigComplex r;
    for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i) {
        r = r * x;
        r.re += BigFloat(coeff[i].get_mpz_t());
    }
    return r;
}

std::string PartitionPolynomial::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : coeff) j.push_back(c.get_str());
    return j.dump();
}

PartitionPolynomial PartitionPolynomial::from_json(const std::string& text, Var var) {
    nlohmann::json j = nlohmann::json::parse(text);
    PartitionPolynomial p;
    p.var = var;
    for (const auto& s : j) p.coeff.emplace_back(s.get<std::string>());
    if (p.coeff.empty()) p.coeff.emplace_back(0);
    return p;
}

PartitionPolynomial poly_mul(const PartitionPolynomial& a, const PartitionPolynomial& b) {
    PartitionPolynomial r;
    r.var = a.var;
    r.coeff.assign(a.coeff.size() + b.coeff.size() - 1, Int(0));
    for (size_t i = 0; i < a.coeff.size(); ++i) {
        if (a.coeff[i] == 0) continue;
        for (size_t j = 0; j < b.coeff.size(); ++j) r.coeff[i + j] += a.coeff[i] * b.coeff[j];
    }
    r.trim();
    return r;
}

PartitionPolynomial poly_pow(const PartitionPolynomial& a, unsigned m) {
    PartitionPolynomial r;
    r.var = a.var;
    r.coeff = {Int(1)};
    PartitionPolynomial base = a;
    while (m) {
        if (m & 1) r = poly_mul(r, base);
        m >>= 1;
        if (m) base = poly_mul(base, base);
    }
    return r;
}

bool poly_equal(const PartitionPolynomial& a, const PartitionPolynomial& b) {
    size_t n = std::max(a.coeff.size(), b.coeff.size());
    for (size_t i = 0; i < n; ++i) {
        Int x = i < a.coeff.size() ? a.coeff[i] : Int(0);
        Int y = i < b.coeff.size() ? b.coeff[i] : Int(0);
        if (x != y) return false;
    }
    return true;
}

MixedRadix::MixedRadix(std::vector<int> r) : radix(std::move(r)) {
    stride.resize(radix.size());
    total = 1;
    for (int i = static_cast<int>(radix.size()) - 1; i >= 0; --i) {
        stride[i] = total;
        total *= static_cast<std::size_t>(radix[i]);
    }
}

std::size_t MixedRadix::index(const std::vector<int>& digits) const {
    std::size_t idx = 0;
    for (size_t i = 0; i < radix.size(); ++i) idx += stride[i] * static_cast<std::size_t>(digits[i]);
    return idx;
}

void MixedRadix::decode(std::size_t idx, std::vector<int>& digits) const {
    digits.resize(radix.size());
    for (size_t i = 0; i < radix.size(); ++i) {
        digits[i] = static_cast<int>(idx / stride[i]);
        idx %= stride[i];
    }
}

CD ComplexMeasure::sum() const {
    CD s = 0;
    for (CD x : w) s += x;
    return s;
}

double ComplexMeasure::l1() const {
    double s = 0;
    for (CD x : w) s += std::abs(x);
    return s;
}

double ComplexMeasure::l1_diff(const ComplexMeasure& o) const {
    double s = 0;
    for (size_t i = 0; i < w.size(); ++i) s += std::abs(w[i] - o.w[i]);
    return s;
}

Rat ExactDistribution::mean() const {
    Rat m = 0;
    for (size_t i = 0; i < p.size(); ++i) m += Rat(static_cast<long>(i)) * p[i];
    return m;
}

Rat ExactDistribution::variance() const {
    Rat m = mean(), s = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        Rat d = Rat(static_cast<long>(i)) - m;
        s += d * d * p[i];
    }
    return s;
}

std::string ExactDistribution::to_csv() const {
    std::string out = "m,numerator,denominator\n";
    for (size_t i = 0; i < p.size(); ++i) {
        out += std::to_string(i) + "," + p[i].get_num().get_str() + "," + p[i].get_den().get_str() +
               "\n";
    }
    return out;
}

std::size_t state_space_size(const AtomicCsp& csp) {
    std::size_t t = 1;
    for (int q : csp.domains) {
        if (t > kDefaultEnumBudget * 16) return t;  // saturate, caller compares to budget
        t *= static_cast<std::size_t>(q);
    }
    return t;
}

std::size_t projected_space_size(const ProjectionScheme& f) {
    std::size_t t = 1;
    for (int b : f.bucket_count) t *= static_cast<std::size_t>(b);
    return t;
}

bool satisfies_all(const AtomicCsp& csp, const std::vector<int>& a) {
    for (const auto& c : csp.constraints) {
        bool hit = true;
        for (size_t i = 0; i < c.vars.size(); ++i)
            if (a[c.vars[i]] != c.forbidden[i]) {
                hit = false;
                break;
            }
        if (hit) return false;
    }
    return true;
}

namespace {

int thread_count() {
    if (const char* env = std::getenv("ZF_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned n = std::thread::hardware_concurrency();
    return n ? static_cast<int>(n) : 1;
}

// Enumerate assignments [begin, end) of the mixed-radix space, calling
// fn(assignment, special_count) for the satisfying ones.
template <typename Fn>
void enumerate_satisfying(const AtomicCsp& csp, const ProjectionScheme& special, std::size_t begin,
                          std::size_t end, const MixedRadix& space, Fn&& fn) {
    const int n = csp.var_count();
    std::vector<int> a;
    space.decode(begin, a);
    int special_count = 0;
    for (int v = 0; v < n; ++v)
        if (special.special[v] >= 0 && special.bucket_of[v][a[v]] == special.special[v]) ++special_count;
    for (std::size_t idx = begin; idx < end; ++idx) {
        if (satisfies_all(csp, a)) fn(a, special_count);
        // mixed-radix increment, maintaining the special count
        for (int v = n - 1; v >= 0; --v) {
            bool was = special.special[v] >= 0 && special.bucket_of[v][a[v]] == special.special[v];
            if (++a[v] == csp.domains[v]) {
                a[v] = 0;
                bool now = special.special[v] >= 0 && special.bucket_of[v][a[v]] == special.special[v];
                special_count += int(now) - int(was);
                continue;
            }
            bool now = special.special[v] >= 0 && special.bucket_of[v][a[v]] == special.special[v];
            special_count += int(now) - int(was);
            break;
        }
    }
}

}  // namespace

PartitionPolynomial brute_force_partition_poly(const AtomicCsp& csp, const ProjectionScheme& special,
                                               std::size_t budget) {
    csp.validate();
    special.validate(csp.domains);
    std::size_t total = state_space_size(csp);
    if (total > budget)
        throw ResourceError("brute_force_partition_poly: state space " + std::to_string(total) +
                            " exceeds budget " + std::to_string(budget));
    MixedRadix space(csp.domains);
    const int n = csp.var_count();

    int workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(total / 4096, 1));
    std::vector<std::vector<unsigned long>> partial(workers, std::vector<unsigned long>(n + 1, 0));
    std::vector<std::thread> threads;
    std::size_t chunk = (total + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        std::size_t begin = static_cast<std::size_t>(t) * chunk;
        std::size_t end = std::min(total, begin + chunk);
        if (begin >= end) continue;
        threads.emplace_back([&, t, begin, end] {
            enumerate_satisfying(csp, special, begin, end, space,
                                 [&](const std::vector<int>&, int m) { ++partial[t][m]; });
        });
    }
    for (auto& th : threads) th.join();

    PartitionPolynomial p;
    p.coeff.assign(n + 1, Int(0));
    for (const auto& part : partial)
        for (int m = 0; m <= n; ++m) p.coeff[m] += static_cast<unsigned long>(part[m]);
    p.trim();
    return p;
}

namespace {

// connected components of the variable interaction graph
std::vector<int> variable_components(const AtomicCsp& csp) {
    int n = csp.var_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& c : csp.constraints)
        for (size_t i = 1; i < c.vars.size(); ++i) parent[find(c.vars[i])] = find(c.vars[0]);
    std::vector<int> comp(n);
    for (int v = 0; v < n; ++v) comp[v] = find(v);
    return comp;
}

}  // namespace

PartitionPolynomial factorized_partition_poly(const AtomicCsp& csp, const ProjectionScheme& special,
                                              std::size_t budget) {
    csp.validate();
    special.validate(csp.domains);
    std::vector<int> comp = variable_components(csp);
    std::vector<int> roots;
    for (int v = 0; v < csp.var_count(); ++v)
        if (comp[v] == v) roots.push_back(v);

    PartitionPolynomial result;
    result.coeff = {Int(1)};
    for (int root : roots) {
        std::vector<int> vars;
        for (int v = 0; v < csp.var_count(); ++v)
            if (comp[v] == root) vars.push_back(v);

        if (vars.size() == 1) {
            // a variable in no constraint contributes a linear factor directly
            int v = vars[0];
            bool isolated = true;
            for (const auto& c : csp.constraints)
                for (int u : c.vars)
                    if (u == v) isolated = false;
            if (isolated) {
                int p1 = special.special[v] >= 0 ? special.preimage_size(v, special.special[v]) : 0;
                PartitionPolynomial lin;
                lin.coeff = {Int(csp.domains[v] - p1), Int(p1)};
                lin.trim();
                result = poly_mul(result, lin);
                continue;
            }
        }

        // sub-CSP restricted to this component
        std::vector<int> local(csp.var_count(), -1);
        AtomicCsp sub;
        ProjectionScheme subf;
        for (int v : vars) {
            local[v] = static_cast<int>(sub.domains.size());
            sub.domains.push_back(csp.domains[v]);
            subf.bucket_of.push_back(special.bucket_of[v]);
            subf.bucket_count.push_back(special.bucket_count[v]);
            subf.special.push_back(special.special[v]);
        }
        for (const auto& c : csp.constraints) {
            if (comp[c.vars[0]] != root) continue;
            Constraint cc;
            for (size_t i = 0; i < c.vars.size(); ++i) cc.vars.push_back(local[c.vars[i]]);
            cc.forbidden = c.forbidden;
            sub.constraints.push_back(std::move(cc));
        }
        std::size_t sz = state_space_size(sub);
        if (sz > budget)
            throw ResourceError("factorized_partition_poly: component of " +
                                std::to_string(vars.size()) + " variables has state space " +
                                std::to_string(sz) + " exceeding budget");
        result = poly_mul(result, brute_force_partition_poly(sub, subf, budget));
    }
    return result;
}

PartitionPolynomial single_edge_closed_form(int k, int q) {
    if (k < 2 || q < 2) throw std::invalid_argument("single_edge_closed_form: need k >= 2, q >= 2");
    PartitionPolynomial p;
    p.coeff.assign(k + 1, Int(0));
    // (lambda + q - 1)^k
    for (int m = 0; m <= k; ++m) p.coeff[m] = binomial(k, m) * int_pow(Int(q - 1), k - m);
    p.coeff[k] -= 1;       // - lambda^k
    p.coeff[0] -= (q - 1); // - (q - 1)
    p.trim();
    return p;
}

namespace {

CD weight_of(CD lam, int special_count) {
    CD w = 1;
    for (int i = 0; i < special_count; ++i) w *= lam;
    return w;
}

}  // namespace

ComplexMeasure gibbs_measure(const AtomicCsp& csp, const ProjectionScheme& special, CD lam,
                             std::size_t budget) {
    std::size_t total = state_space_size(csp);
    if (total > budget) throw ResourceError("gibbs_measure: state space exceeds budget");
    ComplexMeasure mu;
    mu.space = MixedRadix(csp.domains);
    mu.w.assign(total, CD(0));
    MixedRadix space(csp.domains);
    CD z = 0;
    enumerate_satisfying(csp, special, 0, total, space, [&](const std::vector<int>& a, int m) {
        CD w = weight_of(lam, m);
        mu.w[space.index(a)] = w;
        z += w;
    });
    if (std::abs(z) < 1e-300)
        throw std::domain_error("gibbs_measure: measure undefined at zero of Z");
    for (auto& x : mu.w) x /= z;
    return mu;
}

ComplexMeasure projected_measure(const AtomicCsp& csp, const ProjectionScheme& proj, CD lam,
                                 std::size_t budget) {
    std::size_t total = state_space_size(csp);
    if (total > budget) throw ResourceError("projected_measure: state space exceeds budget");
    if (projected_space_size(proj) > budget)
        throw ResourceError("projected_measure: projected space exceeds budget");
    ComplexMeasure psi;
    psi.space = MixedRadix(proj.bucket_count);
    psi.w.assign(psi.space.total, CD(0));
    MixedRadix space(csp.domains);
    CD z = 0;
    std::vector<int> buckets(csp.var_count());
    enumerate_satisfying(csp, proj, 0, total, space, [&](const std::vector<int>& a, int m) {
        CD w = weight_of(lam, m);
        for (int v = 0; v < csp.var_count(); ++v) buckets[v] = proj.bucket_of[v][a[v]];
        psi.w[psi.space.index(buckets)] += w;
        z += w;
    });
    if (std::abs(z) < 1e-300)
        throw std::domain_error("projected_measure: measure undefined at zero of Z");
    for (auto& x : psi.w) x /= z;
    return psi;
}

ExactDistribution exact_law_of_special_count(const PartitionPolynomial& poly, const Rat& lam) {
    if (lam <= 0) throw std::domain_error("exact_law_of_special_count: need lambda > 0");
    Rat z = poly.eval_rat(lam);
    if (z <= 0) throw std::domain_error("exact_law_of_special_count: Z(lambda) <= 0");
    ExactDistribution d;
    Rat pw = 1;
    for (size_t m = 0; m < poly.coeff.size(); ++m) {
        d.p.push_back(Rat(poly.coeff[m]) * pw / z);
        pw *= lam;
    }
    return d;
}

CD conditional_marginal(const AtomicCsp& csp, const ProjectionScheme& special, CD lam,
                        const Assignment& pin, const std::function<bool(const std::vector<int>&)>& event,
                        const ProjectionScheme* proj_for_pin, std::size_t budget) {
    std::size_t total = state_space_size(csp);
    if (total > budget) throw ResourceError("conditional_marginal: state space exceeds budget");
    if (pin.projected && !proj_for_pin)
        throw std::invalid_argument("conditional_marginal: projected pin needs a projection");
    MixedRadix space(csp.domains);
    CD num = 0, den = 0;
    enumerate_satisfying(csp, special, 0, total, space, [&](const std::vector<int>& a, int m) {
        bool ok = true;
        for (size_t v = 0; v < a.size(); ++v) {
            if (pin.values[v] < 0) continue;
            int got = pin.projected ? proj_for_pin->bucket_of[v][a[v]] : a[v];
            if (got != pin.values[v]) {
                ok = false;
                break;
            }
        }
        if (!ok) return;
        CD w = weight_of(lam, m);
        den += w;
        if (event(a)) num += w;
    });
    if (std::abs(den) < 1e-300)
        throw std::domain_error("conditional_marginal: conditioning on zero-measure event");
    return num / den;
}

// --- inclusion-exclusion counting for colorings ------------------------------

namespace {

struct PinnedColorCounter {
    const Hypergraph& h;
    int q;
    const ProjectionScheme& proj;
    const std::vector<int>& pin;

    // For a set F of edges forced monochromatic: the count factorizes over
    // connected components of F and over untouched vertices.
    Int count_forced(const std::vector<int>& edge_subset) const {
        int n = h.n;
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::vector<char> touched(n, 0);
        for (int ei : edge_subset) {
            const auto& e = h.edges[ei];
            for (int v : e) touched[v] = 1;
            for (size_t i = 1; i < e.size(); ++i) parent[find(e[i])] = find(e[0]);
        }
        // per component: admissible common colors; buckets pinned inside the
        // component intersect (all projections are the same map here)
        std::vector<int> comp_bucket(n, -2);  // -2 unseen, -1 free, >=0 pinned bucket
        for (int v = 0; v < n; ++v) {
            if (!touched[v]) continue;
            int r = find(v);
            if (pin[v] < 0) {
                if (comp_bucket[r] == -2) comp_bucket[r] = -1;
                continue;
            }
            if (comp_bucket[r] == -2 || comp_bucket[r] == -1) comp_bucket[r] = pin[v];
            else if (comp_bucket[r] != pin[v]) return 0;  // conflicting buckets, no common color
        }
        Int total = 1;
        for (int v = 0; v < n; ++v) {
            if (touched[v]) {
                if (find(v) != v) continue;
                int b = comp_bucket[v];
                total *= (b < 0) ? q : proj.preimage_size(v, b);
            } else {
                total *= (pin[v] < 0) ? q : proj.preimage_size(v, pin[v]);
            }
        }
        return total;
    }
};

}  // namespace

Int coloring_count_pinned(const Hypergraph& h, int q, const ProjectionScheme& proj,
                          const std::vector<int>& bucket_pin) {
    if (h.edges.size() > 24)
        throw ResourceError("coloring_count_pinned: too many edges for inclusion-exclusion");
    PinnedColorCounter counter{h, q, proj, bucket_pin};
    int m = static_cast<int>(h.edges.size());
    Int total = 0;
    std::vector<int> subset;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        subset.clear();
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        Int c = counter.count_forced(subset);
        if (subset.size() % 2 == 0) total += c;
        else total -= c;
    }
    return total;
}

std::vector<Int> coloring_counts_by_bucket(const Hypergraph& h, int q, const ProjectionScheme& proj,
                                           std::vector<int> bucket_pin, int var) {
    if (bucket_pin[var] >= 0)
        throw std::invalid_argument("coloring_counts_by_bucket: var must be unpinned");
    std::vector<Int> counts(proj.bucket_count[var]);
    for (int b = 0; b < proj.bucket_count[var]; ++b) {
        bucket_pin[var] = b;
        counts[b] = coloring_count_pinned(h, q, proj, bucket_pin);
    }
    return counts;
}

}  // namespace zf
