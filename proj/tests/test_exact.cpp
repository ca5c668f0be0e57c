#include <doctest.h>

#include <complex>

#include "zf/corpus.hpp"
#include "zf/exact.hpp"
#include "zf/model.hpp"

using namespace zf;

namespace {

// independent oracle: direct loop over all assignments, no shared machinery
PartitionPolynomial oracle_poly(const AtomicCsp& csp, const ProjectionScheme& f) {
    MixedRadix space(csp.domains);
    PartitionPolynomial p;
    p.coeff.assign(csp.var_count() + 1, Int(0));
    std::vector<int> a;
    for (std::size_t idx = 0; idx < space.total; ++idx) {
        space.decode(idx, a);
        bool sat = true;
        for (const auto& c : csp.constraints) {
            bool hit = true;
            for (size_t i = 0; i < c.vars.size(); ++i)
                if (a[c.vars[i]] != c.forbidden[i]) hit = false;
            if (hit) sat = false;
        }
        if (!sat) continue;
        int m = 0;
        for (int v = 0; v < csp.var_count(); ++v)
            if (f.special[v] >= 0 && f.bucket_of[v][a[v]] == f.special[v]) ++m;
        p.coeff[m] += 1;
    }
    p.trim();
    return p;
}

AtomicCsp coloring(const Hypergraph& h, int q) { return coloring_to_atomic_csp(h, q); }

}  // namespace

TEST_CASE("brute force matches the frozen single-edge values") {
    // 6l^2 + 12l + 6 for one 3-edge with q = 3 (27 colorings enumerated)
    AtomicCsp csp = coloring(make_single_edge(3), 3);
    ProjectionScheme f = make_coloring_projection(3, 2, 3);
    PartitionPolynomial p = brute_force_partition_poly(csp, f);
    CHECK(p.coeff.size() == 3);
    CHECK(p.coeff[0] == 6);
    CHECK(p.coeff[1] == 12);
    CHECK(p.coeff[2] == 6);

    // 2l for one 2-edge with q = 2
    AtomicCsp csp2 = coloring(make_single_edge(2), 2);
    // q = 2 only admits B = 1
    ProjectionScheme f2 = make_coloring_projection(2, 1, 2);
    PartitionPolynomial p2 = brute_force_partition_poly(csp2, f2);
    CHECK(p2.degree() == 1);
    CHECK(p2.coeff[0] == 0);
    CHECK(p2.coeff[1] == 2);

    // empty edge set, n = 1, q = 3: lambda + 2
    AtomicCsp free;
    free.domains = {3};
    ProjectionScheme f3 = make_coloring_projection(3, 2, 1);
    PartitionPolynomial p3 = brute_force_partition_poly(free, f3);
    CHECK(p3.coeff[0] == 2);
    CHECK(p3.coeff[1] == 1);
}

TEST_CASE("single-edge closed form equals brute force") {
    for (auto [k, q] : std::vector<std::pair<int, int>>{{3, 3}, {2, 2}, {2, 5}, {3, 4}, {4, 3}}) {
        AtomicCsp csp = coloring(make_single_edge(k), q);
        ProjectionScheme f = make_coloring_projection(q, std::min(2, q - 1), k);
        CHECK(poly_equal(single_edge_closed_form(k, q), brute_force_partition_poly(csp, f)));
    }
    // the k = 50, q = 700 value at 1: 700^50 - 1 - 699
    PartitionPolynomial big = single_edge_closed_form(50, 700);
    Int expected = int_pow(Int(700), 50) - 1 - 699;
    CHECK(big.eval_int(Int(1)) == expected);
    CHECK(big.degree() == 49);  // the lambda^50 terms cancel
    CHECK_THROWS_AS(single_edge_closed_form(1, 3), std::invalid_argument);
}

TEST_CASE("factorized equals brute force, including product identities") {
    // m disjoint 3-edges with q=3: (6l^2+12l+6)^m
    PartitionPolynomial base = single_edge_closed_form(3, 3);
    for (int m : {1, 2}) {
        AtomicCsp csp = coloring(make_disjoint_edges(3, m), 3);
        ProjectionScheme f = make_coloring_projection(3, 2, 3 * m);
        PartitionPolynomial fact = factorized_partition_poly(csp, f);
        CHECK(poly_equal(fact, poly_pow(base, m)));
        CHECK(poly_equal(fact, brute_force_partition_poly(csp, f)));
    }
    // edge + isolated vertex: (6l^2+12l+6) * (l+2)
    Hypergraph h = make_single_edge(3);
    h.n = 4;
    AtomicCsp csp = coloring(h, 3);
    ProjectionScheme f = make_coloring_projection(3, 2, 4);
    PartitionPolynomial fact = factorized_partition_poly(csp, f);
    PartitionPolynomial lin;
    lin.coeff = {Int(2), Int(1)};
    CHECK(poly_equal(fact, poly_mul(base, lin)));
    CHECK(poly_equal(fact, brute_force_partition_poly(csp, f)));
}

TEST_CASE("oracle corpus: factorized == brute force exactly") {
    auto corpus = oracle_corpus(25, 7);
    for (const auto& c : corpus) {
        PartitionPolynomial b = brute_force_partition_poly(c.csp, c.special);
        PartitionPolynomial f = factorized_partition_poly(c.csp, c.special);
        PartitionPolynomial o = oracle_poly(c.csp, c.special);
        CHECK(poly_equal(b, o));
        CHECK(poly_equal(f, o));
    }
    CHECK(corpus_manifest(corpus).size() > 0);
}

TEST_CASE("budget errors are explicit") {
    AtomicCsp csp = coloring(make_disjoint_edges(3, 2), 3);
    ProjectionScheme f = make_coloring_projection(3, 2, 6);
    CHECK_THROWS_AS(brute_force_partition_poly(csp, f, 10), ResourceError);
    CHECK_THROWS_AS(factorized_partition_poly(csp, f, 10), ResourceError);
}

TEST_CASE("gibbs measure normalization and uniform case") {
    AtomicCsp csp = coloring(make_single_edge(3), 3);
    ProjectionScheme f = make_coloring_projection(3, 2, 3);
    ComplexMeasure mu = gibbs_measure(csp, f, CD(1, 0));
    CHECK(std::abs(mu.sum() - CD(1, 0)) < 1e-12);
    // lambda = 1: uniform over the 24 proper colorings
    int support = 0;
    for (CD w : mu.w)
        if (std::abs(w) > 0) {
            ++support;
            CHECK(std::abs(w - CD(1.0 / 24, 0)) < 1e-15);
        }
    CHECK(support == 24);
    // mass of colorings avoiding color 0 = 6/24
    double mass0 = 0;
    std::vector<int> a;
    for (std::size_t i = 0; i < mu.w.size(); ++i) {
        mu.space.decode(i, a);
        bool any0 = false;
        for (int x : a)
            if (x == 0) any0 = true;
        if (!any0) mass0 += mu.w[i].real();
    }
    CHECK(mass0 == doctest::Approx(6.0 / 24).epsilon(1e-12));

    // lambda at a root of Z: Z = 6(l+1)^2 vanishes at -1
    CHECK_THROWS_AS(gibbs_measure(csp, f, CD(-1, 0)), std::domain_error);
}

TEST_CASE("projected measure: identity and collapse") {
    AtomicCsp csp = coloring(make_single_edge(3), 3);
    ProjectionScheme special = make_coloring_projection(3, 2, 3);
    ComplexMeasure mu = gibbs_measure(csp, special, CD(0.7, 0.1));

    ProjectionScheme id = identity_projection(csp.domains, 0);
    ComplexMeasure pushed = projected_measure(csp, id, CD(0.7, 0.1));
    CHECK(pushed.l1_diff(mu) < 1e-12);

    // all-to-one: a single point of measure 1 — no field anywhere, so weight
    // must agree: use lambda = 1
    ProjectionScheme one = all_to_one_projection(csp.domains);
    ComplexMeasure collapsed = projected_measure(csp, one, CD(1, 0));
    CHECK(collapsed.w.size() == 1);
    CHECK(std::abs(collapsed.w[0] - CD(1, 0)) < 1e-12);
}

TEST_CASE("projected measure sums pushforward mass per bucket cell") {
    Hypergraph h;
    h.n = 4;
    h.k = 3;
    h.edges = {{0, 1, 2}, {1, 2, 3}};
    AtomicCsp csp = coloring(h, 6);
    ProjectionScheme f = make_coloring_projection(6, 2, 4);
    ComplexMeasure psi = projected_measure(csp, f, CD(1, 0));
    CHECK(psi.w.size() == 81);
    CHECK(std::abs(psi.sum() - CD(1, 0)) < 1e-12);
    // compare one cell against a direct count: bucket tuple (1,1,2,2)
    ComplexMeasure mu = gibbs_measure(csp, f, CD(1, 0));
    std::vector<int> a;
    CD direct = 0;
    for (std::size_t i = 0; i < mu.w.size(); ++i) {
        mu.space.decode(i, a);
        if (f.bucket_of[0][a[0]] == 1 && f.bucket_of[1][a[1]] == 1 && f.bucket_of[2][a[2]] == 2 &&
            f.bucket_of[3][a[3]] == 2)
            direct += mu.w[i];
    }
    std::vector<int> cell = {1, 1, 2, 2};
    CHECK(std::abs(psi.w[psi.space.index(cell)] - direct) < 1e-14);
}

TEST_CASE("law of the special count") {
    PartitionPolynomial p;
    p.coeff = {Int(6), Int(12), Int(6)};
    ExactDistribution d = exact_law_of_special_count(p, Rat(1));
    CHECK(d.p[0] == Rat(1, 4));
    CHECK(d.p[1] == Rat(1, 2));
    CHECK(d.p[2] == Rat(1, 4));
    CHECK(d.mean() == Rat(1));
    CHECK(d.variance() == Rat(1, 2));

    // convolution: mean m, variance m/2
    for (int m : {2, 5}) {
        ExactDistribution dm = exact_law_of_special_count(poly_pow(p, m), Rat(1));
        Rat total = 0;
        for (const auto& x : dm.p) total += x;
        CHECK(total == Rat(1));
        CHECK(dm.mean() == Rat(m));
        CHECK(dm.variance() == Rat(m) / Rat(2));
    }
    CHECK_THROWS_AS(exact_law_of_special_count(p, Rat(-1)), std::domain_error);
}

TEST_CASE("conditional marginal on the single 3-edge") {
    AtomicCsp csp = coloring(make_single_edge(3), 3);
    ProjectionScheme f = make_coloring_projection(3, 2, 3);
    Assignment pin = Assignment::empty(3);
    pin.values[0] = 0;

    // oracle: enumerate the 9 completions, drop monochromatic, count v1 = 0
    int total = 0, hits = 0;
    for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
            if (b == 0 && c == 0) continue;  // the monochromatic completion
            ++total;
            if (b == 0) ++hits;
        }
    CD got = conditional_marginal(csp, f, CD(1, 0), pin,
                                  [](const std::vector<int>& a) { return a[1] == 0; });
    CHECK(std::abs(got - CD(double(hits) / total, 0)) < 1e-14);
    CHECK(hits == 2);
    CHECK(total == 8);

    // whole space conditional is 1
    CD one = conditional_marginal(csp, f, CD(1, 0), pin,
                                  [](const std::vector<int>&) { return true; });
    CHECK(std::abs(one - CD(1, 0)) < 1e-14);

    // pin inconsistent with all solutions
    AtomicCsp rigid = coloring(make_single_edge(2), 2);
    ProjectionScheme f2 = make_coloring_projection(2, 1, 2);
    Assignment bad = Assignment::empty(2);
    bad.values[0] = 0;
    bad.values[1] = 0;
    CHECK_THROWS_AS(conditional_marginal(rigid, f2, CD(1, 0), bad,
                                         [](const std::vector<int>&) { return true; }),
                    std::domain_error);
}

TEST_CASE("law of total measure over a partition of events") {
    AtomicCsp csp = coloring(make_single_edge(3), 4);
    ProjectionScheme f = make_coloring_projection(4, 2, 3);
    for (CD lam : {CD(1, 0), CD(0.5, 0.25), CD(-0.05, 0.1)}) {
        ComplexMeasure psi = projected_measure(csp, f, lam);
        CD total = 0;
        for (CD w : psi.w) total += w;  // cells partition the projected space
        CHECK(std::abs(total - CD(1, 0)) < 1e-12);
    }
}

TEST_CASE("inclusion-exclusion counts match enumeration") {
    Hypergraph h;
    h.n = 5;
    h.k = 3;
    h.edges = {{0, 1, 2}, {2, 3, 4}};
    int q = 5;
    ProjectionScheme f = make_coloring_projection(q, 2, h.n);
    AtomicCsp csp = coloring(h, q);
    MixedRadix space(csp.domains);

    std::vector<int> pin = {-1, 1, -1, 2, 0};
    Int direct = 0;
    std::vector<int> a;
    for (std::size_t i = 0; i < space.total; ++i) {
        space.decode(i, a);
        bool ok = satisfies_all(csp, a);
        for (int v = 0; v < h.n && ok; ++v)
            if (pin[v] >= 0 && f.bucket_of[v][a[v]] != pin[v]) ok = false;
        if (ok) direct += 1;
    }
    CHECK(coloring_count_pinned(h, q, f, pin) == direct);

    std::vector<int> open = pin;
    open[0] = -1;
    auto by_bucket = coloring_counts_by_bucket(h, q, f, open, 0);
    Int sum = 0;
    for (const auto& x : by_bucket) sum += x;
    CHECK(sum == coloring_count_pinned(h, q, f, open));
}

TEST_CASE("polynomial json round trip") {
    PartitionPolynomial p = single_edge_closed_form(5, 7);
    PartitionPolynomial q = PartitionPolynomial::from_json(p.to_json());
    CHECK(poly_equal(p, q));
    ExactDistribution d = exact_law_of_special_count(p, Rat(1));
    CHECK(d.to_csv().find("m,numerator,denominator") == 0);
}
