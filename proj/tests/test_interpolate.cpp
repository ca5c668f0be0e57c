#include <doctest.h>

#include <cmath>

#include "zf/corpus.hpp"
#include "zf/exact.hpp"
#include "zf/interpolate.hpp"
#include "zf/model.hpp"

using namespace zf;

TEST_CASE("fisher polynomial: frozen small cases") {
    // single 2-edge, q=2, atomized: 2 + 2 beta
    AtomicCsp csp = coloring_to_atomic_csp(make_single_edge(2), 2);
    PartitionPolynomial p = fisher_partition_poly(csp);
    REQUIRE(p.coeff.size() >= 2);
    CHECK(p.coeff[0] == 2);
    CHECK(p.coeff[1] == 2);
    CHECK(p.degree() == 1);

    // no constraints: constant q^n
    AtomicCsp free;
    free.domains = {3, 3};
    PartitionPolynomial pf = fisher_partition_poly(free);
    CHECK(pf.degree() == 0);
    CHECK(pf.coeff[0] == 9);

    // value at beta=0 equals the proper-coloring count Z(lambda=1)
    AtomicCsp c3 = coloring_to_atomic_csp(make_single_edge(3), 3);
    ProjectionScheme f3 = make_coloring_projection(3, 2, 3);
    PartitionPolynomial fisher = fisher_partition_poly(c3);
    PartitionPolynomial ly = brute_force_partition_poly(c3, f3);
    CHECK(fisher.coeff[0] == ly.eval_int(Int(1)));
    // value at beta=1 equals q^n
    CHECK(fisher.eval_int(Int(1)) == 27);
}

TEST_CASE("fisher reduction structure") {
    AtomicCsp csp = coloring_to_atomic_csp(make_single_edge(2), 2);
    ReducedInstance red = fisher_reduce(csp, CD(0.5, 0));
    CHECK(red.new_vars.size() == 2);
    CHECK(red.csp.constraints.size() == 2);
    for (const auto& c : red.csp.constraints) CHECK(c.vars.size() == 3);  // arity k+1
    CHECK(red.csp.max_constraint_degree() == csp.max_constraint_degree());
    CHECK(std::abs(red.lambda - CD(1, 0)) < 1e-15);  // beta=1/2 -> lambda=1
    CHECK_THROWS_AS(fisher_reduce(csp, CD(1, 0)), std::domain_error);

    // Z^ly(0) = |Omega|: the new variables are forced wherever constraints bind
    PartitionPolynomial zly = brute_force_partition_poly(red.csp, red.proj);
    PartitionPolynomial fisher = fisher_partition_poly(csp);
    CHECK(zly.coeff[0] == fisher.coeff[0]);
    CHECK(zly.degree() <= static_cast<int>(csp.constraints.size()));
}

TEST_CASE("reduction identity: exact polynomial and sampled") {
    std::vector<CD> betas = {CD(0.3, 0), CD(0.1, 0.2), CD(-0.4, 0.05), CD(0, 0)};
    for (auto [k, q, m] : std::vector<std::tuple<int, int, int>>{{2, 2, 1}, {2, 3, 2}, {3, 3, 1}}) {
        AtomicCsp csp = coloring_to_atomic_csp(make_disjoint_edges(k, m), q);
        ReductionIdentityReport rep = verify_reduction_identity(csp, betas);
        CHECK(rep.polynomial_identity);
        CHECK(rep.max_sample_error < 1e-12);
        CHECK(rep.samples == static_cast<int>(betas.size()));
    }
}

TEST_CASE("cluster series: frozen values and the binomial transform") {
    AtomicCsp csp = coloring_to_atomic_csp(make_single_edge(3), 3);
    ClusterSeries s = cluster_series(csp, 3);
    CHECK(s.a[0] == 27);  // q^n
    CHECK(s.a[1] == 3);   // each atomic constraint violated by exactly one assignment
    // two atomic constraints demand two different monochromatic colors at once
    CHECK(s.a[2] == 0);

    PartitionPolynomial fisher = fisher_partition_poly(csp);
    for (int j = 0; j <= 3; ++j) {
        Int expect = 0;
        for (size_t m = j; m < fisher.coeff.size(); ++m)
            expect += binomial(static_cast<unsigned long>(m), j) * fisher.coeff[m];
        CHECK(s.a[j] == expect);
    }
}

TEST_CASE("coloring closed form matches the generic enumeration") {
    for (auto [k, q, m] : std::vector<std::tuple<int, int, int>>{{2, 3, 2}, {3, 3, 2}, {2, 4, 3}}) {
        Hypergraph h = make_edge_chain(k, m, 1);
        AtomicCsp csp = coloring_to_atomic_csp(h, q);
        ClusterSeries generic = cluster_series(csp, 4);
        ClusterSeries closed = cluster_series_coloring(h, q, 4);
        for (int j = 0; j <= 4; ++j) CHECK(generic.a[j] == closed.a[j]);
    }
}

TEST_CASE("truncated log count converges to ln 24 on the single 3-edge") {
    AtomicCsp csp = coloring_to_atomic_csp(make_single_edge(3), 3);
    ClusterSeries s = cluster_series(csp, 8);
    Int omega = 24;
    TruncatedLogCount t = truncated_log_count(s, 8, &omega);
    auto errs = t.errors();
    REQUIRE(errs.size() == 9);
    CHECK(errs.back() < 1e-6);
    for (size_t j = 1; j < errs.size(); ++j) CHECK(errs[j] <= errs[j - 1] * (1 + 1e-12) + 1e-15);
    // order-0 estimate is exact when there are no constraints
    AtomicCsp free;
    free.domains = {5};
    ClusterSeries s0 = cluster_series(free, 2);
    Int five = 5;
    TruncatedLogCount t0 = truncated_log_count(s0, 2, &five);
    CHECK(t0.errors()[0] < 1e-14);
}
