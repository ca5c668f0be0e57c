#include <doctest.h>

#include <cmath>

#include "zf/conditions.hpp"
#include "zf/corpus.hpp"
#include "zf/exact.hpp"
#include "zf/stats.hpp"

using namespace zf;

TEST_CASE("coloring condition: frozen verdicts") {
    // (k=50, delta=1, q=700, B=13): s=53, passes
    ColoringParams good = ColoringParams::make(50, 1, 700, 13);
    CHECK(good.s == 53);
    ConditionReport rep = check_coloring_condition(good);
    CHECK(rep.pass);
    CHECK(!rep.indeterminate);

    // (k=3, delta=2, q=5, B=2): fails on item 1 (2^3 < 608 e 25 * 8 * 243)
    ColoringParams bad = ColoringParams::make(3, 2, 5, 2);
    ConditionReport rep2 = check_coloring_condition(bad);
    CHECK(!rep2.pass);
    CHECK(rep2.items[0].verdict == Verdict::Fail);

    // lambda_c outside [0,1] fails the window item
    ColoringParams off = ColoringParams::make(50, 1, 700, 13, Rat(2));
    ConditionReport rep3 = check_coloring_condition(off);
    CHECK(!rep3.pass);
    CHECK(rep3.items[2].verdict == Verdict::Fail);
}

TEST_CASE("derive_coloring_params: reference derivations") {
    ColoringParams p1 = derive_coloring_params(50, 1);
    CHECK(p1.q == 700);
    CHECK(p1.B == 13);
    CHECK(p1.s == 53);

    // delta = 2: q = ceil(700 * 2^(1/8)) = 764
    ColoringParams p2 = derive_coloring_params(50, 2);
    CHECK(p2.q == 764);

    CHECK_THROWS_AS(derive_coloring_params(49, 1), std::invalid_argument);
}

TEST_CASE("zeta values and monotonicity") {
    CHECK(zeta(1.0 / 700) <= 0.23638);
    CHECK(zeta(1.0 / 700) > 0.23);
    CHECK(zeta(1.0 / 1000) == doctest::Approx(0.2230).epsilon(2e-3));
    double prev = 0;
    for (double r : {1e-6, 1e-4, 1e-2, 0.1, 0.3, 0.6, 0.9}) {
        double z = zeta(r);
        CHECK(z > prev);
        prev = z;
    }
    CHECK(zeta(1e-9) < 0.07);  // the limit is logarithmically slow
    CHECK_THROWS_AS(zeta(0.0), std::domain_error);
    CHECK_THROWS_AS(zeta(1.0), std::domain_error);
}

TEST_CASE("chebyshev condition verdicts") {
    CHECK(check_chebyshev_condition(6, 1000, 1000, Rat(1)).pass);
    CHECK(!check_chebyshev_condition(3, 460, 460, Rat(1)).pass);
    CHECK_THROWS_AS(check_chebyshev_condition(3, 2, 5, Rat(0)), std::domain_error);
}

TEST_CASE("clt condition verdicts") {
    // atomized coloring at k=50: delta = q * hyperedge degree = 700
    CHECK(check_clt_condition(50, 700, 700, 1, Rat(1)).pass);
    CHECK(!check_clt_condition(3, 2, 3, 1, Rat(1)).pass);
    CHECK_THROWS_AS(check_clt_condition(3, 2, 3, 3, Rat(1)), std::invalid_argument);
}

TEST_CASE("lclt condition verdicts") {
    int B1 = 135, B2 = 26;  // floor(700^{3/4}), floor(700^{1/2})
    CHECK((Int(135 * 135 * 135) * 135 <= Int(700) * 700 * 700));  // sanity on B1
    ConditionReport rep = check_lclt_condition(50, 1, 700, 1, Rat(1), B1, B2);
    CHECK(rep.pass);
    CHECK_THROWS_AS(check_lclt_condition(8, 1, 16, 1, Rat(1), 4, 8), std::invalid_argument);
    ConditionReport repf = check_lclt_condition(8, 1, 16, 1, Rat(1), 8, 4);
    CHECK(!repf.pass);
    CHECK(repf.items[0].verdict == Verdict::Fail);
}

TEST_CASE("cnf condition at the reference constants") {
    CnfParams p = CnfParams::make(300, 2, 0.171562, 0.257342);
    ConditionReport rep = check_cnf_condition(p);
    // item 2's first inequality passes at these constants
    CHECK(rep.items[0].verdict == Verdict::Pass);
    CHECK(rep.pass);

    // the closed form fails at k=100, delta=2: 100 < 69 + 24 log2(100)
    CnfParams p2 = CnfParams::make(100, 2, 0.171562, 0.257342);
    ConditionReport rep2 = check_cnf_condition(p2);
    bool closed_form_pass = false;
    for (const auto& it : rep2.items)
        if (it.name.find("closed form") != std::string::npos)
            closed_form_pass = it.verdict == Verdict::Pass;
    CHECK(!closed_form_pass);

    CHECK_THROWS_AS(CnfParams::make(10, 2, 0.6, 0.6), std::invalid_argument);
}

TEST_CASE("coloring decomposition is exactly normalized with zero special mass") {
    ColoringParams p = ColoringParams::make(3, 1, 6, 2);
    ProjectionScheme proj = make_coloring_projection(6, 2, 3);
    for (const GaussRat& lam :
         {GaussRat(Rat(1)), GaussRat(Rat(1, 2), Rat(1, 97)), GaussRat(Rat(0), Rat(1, 1000))}) {
        DecompositionScheme d = build_coloring_decomposition(p, lam, proj);
        for (int v = 0; v < 3; ++v) {
            CHECK(d.sum(v) == GaussRat(Rat(1)));
            CHECK(d.b[v][proj.special[v]].is_zero());
        }
    }
    // lambda = 1: b(bot) = 1/q + (q-1)/(rho q)
    DecompositionScheme d1 = build_coloring_decomposition(p, GaussRat(Rat(1)), proj);
    Rat rho(p.rho);
    Rat expected = Rat(1, 6) + Rat(5) / (rho * 6);
    CHECK(d1.b_bot[0].re == expected);
    CHECK(d1.b_bot[0].im == 0);
}

TEST_CASE("cnf decomposition: normalization and the lambda = 1 values") {
    CnfParams p = CnfParams::make(20, 2, 0.2, 0.3);
    CnfFormula f;
    f.n = 3;
    f.k = 20;  // only the projection matters here
    ProjectionScheme proj;
    proj.bucket_of = {{0, 1}, {0, 1}, {0, 0}};
    proj.bucket_count = {2, 2, 1};
    proj.special = {1, 1, -1};
    for (const GaussRat& lam : {GaussRat(Rat(1)), GaussRat(Rat(1), Rat(1, 2001))}) {
        DecompositionScheme d = build_cnf_decomposition(p, lam, proj);
        for (int v = 0; v < 3; ++v) CHECK(d.sum(v) == GaussRat(Rat(1)));
        // unmarked variable: purely oblivious
        CHECK(d.b[2][0] == GaussRat(Rat(1)));
        CHECK(d.b_bot[2].is_zero());
    }
    // marked at lambda = 1: b(0) = b(1) = 1 - e^{1/s}/2, b(bot) = e^{1/s} - 1
    DecompositionScheme d = build_cnf_decomposition(p, GaussRat(Rat(1)), proj);
    double s = p.s_cnf.get_d();
    double e1s = std::exp(1.0 / s);
    CHECK(d.b[0][0].to_cd().real() == doctest::Approx(1 - e1s / 2).epsilon(1e-12));
    CHECK(d.b[0][1].to_cd().real() == doctest::Approx(1 - e1s / 2).epsilon(1e-12));
    CHECK(d.b_bot[0].to_cd().real() == doctest::Approx(e1s - 1).epsilon(1e-12));
}

TEST_CASE("exact n-hat/m-hat agrees with a direct enumeration oracle") {
    // small q so the original space is enumerable by the oracle below
    Hypergraph h = make_single_edge(3);
    int q = 7, B = 2;
    ProjectionScheme proj = make_coloring_projection(q, B, h.n);
    ColoringParams params = ColoringParams::make(3, 1, q, B);
    DecompositionScheme scheme = build_coloring_decomposition(params, GaussRat(Rat(1)), proj);
    CD lam(1, 0);
    InductionBounds fast = compute_nhat_mhat_exact(h, q, proj, lam, scheme, -1);

    // oracle: enumerate pinnings over the bucket space, conditionals by brute
    // force over colorings of the instance minus the last edge (empty here)
    Hypergraph h_minus = h;
    h_minus.edges.clear();
    AtomicCsp reduced = coloring_to_atomic_csp(h_minus, q);
    MixedRadix bucket_space(proj.bucket_count);
    double worst_l1 = 0;
    for (int u = 0; u < h.n; ++u) {
        std::size_t rest_total = bucket_space.total / proj.bucket_count[u];
        for (std::size_t rest = 0; rest < rest_total; ++rest) {
            std::vector<int> pin(h.n, -1);
            std::size_t r = rest;
            for (int v = h.n - 1; v >= 0; --v) {
                if (v == u) continue;
                pin[v] = static_cast<int>(r % proj.bucket_count[v]);
                r /= proj.bucket_count[v];
            }
            // count satisfying colorings by bucket of u
            std::vector<double> X(proj.bucket_count[u], 0.0);
            std::vector<int> a(h.n, 0);
            MixedRadix orig(reduced.domains);
            bool any = false;
            for (std::size_t i = 0; i < orig.total; ++i) {
                orig.decode(i, a);
                bool ok = satisfies_all(reduced, a);
                for (int v = 0; v < h.n && ok; ++v)
                    if (pin[v] >= 0 && proj.bucket_of[v][a[v]] != pin[v]) ok = false;
                if (ok) {
                    X[proj.bucket_of[u][a[u]]] += 1;
                    any = true;
                }
            }
            if (!any) continue;
            CD denom = 0;
            std::vector<CD> psi(X.size());
            for (size_t i = 0; i < X.size(); ++i) {
                psi[i] = (static_cast<int>(i) == proj.special[u]) ? lam * CD(X[i]) : CD(X[i]);
                denom += psi[i];
            }
            double l1 = 0;
            for (size_t i = 0; i < psi.size(); ++i)
                l1 += std::abs((psi[i] / denom - scheme.b_cd(u, static_cast<int>(i))) /
                               scheme.bot_cd(u));
            worst_l1 = std::max(worst_l1, l1);
        }
    }
    double m_oracle = 0;
    for (int u = 0; u < h.n; ++u) {
        double s = 0;
        for (int j = 0; j < proj.bucket_count[u]; ++j) s += std::abs(scheme.b_cd(u, j));
        s += std::abs(scheme.bot_cd(u)) * worst_l1;
        m_oracle = std::max(m_oracle, s);
    }
    CHECK(fast.m_hat == doctest::Approx(m_oracle).epsilon(1e-9));
    CHECK(fast.n_hat > 0);
}

TEST_CASE("closed-form bounds require a passing condition") {
    ColoringParams good = derive_coloring_params(50, 1);
    InductionBounds b = closed_form_bounds(good);
    CHECK(b.product_le_quarter);
    CHECK(b.m_hat == doctest::Approx(1 + 1.0 / (4 * std::pow(50.0, 5))));

    ColoringParams bad = ColoringParams::make(3, 2, 5, 2);
    CHECK_THROWS_AS(closed_form_bounds(bad), std::domain_error);

    CnfParams cnf = CnfParams::make(300, 2, 0.171562, 0.257342);
    InductionBounds bc = closed_form_bounds(cnf);
    CHECK(bc.product_le_quarter);
}

TEST_CASE("derive-and-check sweep stays strict on a subgrid") {
    for (int k : {50, 65, 80})
        for (int delta : {1, 8, 64}) {
            ColoringParams p = derive_coloring_params(k, delta);
            ConditionReport rep = check_coloring_condition(p);
            CHECK(rep.pass);
            CHECK(!rep.indeterminate);
        }
}

TEST_CASE("scheme builders record the lambda window") {
    ColoringParams p = ColoringParams::make(3, 1, 6, 2, Rat(1));
    ProjectionScheme proj = make_coloring_projection(6, 2, 2);
    DecompositionScheme in = build_coloring_decomposition(p, GaussRat(Rat(1)), proj);
    CHECK(in.lambda_in_window);
    // far outside the disk: still built, flagged
    DecompositionScheme out = build_coloring_decomposition(p, GaussRat(Rat(3)), proj);
    CHECK(!out.lambda_in_window);
}

TEST_CASE("adversarial field makes a transition measure vanish") {
    // the measure drops the distinguished edge, so the other edge must supply
    // the degeneracy: pinning a vertex's two neighbors into bucket 1 gives
    // counts proportional to (9, 24, 27) at q = 7, B = 2, and lambda = -17/3
    // zeroes 9l + 51 while q - 1 + lambda = 1/3 keeps the scheme regular
    Hypergraph h = make_disjoint_edges(3, 2);
    ProjectionScheme proj = make_coloring_projection(7, 2, 6);
    ColoringParams p = ColoringParams::make(3, 1, 7, 2);
    DecompositionScheme scheme = build_coloring_decomposition(p, GaussRat(Rat(-17, 3)), proj);
    InductionBounds b = compute_nhat_mhat_exact(h, 7, proj, CD(-17.0 / 3, 0), scheme);
    CHECK(!b.notes.empty());
    CHECK(std::isinf(b.n_hat));
}

TEST_CASE("total influence bound formula") {
    // q* lambda (q-q*) / (q-q*+q* lambda)^2 * ((dk-1)/dk)^2 / (2 q*)
    double got = total_influence_bound(50, 700, 700, 1, Rat(1));
    double dk = 700.0 * 50;
    double expect = 0.5 * (1.0 * 699) / (700.0 * 700.0) * (dk - 1) / dk * (dk - 1) / dk;
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}
