#include <doctest.h>

#include <cmath>
#include <set>

#include "zf/corpus.hpp"
#include "zf/dynamics.hpp"

using namespace zf;

TEST_CASE("scan schedule: pred lies in (t-n, t] and timestamps are distinct") {
    ScanSchedule s{5};
    for (long long t = -40; t <= 0; ++t) {
        for (int u = 0; u < 5; ++u) {
            long long p = s.pred(u, t);
            CHECK(p <= t);
            CHECK(p > t - 5);
            CHECK(s.var_at(p) == u);
        }
        std::vector<int> vars = {0, 2, 4};
        auto ts = s.timestamps(vars, t);
        std::set<long long> uniq(ts.begin(), ts.end());
        CHECK(uniq.size() == vars.size());
    }
}

TEST_CASE("kernel rows are normalized and leave psi invariant") {
    auto corpus = standard_tiny_corpus();
    const auto& inst = corpus[2];  // two 3-edges sharing two vertices, q=6
    for (CD lam : {CD(1, 0), CD(0.5, 0.03), CD(0, 6e-5)}) {
        HeatBathDynamics dyn = make_dynamics(inst.csp, inst.proj, lam);
        for (long long t = 1; t <= dyn.sched.n; ++t) {
            // row normalization on a support state
            std::size_t best = 0;
            for (std::size_t i = 0; i < dyn.psi.w.size(); ++i)
                if (std::abs(dyn.psi.w[i]) > std::abs(dyn.psi.w[best])) best = i;
            std::vector<int> sigma;
            dyn.psi.space.decode(best, sigma);
            auto row = dyn.kernel_row(sigma, t);
            CD sum = 0;
            for (CD x : row) sum += x;
            CHECK(std::abs(sum - CD(1, 0)) < 1e-12);

            ComplexMeasure mu = dyn.psi;
            dyn.step(mu, t);
            CHECK(mu.l1_diff(dyn.psi) < 1e-10);
        }
    }
}

TEST_CASE("product measure dynamics: no constraints") {
    AtomicCsp csp;
    csp.domains = {4, 4};
    ProjectionScheme proj = make_coloring_projection(4, 2, 2);
    HeatBathDynamics dyn = make_dynamics(csp, proj, CD(0.6, 0.1));
    // one sweep from any point mass lands exactly on psi
    std::vector<int> sigma = {0, 0};
    ComplexMeasure mu = point_mass(dyn.psi.space, sigma);
    for (long long t = -1; t <= 0; ++t) dyn.step(mu, t);
    CHECK(mu.l1_diff(dyn.psi) < 1e-13);
}

TEST_CASE("point mass with zero sweeps stays put; 100 sweeps converge") {
    auto corpus = standard_tiny_corpus();
    const auto& inst = corpus[0];
    HeatBathDynamics dyn = make_dynamics(inst.csp, inst.proj, CD(1, 0));
    std::size_t best = 0;
    for (std::size_t i = 0; i < dyn.psi.w.size(); ++i)
        if (std::abs(dyn.psi.w[i]) > std::abs(dyn.psi.w[best])) best = i;
    std::vector<int> sigma;
    dyn.psi.space.decode(best, sigma);
    ComplexMeasure mu0 = point_mass(dyn.psi.space, sigma);
    ComplexMeasure still = propagate(mu0, dyn, 0);
    CHECK(still.l1_diff(mu0) == 0);
    ComplexMeasure mu = propagate(mu0, dyn, 100);
    CHECK(mu.l1_diff(dyn.psi) < 1e-8);
}

TEST_CASE("decomposed step: recomposition is exact and the measure advances identically") {
    auto corpus = standard_tiny_corpus();
    const auto& inst = corpus[1];  // one 2-edge q=5
    ColoringParams params = ColoringParams::make(inst.graph.k, 1, inst.q, inst.B);
    DecompositionScheme scheme =
        build_coloring_decomposition(params, GaussRat(Rat(1)), inst.proj);
    HeatBathDynamics dyn = make_dynamics(inst.csp, inst.proj, CD(1, 0));
    ComplexMeasure a = dyn.psi, b = dyn.psi;
    for (long long t = -3; t <= 0; ++t) {
        ObliviousRecord rec = decomposed_step(a, dyn, scheme, t);
        CHECK(rec.max_recomposition_error < 1e-13);
        dyn.step(b, t);
        CHECK(a.l1_diff(b) < 1e-13);
        CD bsum = rec.b_bot;
        for (CD x : rec.b) bsum += x;
        CHECK(std::abs(bsum - CD(1, 0)) < 1e-12);
    }
}

TEST_CASE("decomposition split is an exact identity in rational arithmetic") {
    // heat-bath row recomposed from the scheme equals the row, in Q(i)
    Hypergraph h = make_single_edge(2);
    int q = 5, B = 2;
    ProjectionScheme proj = make_coloring_projection(q, B, h.n);
    AtomicCsp csp = coloring_to_atomic_csp(h, q);
    ColoringParams params = ColoringParams::make(2, 1, q, B);
    GaussRat lam(Rat(1, 3), Rat(1, 7));
    DecompositionScheme scheme = build_coloring_decomposition(params, lam, proj);

    // exact conditional row at variable 0 given the bucket of variable 1;
    // the pinned variable's field factor is common to all terms and drops out
    for (int pin = 0; pin <= B; ++pin) {
        std::vector<GaussRat> X(B + 1, GaussRat());
        for (int c0 = 0; c0 < q; ++c0)
            for (int c1 = 0; c1 < q; ++c1) {
                if (c0 == c1) continue;  // the edge forbids equality
                if (proj.bucket_of[1][c1] != pin) continue;
                X[proj.bucket_of[0][c0]] += GaussRat(Rat(1));
            }
        // weights: bucket 0 carries lambda
        GaussRat denom;
        std::vector<GaussRat> row(B + 1);
        for (int i = 0; i <= B; ++i) {
            row[i] = (i == 0) ? lam * X[i] : X[i];
            denom += row[i];
        }
        for (int i = 0; i <= B; ++i) row[i] /= denom;
        GaussRat bot = scheme.b_bot[0];
        for (int i = 0; i <= B; ++i) {
            GaussRat adaptive = (row[i] - scheme.b[0][i]) / bot;
            GaussRat recomposed = scheme.b[0][i] + bot * adaptive;
            CHECK(recomposed == row[i]);
        }
    }
}

TEST_CASE("bad cluster on a two-edge instance") {
    auto corpus = standard_tiny_corpus();
    const auto& inst = corpus[2];  // edges {0,1,2}, {1,2,3}, q=6, B=2
    ProjectedCsp pcsp = ProjectedCsp::from_atomic(inst.csp, inst.proj);
    REQUIRE(pcsp.groups.size() == 2);
    int c_star = 1;

    // both edges bucket-monochromatic in bucket 1: cluster = both
    std::vector<int> all_one = {1, 1, 1, 1};
    BadCluster both = bad_cluster(all_one, pcsp, c_star);
    CHECK(both.groups == std::vector<int>{0, 1});
    CHECK(both.tau == all_one);

    // c_star monochromatic, the other edge crossing buckets: cluster = {c_star}
    std::vector<int> only_star = {2, 1, 1, 1};
    BadCluster solo = bad_cluster(only_star, pcsp, c_star);
    CHECK(solo.groups == std::vector<int>{1});

    // c_star satisfied under the projection: empty
    std::vector<int> sat = {1, 2, 1, 1};
    BadCluster none = bad_cluster(sat, pcsp, c_star);
    CHECK(none.empty());
}

TEST_CASE("witness graph: degree bound and locality") {
    auto corpus = standard_tiny_corpus();
    for (const auto& inst : {corpus[2], corpus[4], corpus[7]}) {
        ProjectedCsp pcsp = ProjectedCsp::from_atomic(inst.csp, inst.proj);
        WitnessGraph wg;
        wg.csp = &pcsp;
        wg.sched.n = inst.csp.var_count();
        wg.T = 3 * wg.sched.n;
        wg.c_star = static_cast<int>(pcsp.groups.size()) - 1;
        int bound = wg.degree_bound();
        for (const auto& x : wg.all_nodes()) {
            auto nb = wg.neighbors(x);
            CHECK(static_cast<int>(nb.size()) <= bound);
            // neighbor relation: shares a timestamp
            auto xs = wg.node_ts(x);
            std::set<long long> xset(xs.begin(), xs.end());
            for (const auto& y : nb) {
                bool shares = false;
                for (long long t : wg.node_ts(y))
                    if (xset.count(t)) shares = true;
                CHECK(shares);
            }
        }
    }

    // an isolated constraint with a window shorter than n has no neighbors
    Hypergraph h = make_disjoint_edges(2, 2);
    AtomicCsp csp = coloring_to_atomic_csp(h, 5);
    ProjectionScheme proj = make_coloring_projection(5, 2, 4);
    ProjectedCsp pcsp = ProjectedCsp::from_atomic(csp, proj);
    WitnessGraph wg;
    wg.csp = &pcsp;
    wg.sched.n = 4;
    wg.T = 8;
    wg.c_star = 1;  // the other edge is disjoint from group 0
    for (const auto& x : wg.all_nodes()) {
        if (x.group != 0) continue;
        for (const auto& y : wg.neighbors(x)) CHECK(y.group == 0);
    }
}

TEST_CASE("bad component trivial cases") {
    auto corpus = standard_tiny_corpus();
    const auto& inst = corpus[2];
    ProjectedCsp pcsp = ProjectedCsp::from_atomic(inst.csp, inst.proj);
    AtomicCsp minus;
    minus.domains = inst.csp.domains;
    int c_star = static_cast<int>(pcsp.groups.size()) - 1;
    for (const auto& con : inst.csp.constraints)
        if (con.vars != pcsp.groups[c_star].vars) minus.constraints.push_back(con);
    HeatBathDynamics dyn = make_dynamics(minus, inst.proj, CD(1, 0));

    WitnessGraph wg;
    wg.csp = &pcsp;
    wg.sched.n = inst.csp.var_count();
    wg.T = 2 * wg.sched.n;
    wg.c_star = c_star;

    DecomposedTrace tr;
    tr.T = wg.T;
    // all oblivious updates with alternating non-special buckets: every
    // constraint is excluded by mismatched committed symbols
    tr.r.resize(wg.T);
    tr.o.resize(wg.T);
    for (long long t = -wg.T + 1; t <= 0; ++t) {
        int v = wg.sched.var_at(t);
        tr.r[t + wg.T - 1] = 1 + (v % 2);
        tr.o[t + wg.T - 1] = tr.r[t + wg.T - 1];
    }
    BadComponent none = bad_component(tr, wg);
    CHECK(none.empty());

    // every r = bot: nothing is excluded, the component spans the window
    for (auto& r : tr.r) r = kBot;
    BadComponent full = bad_component(tr, wg);
    CHECK(!full.empty());
    CHECK(full.nodes.size() > 1);

    // reconstruction from an empty component is the empty cluster
    BadCluster empty_rec = reconstruct_bad_cluster(none, tr, wg);
    CHECK(empty_rec.empty());
}

TEST_CASE("simulated traces reconstruct the direct bad cluster") {
    auto corpus = standard_tiny_corpus();
    int traces = 0;
    for (const auto& inst : {corpus[1], corpus[2], corpus[5]}) {
        ProjectedCsp pcsp = ProjectedCsp::from_atomic(inst.csp, inst.proj);
        int c_star = static_cast<int>(pcsp.groups.size()) - 1;
        AtomicCsp minus;
        minus.domains = inst.csp.domains;
        for (const auto& con : inst.csp.constraints)
            if (con.vars != pcsp.groups[c_star].vars) minus.constraints.push_back(con);
        HeatBathDynamics dyn = make_dynamics(minus, inst.proj, CD(1, 0));
        int delta = std::max(inst.graph.max_degree(), 1);
        ColoringParams params = ColoringParams::make(inst.graph.k, delta, inst.q, inst.B);
        DecompositionScheme scheme =
            build_coloring_decomposition(params, GaussRat(Rat(1)), inst.proj);
        WitnessGraph wg;
        wg.csp = &pcsp;
        wg.sched.n = inst.csp.var_count();
        wg.T = 3 * wg.sched.n;
        wg.c_star = c_star;
        for (int i = 0; i < 40; ++i) {
            CounterRng rng(4242, traces);
            DecomposedTrace tr = simulate_decomposed_run(dyn, scheme, wg.T, rng);
            BadComponent comp = bad_component(tr, wg);
            BadCluster rec = reconstruct_bad_cluster(comp, tr, wg);
            BadCluster direct = bad_cluster(tr.sigma_final, pcsp, c_star);
            CHECK(rec.groups == direct.groups);
            CHECK(rec.tau == direct.tau);
            ++traces;
        }
    }
    CHECK(traces == 120);
}

TEST_CASE("greedy 2-tree: frozen traces and the size floor") {
    SimpleGraph path;
    path.n = 3;
    path.adj.assign(3, {});
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    auto t = construct_2tree(path, {0, 1, 2}, 0);
    CHECK(t == std::vector<int>{0, 2});

    SimpleGraph single;
    single.n = 1;
    single.adj.assign(1, {});
    CHECK(construct_2tree(single, {0}, 0) == std::vector<int>{0});

    CHECK_THROWS_AS(construct_2tree(path, {0, 1}, 2), std::invalid_argument);

    CounterRng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + static_cast<int>(rng.next_below(8));
        SimpleGraph g;
        g.n = n;
        g.adj.assign(n, {});
        for (int v = 1; v < n; ++v) g.add_edge(static_cast<int>(rng.next_below(v)), v);
        int D = g.max_degree();
        auto comp = g.component_of(0);
        auto tree = construct_2tree(g, comp, 0);
        CHECK(static_cast<int>(tree.size()) >= n / (D + 1));
        // 2-tree property: pairwise non-adjacent
        for (size_t a = 0; a < tree.size(); ++a)
            for (size_t b = a + 1; b < tree.size(); ++b) {
                bool adj = false;
                for (int u : g.adj[tree[a]])
                    if (u == tree[b]) adj = true;
                CHECK(!adj);
            }
    }
}

TEST_CASE("2-tree counts: path, star, and the bound") {
    SimpleGraph p3;
    p3.n = 3;
    p3.adj.assign(3, {});
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    CHECK(count_2trees(p3, 0, 2) == 1);  // {0, 2}

    SimpleGraph star;
    star.n = 4;
    star.adj.assign(4, {});
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    CHECK(count_2trees(star, 0, 2) == 0);  // every vertex neighbors the center

    CHECK_THROWS_AS(count_2trees(p3, 0, 1), std::invalid_argument);

    CounterRng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 5 + static_cast<int>(rng.next_below(6));
        SimpleGraph g;
        g.n = n;
        g.adj.assign(n, {});
        std::vector<int> deg(n, 0);
        for (int v = 1; v < n; ++v) {
            int u = static_cast<int>(rng.next_below(v));
            if (deg[u] >= 4 || deg[v] >= 4) continue;
            g.add_edge(u, v);
            ++deg[u];
            ++deg[v];
        }
        int D = std::max(g.max_degree(), 1);
        for (int j = 2; j <= 5; ++j) {
            double bound = std::pow(std::exp(1.0) * D * D, j - 1) / 2.0;
            CHECK(static_cast<double>(count_2trees(g, 0, j)) <= bound);
        }
    }
}

TEST_CASE("projection lifting: the real case is a ratio of counts") {
    auto corpus = standard_tiny_corpus();
    const auto& inst = corpus[2];  // two 3-edges sharing two vertices, q=6
    LiftingReport rep = projection_lifting_report(inst.csp, inst.proj, CD(1, 0));
    CHECK(rep.all_ok);
    CHECK(rep.triangle_ok);
    bool saw_nonzero = false;
    for (const auto& ev : rep.events) {
        if (ev.zero_mass) continue;
        CHECK(std::abs(ev.conditional.imag()) < 1e-14);
        CHECK(ev.conditional.real() >= -1e-14);
        CHECK(ev.conditional.real() <= 1 + 1e-14);
        if (!ev.cluster_groups.empty()) saw_nonzero = true;
    }
    CHECK(saw_nonzero);

    // the empty-cluster event can carry no violation mass at all
    LiftingEventCheck empty =
        verify_conditional_interval(inst.csp, inst.proj, CD(1, 0), {}, {});
    CHECK((empty.zero_mass || std::abs(empty.conditional) < 1e-14));

    // complex field: conditionals stay real in [0,1] to 1e-12
    double g = 1.0 / (16.0 * 4 * 243);
    LiftingReport repc = projection_lifting_report(inst.csp, inst.proj, CD(1, g));
    CHECK(repc.all_ok);
}

TEST_CASE("propagate preserves normalization") {
    auto corpus = standard_tiny_corpus();
    const auto& inst = corpus[3];
    HeatBathDynamics dyn = make_dynamics(inst.csp, inst.proj, CD(0.5, 3e-5));
    std::size_t best = 0;
    for (std::size_t i = 0; i < dyn.psi.w.size(); ++i)
        if (std::abs(dyn.psi.w[i]) > std::abs(dyn.psi.w[best])) best = i;
    std::vector<int> sigma;
    dyn.psi.space.decode(best, sigma);
    ComplexMeasure mu = propagate(point_mass(dyn.psi.space, sigma), dyn, 20);
    CHECK(std::abs(mu.sum() - CD(1, 0)) < 1e-12);
}

TEST_CASE("witness degree bound on random instances") {
    for (std::uint64_t seed : {3ULL, 8ULL, 21ULL}) {
        Hypergraph h = random_hypergraph(7, 3, 4, 2, seed);
        AtomicCsp csp = coloring_to_atomic_csp(h, 5);
        ProjectionScheme proj = make_coloring_projection(5, 2, 7);
        ProjectedCsp pcsp = ProjectedCsp::from_atomic(csp, proj);
        WitnessGraph wg;
        wg.csp = &pcsp;
        wg.sched.n = 7;
        wg.T = 21;
        wg.c_star = static_cast<int>(pcsp.groups.size()) - 1;
        int bound = wg.degree_bound();
        for (const auto& x : wg.all_nodes())
            CHECK(static_cast<int>(wg.neighbors(x).size()) <= bound);
    }
}

TEST_CASE("lifting verdicts hold on random instances and complex fields") {
    for (std::uint64_t seed : {1ULL, 5ULL}) {
        Hypergraph h = random_hypergraph(6, 3, 3, 2, seed);
        AtomicCsp csp = coloring_to_atomic_csp(h, 5);
        ProjectionScheme proj = make_coloring_projection(5, 2, 6);
        double g = 1.0 / (16.0 * 4 * 243);
        for (CD lam : {CD(1, 0), CD(0.5, g), CD(g, -g)}) {
            LiftingReport rep = projection_lifting_report(csp, proj, lam);
            CHECK(rep.all_ok);
        }
    }
}
