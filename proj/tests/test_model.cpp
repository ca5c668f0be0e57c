#include <doctest.h>

#include "zf/corpus.hpp"
#include "zf/exact.hpp"
#include "zf/model.hpp"

using namespace zf;

TEST_CASE("atomization: one edge becomes q constraints") {
    Hypergraph h = make_single_edge(3);
    AtomicCsp csp = coloring_to_atomic_csp(h, 3);
    CHECK(csp.constraints.size() == 3);  // |E| * q
    CHECK(csp.max_constraint_degree() == 3);  // q * edge degree

    Hypergraph h2;
    h2.n = 4;
    h2.k = 3;
    h2.edges = {{0, 1, 2}, {1, 2, 3}};
    AtomicCsp shared = coloring_to_atomic_csp(h2, 2);
    CHECK(shared.constraints.size() == 4);
    CHECK(shared.max_constraint_degree() == 4);  // shared vertices sit in both edges' pairs

    CHECK_THROWS_AS(coloring_to_atomic_csp(h, 1), std::invalid_argument);
}

TEST_CASE("atomization preserves solutions") {
    Hypergraph h;
    h.n = 4;
    h.k = 3;
    h.edges = {{0, 1, 2}, {1, 2, 3}};
    int q = 3;
    AtomicCsp csp = coloring_to_atomic_csp(h, q);
    std::vector<int> a(4, 0);
    int count_atomic = 0, count_direct = 0;
    for (int i = 0; i < 81; ++i) {
        bool proper = true;
        for (const auto& e : h.edges) {
            bool mono = true;
            for (size_t j = 1; j < e.size(); ++j)
                if (a[e[j]] != a[e[0]]) mono = false;
            if (mono) proper = false;
        }
        if (proper) ++count_direct;
        if (satisfies_all(csp, a)) ++count_atomic;
        for (int v = 3; v >= 0; --v) {
            if (++a[v] < q) break;
            a[v] = 0;
        }
    }
    CHECK(count_atomic == count_direct);
}

TEST_CASE("coloring projection is round robin with a singleton special bucket") {
    ProjectionScheme f = make_coloring_projection(6, 2, 1);
    CHECK(f.preimage(0, 0) == std::vector<int>{0});
    CHECK(f.preimage(0, 1) == std::vector<int>{1, 3, 5});
    CHECK(f.preimage(0, 2) == std::vector<int>{2, 4});
    CHECK(coloring_projection_s(6, 2) == 2);
    CHECK(coloring_projection_s(700, 13) == 53);
    CHECK_THROWS_AS(make_coloring_projection(2, 2, 1), std::invalid_argument);

    // every non-special bucket holds s or s+1 colors
    for (int q : {7, 11, 23, 100}) {
        for (int B = 1; B < q && B <= 9; ++B) {
            ProjectionScheme p = make_coloring_projection(q, B, 1);
            int s = coloring_projection_s(q, B);
            for (int b = 1; b <= B; ++b) {
                int sz = p.preimage_size(0, b);
                CHECK(sz >= s);
                CHECK(sz <= s + 1);
            }
            CHECK(p.preimage_size(0, 0) == 1);
        }
    }
}

TEST_CASE("cnf projection: marked identity, unmarked collapsed") {
    CnfFormula f;
    f.n = 3;
    f.k = 2;
    f.clauses = {{{0, 1}, {0, 0}}, {{1, 2}, {1, 0}}};
    ProjectionScheme p1 = make_cnf_projection(f, {1, 0, 0});
    CHECK(p1.bucket_count[0] == 2);
    CHECK(p1.bucket_count[1] == 1);
    CHECK(p1.bucket_count[2] == 1);
    CHECK(p1.special[0] == 1);
    CHECK(p1.special[1] == -1);

    ProjectionScheme p_none = make_cnf_projection(f, {0, 0, 0});
    std::size_t states = 1;
    for (int b : p_none.bucket_count) states *= b;
    CHECK(states == 1);

    ProjectionScheme p_all = make_cnf_projection(f, {1, 1, 1});
    for (int v = 0; v < 3; ++v) {
        CHECK(p_all.bucket_count[v] == 2);
        CHECK(p_all.bucket_of[v][0] == 0);
        CHECK(p_all.bucket_of[v][1] == 1);
    }
}

TEST_CASE("consistency between levels") {
    ProjectionScheme f = make_coloring_projection(6, 2, 2);
    Assignment tau = Assignment::empty(2, true);
    tau.values = {0, 1};
    CHECK(consistent_with(f, {0, 1}, tau));
    CHECK(consistent_with(f, {0, 3}, tau));
    CHECK(!consistent_with(f, {0, 2}, tau));
    tau.values[1] = -1;  // partial
    CHECK(consistent_with(f, {0, 2}, tau));
}

TEST_CASE("instance json round trip and delta fail-fast") {
    Instance inst;
    inst.kind = Instance::Kind::Hypergraph;
    inst.graph = make_edge_chain(3, 2, 1);
    inst.q = 4;
    inst.name = "roundtrip";
    std::string text = instance_to_json(inst);
    Instance back = instance_from_json(text);
    CHECK(back.graph.edges == inst.graph.edges);
    CHECK(back.q == 4);

    std::string bad = R"({"type":"hypergraph","n":3,"k":2,"edges":[[0,1]],"q":3,"delta":2})";
    CHECK_THROWS(instance_from_json(bad));

    std::string dup = R"({"type":"hypergraph","n":3,"k":2,"edges":[[0,1],[1,0]],"q":3})";
    CHECK_THROWS(instance_from_json(dup));
}

TEST_CASE("cnf json round trip") {
    Instance inst;
    inst.kind = Instance::Kind::Cnf;
    inst.cnf.n = 4;
    inst.cnf.k = 3;
    inst.cnf.clauses = {{{0, 1, 2}, {1, 0, 1}}, {{1, 2, 3}, {0, 0, 0}}};
    Instance back = instance_from_json(instance_to_json(inst));
    CHECK(back.cnf.clauses.size() == 2);
    CHECK(back.cnf.clauses[0].neg[0] == 1);

    AtomicCsp csp = cnf_to_atomic_csp(back.cnf);
    // violating assignment falsifies each literal
    CHECK(csp.constraints[0].forbidden == std::vector<int>{1, 0, 1});
    CHECK(csp.constraints[1].forbidden == std::vector<int>{0, 0, 0});
}

TEST_CASE("generators reject infeasible degree budgets") {
    CHECK_THROWS_AS(random_hypergraph(6, 3, 2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_cnf(10, 3, 20, 1, 1), std::invalid_argument);
    Hypergraph ok = random_hypergraph(8, 3, 3, 2, 42);
    CHECK(ok.max_degree() <= 2);
    CHECK(ok.edges.size() == 3);
}

TEST_CASE("hypertree generator produces tree-structured instances") {
    Hypergraph h = random_hypertree(3, 5, 11);
    CHECK(h.edges.size() == 5);
    CHECK(h.n == 3 + 4 * 2);
    CHECK(h.max_degree() <= 5);
    // tree structure: edges minus shared contacts = vertex count bookkeeping
    h.validate();
}

TEST_CASE("projection json round trip") {
    ProjectionScheme f = make_coloring_projection(7, 3, 4);
    ProjectionScheme back = projection_from_json(projection_to_json(f));
    CHECK(back.bucket_of == f.bucket_of);
    CHECK(back.bucket_count == f.bucket_count);
    CHECK(back.special == f.special);
    std::vector<int> domains(4, 7);
    back.validate(domains);
}
