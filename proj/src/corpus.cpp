#include "zf/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "zf/rng.hpp"

namespace zf {

Hypergraph make_disjoint_edges(int k, int m) {
    Hypergraph h;
    h.k = k;
    h.n = k * m;
    for (int i = 0; i < m; ++i) {
        std::vector<int> e(k);
        for (int j = 0; j < k; ++j) e[j] = i * k + j;
        h.edges.push_back(std::move(e));
    }
    return h;
}

Hypergraph make_single_edge(int k) { return make_disjoint_edges(k, 1); }

Hypergraph make_edge_chain(int k, int m, int overlap) {
    if (overlap < 0 || overlap >= k) throw std::invalid_argument("make_edge_chain: bad overlap");
    Hypergraph h;
    h.k = k;
    int step = k - overlap;
    h.n = k + step * (m - 1);
    for (int i = 0; i < m; ++i) {
        std::vector<int> e(k);
        for (int j = 0; j < k; ++j) e[j] = i * step + j;
        h.edges.push_back(std::move(e));
    }
    return h;
}

Hypergraph random_hypergraph(int n, int k, int m, int max_delta, std::uint64_t seed) {
    if (max_delta < 1 && m > 0)
        throw std::invalid_argument("random_hypergraph: edges requested with delta = 0");
    if (static_cast<long long>(m) * k > static_cast<long long>(n) * max_delta)
        throw std::invalid_argument("random_hypergraph: degree budget infeasible");
    CounterRng rng(seed);
    Hypergraph h;
    h.n = n;
    h.k = k;
    std::vector<int> deg(n, 0);
    std::set<std::vector<int>> seen;
    int guard = 0;
    while (static_cast<int>(h.edges.size()) < m) {
        if (++guard > 200000)
            throw std::runtime_error("random_hypergraph: could not place edges, relax parameters");
        std::vector<int> avail;
        for (int v = 0; v < n; ++v)
            if (deg[v] < max_delta) avail.push_back(v);
        if (static_cast<int>(avail.size()) < k) continue;
        std::vector<int> e;
        std::set<int> used;
        while (static_cast<int>(e.size()) < k) {
            int v = avail[rng.next_below(avail.size())];
            if (used.insert(v).second) e.push_back(v);
        }
        std::sort(e.begin(), e.end());
        if (!seen.insert(e).second) continue;
        for (int v : e) ++deg[v];
        h.edges.push_back(e);
    }
    h.validate();
    return h;
}

CnfFormula random_cnf(int n, int k, int m, int max_delta, std::uint64_t seed) {
    if (static_cast<long long>(m) * k > static_cast<long long>(n) * max_delta)
        throw std::invalid_argument("random_cnf: degree budget infeasible");
    CounterRng rng(seed);
    CnfFormula f;
    f.n = n;
    f.k = k;
    std::vector<int> deg(n, 0);
    int guard = 0;
    while (static_cast<int>(f.clauses.size()) < m) {
        if (++guard > 200000) throw std::runtime_error("random_cnf: could not place clauses");
        std::vector<int> avail;
        for (int v = 0; v < n; ++v)
            if (deg[v] < max_delta) avail.push_back(v);
        if (static_cast<int>(avail.size()) < k) continue;
        CnfClause c;
        std::set<int> used;
        while (static_cast<int>(c.vars.size()) < k) {
            int v = avail[rng.next_below(avail.size())];
            if (used.insert(v).second) c.vars.push_back(v);
        }
        for (int i = 0; i < k; ++i) c.neg.push_back(rng.next_u64() & 1 ? 1 : 0);
        for (int v : c.vars) ++deg[v];
        f.clauses.push_back(std::move(c));
    }
    f.validate();
    return f;
}

Hypergraph random_hypertree(int k, int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("random_hypertree: need m >= 1");
    CounterRng rng(seed);
    Hypergraph h;
    h.k = k;
    h.n = k;
    std::vector<int> e0(k);
    for (int j = 0; j < k; ++j) e0[j] = j;
    h.edges.push_back(e0);
    for (int i = 1; i < m; ++i) {
        const auto& host = h.edges[rng.next_below(h.edges.size())];
        int shared = host[rng.next_below(host.size())];
        std::vector<int> e = {shared};
        for (int j = 1; j < k; ++j) e.push_back(h.n++);
        h.edges.push_back(std::move(e));
    }
    h.validate();
    return h;
}

namespace {

TinyInstance tiny(const std::string& name, Hypergraph h, int q, int B) {
    TinyInstance t;
    t.name = name;
    t.graph = std::move(h);
    t.q = q;
    t.B = B;
    t.proj = make_coloring_projection(q, B, t.graph.n);
    t.csp = coloring_to_atomic_csp(t.graph, q);
    return t;
}

Hypergraph edges_of(int n, int k, std::vector<std::vector<int>> e) {
    Hypergraph h;
    h.n = n;
    h.k = k;
    h.edges = std::move(e);
    return h;
}

}  // namespace

std::vector<TinyInstance> standard_tiny_corpus() {
    std::vector<TinyInstance> out;
    out.push_back(tiny("one-3edge-q6", make_single_edge(3), 6, 2));
    out.push_back(tiny("one-2edge-q5", make_single_edge(2), 5, 2));
    out.push_back(tiny("two-3edges-share2-q6", edges_of(4, 3, {{0, 1, 2}, {1, 2, 3}}), 6, 2));
    out.push_back(tiny("two-3edges-share1-q5", edges_of(5, 3, {{0, 1, 2}, {2, 3, 4}}), 5, 2));
    out.push_back(tiny("path-p4-q5", edges_of(4, 2, {{0, 1}, {1, 2}, {2, 3}}), 5, 2));
    out.push_back(tiny("two-disjoint-2edges-q5", edges_of(4, 2, {{0, 1}, {2, 3}}), 5, 2));
    out.push_back(tiny("3edge-plus-isolated-q6", edges_of(4, 3, {{0, 1, 2}}), 6, 2));
    out.push_back(tiny("triangle-q7", edges_of(3, 2, {{0, 1}, {1, 2}, {0, 2}}), 7, 3));
    return out;
}

std::vector<OracleCase> oracle_corpus(int count, std::uint64_t seed, std::size_t cap) {
    std::vector<OracleCase> out;
    CounterRng rng(seed);
    int made = 0;
    while (made < count) {
        std::uint64_t s = rng.next_u64();
        int shape = made % 5;
        try {
            Hypergraph h;
            int q;
            int B;
            switch (shape) {
                case 0:  // disjoint edges
                    q = 3 + static_cast<int>(s % 3);
                    h = make_disjoint_edges(2 + static_cast<int>(s % 2), 2 + static_cast<int>((s >> 8) % 3));
                    break;
                case 1:  // chain with overlap
                    q = 3 + static_cast<int>(s % 2);
                    h = make_edge_chain(3, 2 + static_cast<int>((s >> 8) % 3), 1 + static_cast<int>((s >> 16) % 2));
                    break;
                case 2:  // random sparse graph (k = 2)
                    q = 3 + static_cast<int>(s % 3);
                    h = random_hypergraph(5 + static_cast<int>(s % 4), 2,
                                          4 + static_cast<int>((s >> 8) % 4), 3, s);
                    break;
                case 3:  // random 3-uniform
                    q = 3;
                    h = random_hypergraph(6 + static_cast<int>(s % 4), 3,
                                          2 + static_cast<int>((s >> 8) % 4), 2, s);
                    break;
                default:  // with an isolated vertex appended
                    q = 4;
                    h = make_edge_chain(3, 2, 1);
                    h.n += 1;
                    break;
            }
            B = std::min(2, q - 1);
            double states = std::pow(static_cast<double>(q), h.n);
            if (states > static_cast<double>(cap)) continue;
            OracleCase c;
            c.name = "oracle-" + std::to_string(made);
            c.csp = coloring_to_atomic_csp(h, q);
            c.special = make_coloring_projection(q, B, h.n);
            out.push_back(std::move(c));
            ++made;
        } catch (const std::exception&) {
            continue;  // infeasible draw, next seed
        }
    }
    return out;
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string corpus_manifest(const std::vector<OracleCase>& cases) {
    std::string out;
    for (const auto& c : cases) {
        std::string blob;
        for (int q : c.csp.domains) blob += std::to_string(q) + ",";
        for (const auto& con : c.csp.constraints) {
            for (int v : con.vars) blob += std::to_string(v) + ".";
            for (int f : con.forbidden) blob += std::to_string(f) + ".";
        }
        out += c.name + " " + std::to_string(fnv1a(blob)) + "\n";
    }
    return out;
}

}  // namespace zf
