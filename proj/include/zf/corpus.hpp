#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zf/model.hpp"

namespace zf {

Hypergraph make_disjoint_edges(int k, int m);
Hypergraph make_single_edge(int k);
// chain of m k-edges, consecutive edges sharing `overlap` vertices
Hypergraph make_edge_chain(int k, int m, int overlap);

// random k-uniform hypergraph on n vertices with m edges and max degree
// <= max_delta; deterministic in the seed, throws when infeasible
Hypergraph random_hypergraph(int n, int k, int m, int max_delta, std::uint64_t seed);

// random k-CNF with per-variable occurrence <= max_delta and random polarities
CnfFormula random_cnf(int n, int k, int m, int max_delta, std::uint64_t seed);

// random hypertree: each new edge shares exactly one vertex with an earlier
// edge, so the constraint dependency graph is a tree
Hypergraph random_hypertree(int k, int m, std::uint64_t seed);

// A named coloring instance with its compression scheme, ready for dynamics.
struct TinyInstance {
    std::string name;
    Hypergraph graph;
    int q = 0;
    int B = 0;
    ProjectionScheme proj;
    AtomicCsp csp;  // atomized
};

// Small instances whose projected chains are ergodic at the lambda windows
// under test; projected spaces stay <= 4096.
std::vector<TinyInstance> standard_tiny_corpus();

// instance stream for the oracle-equality corpus: q^n <= cap
struct OracleCase {
    std::string name;
    AtomicCsp csp;
    ProjectionScheme special;
};
std::vector<OracleCase> oracle_corpus(int count, std::uint64_t seed, std::size_t cap = 1000000);

// deterministic manifest line: name, FNV-1a hash of the serialized instance
std::string corpus_manifest(const std::vector<OracleCase>& cases);
std::uint64_t fnv1a(const std::string& data);

}  // namespace zf
