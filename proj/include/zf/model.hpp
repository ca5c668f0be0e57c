#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zf/numbers.hpp"

namespace zf {

struct Hypergraph {
    int n = 0;  // vertex count
    int k = 0;  // uniformity
    std::vector<std::vector<int>> edges;

    int edge_degree(int v) const;
    int max_degree() const;  // Δ over vertices
    // throws std::invalid_argument on malformed edges, duplicates, or a
    // declared degree that does not match the recomputed one
    void validate(std::optional<int> declared_delta = std::nullopt) const;
};

// Atomic constraint: forbids exactly one assignment of its variables.
struct Constraint {
    std::vector<int> vars;
    std::vector<int> forbidden;  // parallel to vars
};

struct AtomicCsp {
    std::vector<int> domains;  // q_v per variable
    std::vector<Constraint> constraints;

    int var_count() const { return static_cast<int>(domains.size()); }
    int max_arity() const;             // k
    int max_constraint_degree() const; // Δ: constraints per variable
    void validate() const;
};

struct CnfClause {
    std::vector<int> vars;
    std::vector<std::uint8_t> neg;  // 1 = negated literal
};

struct CnfFormula {
    int n = 0;
    int k = 0;
    std::vector<CnfClause> clauses;

    int max_degree() const;
    void validate() const;
};

// Per-variable state compression: domain symbol -> bucket symbol. Bucket ids
// are local to the variable; special[v] names the bucket carrying the
// external field, or -1 when the variable carries no field.
struct ProjectionScheme {
    std::vector<std::vector<int>> bucket_of;  // [v][symbol] -> bucket
    std::vector<int> bucket_count;
    std::vector<int> special;

    int var_count() const { return static_cast<int>(bucket_of.size()); }
    int preimage_size(int v, int bucket) const;
    std::vector<int> preimage(int v, int bucket) const;
    bool has_special(int v) const { return special[v] >= 0; }
    void validate(const std::vector<int>& domains) const;
};

// Partial assignment; values[v] = -1 means unassigned. `projected` selects
// whether values are domain symbols or bucket symbols.
struct Assignment {
    bool projected = false;
    std::vector<int> values;

    static Assignment empty(int n, bool projected = false) {
        Assignment a;
        a.projected = projected;
        a.values.assign(n, -1);
        return a;
    }
};

// consistency between levels: original sigma vs projected tau
bool consistent_with(const ProjectionScheme& f, const std::vector<int>& original,
                     const Assignment& projected);

AtomicCsp coloring_to_atomic_csp(const Hypergraph& h, int q);
AtomicCsp cnf_to_atomic_csp(const CnfFormula& f);

// Round-robin coloring compression: bucket 0 is the special bucket with
// preimage {color 0}; colors 1..q-1 fill buckets 1..B so every non-special
// bucket has s or s+1 colors, s = floor((q-1)/B).
ProjectionScheme make_coloring_projection(int q, int B, int n);
int coloring_projection_s(int q, int B);

// Marked variables keep {0,1} as two buckets (special = bucket of value 1);
// unmarked variables collapse to a single bucket.
ProjectionScheme make_cnf_projection(const CnfFormula& f, const std::vector<std::uint8_t>& marked);

// every symbol its own bucket; special_symbol (if >= 0) marks that symbol's bucket
ProjectionScheme identity_projection(const std::vector<int>& domains, int special_symbol = -1);

// all symbols of every variable into one bucket (no field anywhere)
ProjectionScheme all_to_one_projection(const std::vector<int>& domains);

struct Instance {
    enum class Kind { Hypergraph, Cnf };
    Kind kind = Kind::Hypergraph;
    Hypergraph graph;
    int q = 0;
    CnfFormula cnf;
    std::string name;

    AtomicCsp to_atomic() const;
};

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

std::string projection_to_json(const ProjectionScheme& f);
ProjectionScheme projection_from_json(const std::string& text);

}  // namespace zf
